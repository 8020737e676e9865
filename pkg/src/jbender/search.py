"""Query parsing, execution and result ordering over an IndexSnapshot.

Query grammar: whitespace-separated atoms. `field:term` adds a clause for
one of name, body, comment, implements; a bare term searches any field.
`visibility:public|protected|private|default` and `project:<id>` are
filters. All clauses are AND-combined.

Relevance is a tf-idf-style sum: fieldweight * log(1+tf) * log(N/df), with
name weighted 3, implements 2, comment and body 1; an any-clause scores as
the best single field.

Sort modes: relevance, trust (missing trust sorts below everything), and
blend, which mixes min-max-normalized relevance and trust with weight alpha.
Every ordering is total via the entity-id tiebreak.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .codeindex import IndexSnapshot, normalize_term
from .errors import JBenderError
from .extract import CodeEntity
from .ingest import ProjectMetadata
from .trustcore import map_to_trust_scale

# Query-side field names to posting fields.
CLAUSE_FIELDS = {
    "name": "name",
    "body": "body",
    "comment": "comments",
    "implements": "interfaces",
}
VISIBILITIES = ("public", "protected", "private", "default")
SORT_MODES = ("relevance", "trust", "blend")

FIELD_WEIGHTS = {"name": 3.0, "interfaces": 2.0, "comments": 1.0, "body": 1.0}

ANY_FIELD = "any"

DEFAULT_ALPHA = 0.5
DEFAULT_LIMIT = 20


class QueryError(JBenderError):
    """Malformed query text."""


class EmptyQueryError(QueryError):
    """No clauses and no filters."""


class UnknownFieldError(QueryError):
    """Unrecognized `prefix:` in a query atom."""


@dataclass
class Query:
    clauses: list[tuple[str, str]] = field(default_factory=list)
    visibility: str | None = None
    project: str | None = None
    sort: str = "relevance"
    alpha: float = DEFAULT_ALPHA
    limit: int = DEFAULT_LIMIT


@dataclass
class SearchResult:
    entity: CodeEntity
    relevance: float
    trust: float | None
    trust_scale: int | None
    project: ProjectMetadata


def parse_query(
    text: str,
    sort: str = "relevance",
    alpha: float = DEFAULT_ALPHA,
    limit: int = DEFAULT_LIMIT,
) -> Query:
    """Parse query text; sort/alpha/limit come from the caller, not the text."""
    if sort not in SORT_MODES:
        raise QueryError(f"unknown sort mode {sort!r} (expected one of {', '.join(SORT_MODES)})")
    if not 0.0 <= alpha <= 1.0:
        raise QueryError(f"alpha must be in [0, 1], got {alpha!r}")
    if limit < 1:
        raise QueryError(f"limit must be positive, got {limit!r}")

    query = Query(sort=sort, alpha=alpha, limit=limit)
    for atom in text.split():
        prefix, sep, rest = atom.partition(":")
        if not sep:
            term = normalize_term(atom)
            if not term:
                raise QueryError(f"term {atom!r} has no searchable characters")
            query.clauses.append((ANY_FIELD, term))
        elif prefix in CLAUSE_FIELDS:
            term = normalize_term(rest)
            if not term:
                raise QueryError(f"empty term in clause {atom!r}")
            query.clauses.append((CLAUSE_FIELDS[prefix], term))
        elif prefix == "visibility":
            if rest not in VISIBILITIES:
                raise QueryError(
                    f"visibility must be one of {', '.join(VISIBILITIES)}, got {rest!r}"
                )
            query.visibility = rest
        elif prefix == "project":
            if not rest:
                raise QueryError(f"empty project id in {atom!r}")
            query.project = rest
        else:
            raise UnknownFieldError(f"unknown field prefix {prefix!r} in {atom!r}")

    if not query.clauses and query.visibility is None and query.project is None:
        raise EmptyQueryError("query has no clauses and no filters")
    return query


def _clause_candidates(snapshot: IndexSnapshot, clause: tuple[str, str]) -> set[int]:
    clause_field, term = clause
    if clause_field == ANY_FIELD:
        ids: set[int] = set()
        for posting_field in FIELD_WEIGHTS:
            ids.update(eid for eid, _ in snapshot.postings.get((posting_field, term), []))
        return ids
    return {eid for eid, _ in snapshot.postings.get((clause_field, term), [])}


def match_candidates(snapshot: IndexSnapshot, query: Query) -> list[int]:
    """Entity ids matching all clauses and filters, ascending."""
    candidates: set[int] | None = None
    for clause in query.clauses:
        ids = _clause_candidates(snapshot, clause)
        candidates = ids if candidates is None else candidates & ids
        if not candidates:
            return []
    if candidates is None:
        candidates = {e.entity_id for e in snapshot.entities}
    selected = []
    for eid in sorted(candidates):
        entity = snapshot.entity(eid)
        if query.visibility is not None and entity.visibility != query.visibility:
            continue
        if query.project is not None and entity.project_id != query.project:
            continue
        selected.append(eid)
    return selected


def _field_score(snapshot: IndexSnapshot, entity_id: int, posting_field: str, term: str) -> float:
    plist = snapshot.postings.get((posting_field, term))
    if not plist:
        return 0.0
    tf = next((tf for eid, tf in plist if eid == entity_id), 0)
    if tf == 0:
        return 0.0
    idf = math.log(snapshot.doc_count / len(plist))
    return FIELD_WEIGHTS[posting_field] * math.log1p(tf) * idf


def score_relevance(snapshot: IndexSnapshot, entity_id: int, query: Query) -> float:
    """tf-idf style relevance; an any-clause takes the best field's score."""
    total = 0.0
    for clause_field, term in query.clauses:
        if clause_field == ANY_FIELD:
            total += max(
                _field_score(snapshot, entity_id, posting_field, term)
                for posting_field in FIELD_WEIGHTS
            )
        else:
            total += _field_score(snapshot, entity_id, clause_field, term)
    return total


def _min_max_normalize(values: list[float]) -> list[float]:
    lo, hi = min(values), max(values)
    if hi <= lo:
        return [0.0] * len(values)
    return [(v - lo) / (hi - lo) for v in values]


def order_results(results: list[SearchResult], sort: str, alpha: float) -> list[SearchResult]:
    """Total, deterministic ordering for one of the three sort modes."""
    if sort == "relevance":
        return sorted(results, key=lambda r: (-r.relevance, r.entity.entity_id))
    if sort == "trust":
        return sorted(
            results,
            key=lambda r: (
                r.trust is None,
                -(r.trust if r.trust is not None else 0.0),
                -r.relevance,
                r.entity.entity_id,
            ),
        )
    if sort == "blend":
        if not results:
            return []
        nrel = _min_max_normalize([r.relevance for r in results])
        trusts = [r.trust for r in results]
        known = [t for t in trusts if t is not None]
        if known and max(known) > min(known):
            lo, hi = min(known), max(known)
            ntrust = [0.0 if t is None else (t - lo) / (hi - lo) for t in trusts]
        else:
            ntrust = [0.0] * len(trusts)
        scored = {
            r.entity.entity_id: (1.0 - alpha) * nr + alpha * nt
            for r, nr, nt in zip(results, nrel, ntrust)
        }
        return sorted(
            results, key=lambda r: (-scored[r.entity.entity_id], r.entity.entity_id)
        )
    raise QueryError(f"unknown sort mode {sort!r}")


def execute_search(snapshot: IndexSnapshot, query: Query) -> list[SearchResult]:
    """Matching entities joined with trust and metadata, ordered and truncated."""
    results = []
    for eid in match_candidates(snapshot, query):
        entity = snapshot.entity(eid)
        trust = snapshot.trust.trust.get(entity.project_id)
        scale = (
            map_to_trust_scale(snapshot.trust, entity.project_id)
            if trust is not None
            else None
        )
        results.append(
            SearchResult(
                entity=entity,
                relevance=score_relevance(snapshot, eid, query),
                trust=trust,
                trust_scale=scale,
                project=snapshot.metadata[entity.project_id],
            )
        )
    ordered = order_results(results, query.sort, query.alpha)
    return ordered[: query.limit]
