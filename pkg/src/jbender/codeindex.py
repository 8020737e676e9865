"""Inverted index over extracted code entities, plus on-disk persistence.

Index directory layout (format_version 1, all files UTF-8 with LF endings):

    meta.json       format_version, doc_count, project metadata, karma and
                    trust tables (floats survive the round trip bit-exactly,
                    JSON numbers use shortest round-trip decimals)
    entities.jsonl  one entity per line, sorted by entity_id
    postings.jsonl  {"field":..., "term":..., "list":[[entity_id, tf], ...]},
                    sorted by (field, term)

Persisting the same snapshot twice produces identical bytes.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .errors import JBenderError
from .extract import CodeEntity, extract_entities
from .ingest import ProjectMetadata
from .trustcore import KarmaTable, TrustTable

FORMAT_VERSION = 1

META_FILE = "meta.json"
ENTITIES_FILE = "entities.jsonl"
POSTINGS_FILE = "postings.jsonl"

INDEX_FIELDS = ("name", "body", "comments", "interfaces")

SOURCE_SUFFIXES = (".java",)


class DuplicateEntityIdError(JBenderError):
    """Two entities share an id; the index would be ambiguous."""


class VersionMismatchError(JBenderError):
    """The on-disk index was written with an unsupported format version."""


class CorruptIndexError(JBenderError):
    """An index file is missing or unreadable; carries the file name."""


_WORD_RE = re.compile(r"[A-Za-z0-9]+")
_HUMP_RE = re.compile(r"[A-Z]+(?![a-z])|[A-Z][a-z0-9]*|[a-z0-9]+")


def tokenize(text: str) -> list[str]:
    """Lowercased tokens: each alphanumeric run, plus camelCase humps.

    Identifiers with internal humps are indexed both whole and split
    ("ArrayComparisonFailure" -> arraycomparisonfailure, array, comparison,
    failure); single-hump words are emitted once, so tokenizing a lowercase
    token yields exactly that token back.
    """
    tokens: list[str] = []
    for word in _WORD_RE.findall(text):
        tokens.append(word.lower())
        humps = _HUMP_RE.findall(word)
        if len(humps) > 1:
            tokens.extend(h.lower() for h in humps)
    return tokens


def normalize_term(term: str) -> str:
    """Query-side counterpart of tokenize: one lowercase alphanumeric token."""
    return "".join(re.findall(r"[A-Za-z0-9]+", term)).lower()


def entity_field_text(entity: CodeEntity, field_name: str) -> str:
    """The raw text indexed under one field of an entity."""
    if field_name == "name":
        return entity.name
    if field_name == "body":
        return entity.body
    if field_name == "comments":
        return entity.comments
    if field_name == "interfaces":
        return " ".join(entity.interfaces)
    raise ValueError(f"unknown index field: {field_name!r}")


@dataclass
class IndexSnapshot:
    """Immutable search artifact: entities, postings and the trust tables."""

    entities: list[CodeEntity]
    postings: dict[tuple[str, str], list[tuple[int, int]]]
    doc_count: int
    karma: KarmaTable
    trust: TrustTable
    metadata: dict[str, ProjectMetadata]
    format_version: int = FORMAT_VERSION

    def entity(self, entity_id: int) -> CodeEntity:
        return self._by_id[entity_id]

    def __post_init__(self) -> None:
        self._by_id = {e.entity_id: e for e in self.entities}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IndexSnapshot):
            return NotImplemented
        return (
            self.entities == other.entities
            and self.postings == other.postings
            and self.doc_count == other.doc_count
            and self.karma == other.karma
            and self.trust == other.trust
            and self.metadata == other.metadata
            and self.format_version == other.format_version
        )


def build_index(
    entities: list[CodeEntity],
    karma: KarmaTable,
    trust: TrustTable,
    metadata: dict[str, ProjectMetadata],
) -> IndexSnapshot:
    """Tokenize every entity field and assemble the postings lists."""
    seen: set[int] = set()
    for entity in entities:
        if entity.entity_id in seen:
            raise DuplicateEntityIdError(f"duplicate entity id {entity.entity_id}")
        seen.add(entity.entity_id)
    ordered = sorted(entities, key=lambda e: e.entity_id)

    postings: dict[tuple[str, str], list[tuple[int, int]]] = {}
    for entity in ordered:
        for field_name in INDEX_FIELDS:
            counts = Counter(tokenize(entity_field_text(entity, field_name)))
            for term, tf in counts.items():
                postings.setdefault((field_name, term), []).append(
                    (entity.entity_id, tf)
                )
    for plist in postings.values():
        plist.sort()

    return IndexSnapshot(
        entities=ordered,
        postings=postings,
        doc_count=len(ordered),
        karma=karma,
        trust=trust,
        metadata=dict(sorted(metadata.items())),
    )


def _entity_to_record(entity: CodeEntity) -> dict:
    return {
        "entity_id": entity.entity_id,
        "project_id": entity.project_id,
        "file_path": entity.file_path,
        "kind": entity.kind,
        "name": entity.name,
        "qualified_name": entity.qualified_name,
        "visibility": entity.visibility,
        "interfaces": entity.interfaces,
        "body": entity.body,
        "comments": entity.comments,
        "snippet": entity.snippet,
    }


def _entity_from_record(record: dict) -> CodeEntity:
    return CodeEntity(
        entity_id=record["entity_id"],
        project_id=record["project_id"],
        file_path=record["file_path"],
        kind=record["kind"],
        name=record["name"],
        qualified_name=record["qualified_name"],
        visibility=record["visibility"],
        interfaces=list(record["interfaces"]),
        body=record["body"],
        comments=record["comments"],
        snippet=record["snippet"],
    )


def persist_index(snapshot: IndexSnapshot, directory: str | Path) -> None:
    """Write the snapshot; deterministic bytes for identical snapshots."""
    root = Path(directory)
    root.mkdir(parents=True, exist_ok=True)

    meta = {
        "format_version": snapshot.format_version,
        "doc_count": snapshot.doc_count,
        "metadata": {
            pid: {
                "name": m.name,
                "homepage": m.homepage,
                "license": m.license,
                "votes": m.votes,
                "user_count": m.user_count,
                "developer_count": m.developer_count,
            }
            for pid, m in sorted(snapshot.metadata.items())
        },
        "karma": dict(sorted(snapshot.karma.karma.items())),
        "trust": dict(sorted(snapshot.trust.trust.items())),
    }
    with open(root / META_FILE, "w", encoding="utf-8", newline="\n") as handle:
        json.dump(meta, handle, ensure_ascii=False, indent=2)
        handle.write("\n")

    with open(root / ENTITIES_FILE, "w", encoding="utf-8", newline="\n") as handle:
        for entity in sorted(snapshot.entities, key=lambda e: e.entity_id):
            handle.write(json.dumps(_entity_to_record(entity), ensure_ascii=False))
            handle.write("\n")

    with open(root / POSTINGS_FILE, "w", encoding="utf-8", newline="\n") as handle:
        for (field_name, term) in sorted(snapshot.postings):
            record = {
                "field": field_name,
                "term": term,
                "list": [[eid, tf] for eid, tf in snapshot.postings[(field_name, term)]],
            }
            handle.write(json.dumps(record, ensure_ascii=False))
            handle.write("\n")


def load_index(directory: str | Path) -> IndexSnapshot:
    """Read a snapshot written by persist_index; value-equal round trip."""
    root = Path(directory)

    def _read(name: str) -> str:
        path = root / name
        if not path.is_file():
            raise CorruptIndexError(f"missing index file: {path}")
        return path.read_text(encoding="utf-8")

    try:
        meta = json.loads(_read(META_FILE))
    except json.JSONDecodeError as exc:
        raise CorruptIndexError(f"unreadable {META_FILE}: {exc}") from None
    version = meta.get("format_version")
    if version != FORMAT_VERSION:
        raise VersionMismatchError(
            f"unsupported index format_version {version!r} (expected {FORMAT_VERSION})"
        )

    entities: list[CodeEntity] = []
    for line_no, line in enumerate(_read(ENTITIES_FILE).splitlines(), start=1):
        try:
            entities.append(_entity_from_record(json.loads(line)))
        except (json.JSONDecodeError, KeyError) as exc:
            raise CorruptIndexError(f"{ENTITIES_FILE}:{line_no}: {exc}") from None

    ids = {e.entity_id for e in entities}
    postings: dict[tuple[str, str], list[tuple[int, int]]] = {}
    for line_no, line in enumerate(_read(POSTINGS_FILE).splitlines(), start=1):
        try:
            record = json.loads(line)
            plist = [(int(eid), int(tf)) for eid, tf in record["list"]]
            postings[(record["field"], record["term"])] = plist
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise CorruptIndexError(f"{POSTINGS_FILE}:{line_no}: {exc}") from None
        if any(eid not in ids for eid, _ in plist):
            raise CorruptIndexError(
                f"{POSTINGS_FILE}:{line_no}: posting references unknown entity"
            )

    if meta.get("doc_count") != len(entities):
        raise CorruptIndexError(f"{META_FILE}: doc_count disagrees with {ENTITIES_FILE}")

    metadata = {
        pid: ProjectMetadata(
            project_id=pid,
            name=m["name"],
            homepage=m["homepage"],
            license=m["license"],
            votes=m["votes"],
            user_count=m["user_count"],
            developer_count=m["developer_count"],
        )
        for pid, m in meta.get("metadata", {}).items()
    }
    return IndexSnapshot(
        entities=entities,
        postings=postings,
        doc_count=meta["doc_count"],
        karma=KarmaTable({k: float(v) for k, v in meta.get("karma", {}).items()}),
        trust=TrustTable({k: float(v) for k, v in meta.get("trust", {}).items()}),
        metadata=metadata,
        format_version=version,
    )


def extract_project(project_id: str, src_dir: str | Path) -> list[CodeEntity]:
    """Extract entities from every source file under a directory tree.

    Files are visited in sorted relative-path order and decoded lossily, so
    the result is deterministic for any byte content. Entity ids are dense
    0..n-1 across the whole tree.
    """
    root = Path(src_dir)
    paths = sorted(
        p for p in root.rglob("*") if p.is_file() and p.suffix in SOURCE_SUFFIXES
    )
    entities: list[CodeEntity] = []
    for path in paths:
        text = path.read_bytes().decode("utf-8", errors="replace")
        rel = path.relative_to(root).as_posix()
        for entity in extract_entities(project_id, rel, text):
            entity.entity_id = len(entities)
            entities.append(entity)
    return entities


def renumber_entities(entities: list[CodeEntity]) -> list[CodeEntity]:
    """Dense ids over (project, path, previous id) order; history-independent."""
    ordered = sorted(entities, key=lambda e: (e.project_id, e.file_path, e.entity_id))
    for new_id, entity in enumerate(ordered):
        entity.entity_id = new_id
    return ordered
