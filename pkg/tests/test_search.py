"""Query parsing, scoring, ordering and index/oracle equivalence tests."""

import math

import pytest

from jbender.codeindex import build_index
from jbender.extract import CodeEntity
from jbender.search import (
    EmptyQueryError,
    Query,
    QueryError,
    SearchResult,
    UnknownFieldError,
    execute_search,
    match_candidates,
    order_results,
    parse_query,
    score_relevance,
)
from jbender.trustcore import KarmaTable, TrustTable, map_to_trust_scale
from jbender.ingest import ProjectMetadata

from oracles import LinearScanSearcher, generate_queries


def _entity(entity_id, name, project="p", **kwargs):
    defaults = dict(
        file_path="F.java",
        kind="class",
        qualified_name=name,
        visibility="public",
        interfaces=[],
        body="",
        comments="",
        snippet="",
    )
    defaults.update(kwargs)
    return CodeEntity(entity_id=entity_id, project_id=project, name=name, **defaults)


def _meta(project_id):
    return ProjectMetadata(project_id, project_id.title(), "", "MIT", 1, 1, 1)


def _snapshot(entities, trust=None):
    projects = {e.project_id for e in entities}
    return build_index(
        entities,
        KarmaTable({}),
        TrustTable(trust or {}),
        {p: _meta(p) for p in sorted(projects)},
    )


class TestParseQuery:
    def test_field_clause(self):
        query = parse_query("name:ArrayComparisonFailure")
        assert query.clauses == [("name", "arraycomparisonfailure")]

    def test_bare_term_plus_visibility_filter(self):
        query = parse_query("assert visibility:public")
        assert query.clauses == [("any", "assert")]
        assert query.visibility == "public"

    def test_unknown_field_prefix(self):
        with pytest.raises(UnknownFieldError, match="color"):
            parse_query("color:red")

    def test_empty_query(self):
        with pytest.raises(EmptyQueryError):
            parse_query("   ")

    def test_comment_and_implements_map_to_posting_fields(self):
        query = parse_query("comment:doc implements:Bar")
        assert query.clauses == [("comments", "doc"), ("interfaces", "bar")]

    def test_project_filter(self):
        query = parse_query("project:junit")
        assert query.project == "junit" and query.clauses == []

    def test_bad_visibility_value(self):
        with pytest.raises(QueryError, match="visibility"):
            parse_query("visibility:open")

    def test_bad_alpha_rejected(self):
        with pytest.raises(QueryError, match="alpha"):
            parse_query("foo", alpha=1.5)


class TestScoreRelevance:
    def test_single_entity_index_scores_zero_but_matches(self):
        snapshot = _snapshot([_entity(0, "Foo")])
        query = parse_query("name:Foo")
        assert match_candidates(snapshot, query) == [0]
        assert score_relevance(snapshot, 0, query) == 0.0

    def test_doc_count_two_idf(self):
        snapshot = _snapshot([_entity(0, "Foo"), _entity(1, "Bar")])
        query = parse_query("name:Foo")
        expected = 3.0 * math.log(2) * math.log(2)
        assert score_relevance(snapshot, 0, query) == pytest.approx(expected, rel=1e-12)

    def test_any_takes_best_field(self):
        snapshot = _snapshot(
            [
                _entity(0, "Foo", body="needle needle"),
                _entity(1, "Needle"),
                _entity(2, "Other"),
            ]
        )
        query = parse_query("needle")
        # entity 1: name weight 3 * ln2 * ln(3/1); entity 0: body ln(1+2) * ln(3/1)
        assert score_relevance(snapshot, 1, query) == pytest.approx(
            3.0 * math.log(2) * math.log(3), rel=1e-12
        )
        assert score_relevance(snapshot, 0, query) == pytest.approx(
            math.log(3) * math.log(3), rel=1e-12
        )


class TestOrdering:
    def _results(self):
        meta = _meta("p")
        return [
            SearchResult(_entity(0, "A"), relevance=2.0, trust=1.0, trust_scale=5, project=meta),
            SearchResult(_entity(1, "B"), relevance=1.0, trust=9.0, trust_scale=10, project=meta),
        ]

    def test_alpha_zero_equals_relevance_order(self):
        results = self._results()
        assert [r.entity.entity_id for r in order_results(results, "blend", 0.0)] == [
            r.entity.entity_id for r in order_results(results, "relevance", 0.0)
        ]

    def test_alpha_one_equals_trust_order(self):
        results = self._results()
        assert [r.entity.entity_id for r in order_results(results, "blend", 1.0)] == [
            r.entity.entity_id for r in order_results(results, "trust", 1.0)
        ]

    def test_blend_tie_broken_by_entity_id(self):
        results = self._results()
        ordered = order_results(results, "blend", 0.5)
        # both normalize to 0.5; ascending entity id wins
        assert [r.entity.entity_id for r in ordered] == [0, 1]

    def test_trust_none_sorts_below_all(self):
        meta = _meta("p")
        results = [
            SearchResult(_entity(0, "A"), 5.0, None, None, meta),
            SearchResult(_entity(1, "B"), 0.0, 0.0, 1, meta),
        ]
        ordered = order_results(results, "trust", 0.5)
        assert [r.entity.entity_id for r in ordered] == [1, 0]


class TestExecuteSearch:
    def test_empty_snapshot(self):
        snapshot = _snapshot([])
        assert execute_search(snapshot, parse_query("anything")) == []

    def test_figure_fixture_query(self, fixture_snapshot):
        query = parse_query("name:ArrayComparisonFailure")
        results = execute_search(fixture_snapshot, query)
        classes = [r for r in results if r.entity.kind == "class"]
        assert len(classes) == 1
        top = classes[0]
        assert top.entity.qualified_name == "org.junit.internal.ArrayComparisonFailure"
        assert top.project.name == "JUnit"
        assert top.project.license == "CPL"
        assert top.trust == fixture_snapshot.trust.trust["junit"]
        assert top.trust_scale == map_to_trust_scale(fixture_snapshot.trust, "junit")

    def test_filters_only_shrink(self, fixture_snapshot):
        base = parse_query("size")
        filtered = parse_query("size visibility:public")
        base_ids = set(match_candidates(fixture_snapshot, base))
        filtered_ids = set(match_candidates(fixture_snapshot, filtered))
        assert filtered_ids <= base_ids

        more_clauses = parse_query("size int")
        assert set(match_candidates(fixture_snapshot, more_clauses)) <= base_ids

    def test_limit_prefix_monotonicity(self, fixture_snapshot):
        for k in (1, 2, 3, 5, 8):
            small = execute_search(
                fixture_snapshot, parse_query("int", limit=k)
            )
            big = execute_search(
                fixture_snapshot, parse_query("int", limit=k + 1)
            )
            assert [r.entity.entity_id for r in small] == [
                r.entity.entity_id for r in big
            ][:k]

    def test_determinism(self, fixture_snapshot):
        query = parse_query("value sort:ignored".replace(" sort:ignored", ""))
        first = execute_search(fixture_snapshot, query)
        second = execute_search(fixture_snapshot, query)
        assert [(r.entity.entity_id, r.relevance) for r in first] == [
            (r.entity.entity_id, r.relevance) for r in second
        ]

    def test_trust_sort_top_has_max_trust(self, fixture_snapshot):
        query = parse_query("int", sort="trust", limit=50)
        results = execute_search(fixture_snapshot, query)
        known = [r.trust for r in results if r.trust is not None]
        if known:
            assert results[0].trust == max(known)


class TestOracleEquivalence:
    def test_generated_queries_match_linear_scan(self, fixture_snapshot):
        scales = {
            pid: map_to_trust_scale(fixture_snapshot.trust, pid)
            for pid in fixture_snapshot.trust.trust
        }
        oracle = LinearScanSearcher(
            fixture_snapshot.entities, fixture_snapshot.trust.trust, scales
        )
        queries = generate_queries(fixture_snapshot, count=60, seed=5)
        for query in queries:
            expected = oracle.search(query)
            actual = [
                (r.entity.entity_id, r.relevance)
                for r in execute_search(fixture_snapshot, query)
            ]
            assert [e for e, _ in actual] == [e for e, _ in expected]
            for (_, got), (_, want) in zip(actual, expected):
                assert got == pytest.approx(want, rel=1e-9, abs=1e-12)
