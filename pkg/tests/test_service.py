"""HTTP JSON API contract tests over the fixture snapshot."""

import pytest
from fastapi.testclient import TestClient

from jbender.search import execute_search, match_candidates, parse_query
from jbender.service import create_app
from jbender.trustcore import map_to_trust_scale


@pytest.fixture(scope="module")
def client(fixture_snapshot, fixture_bundle):
    app = create_app(fixture_snapshot, contributions=fixture_bundle.matrix)
    return TestClient(app)


RESULT_FIELDS = {
    "qualified_name", "kind", "snippet", "file_path",
    "project", "trust", "trust_scale", "relevance",
}
PROJECT_FIELDS = {"id", "name", "license", "homepage", "user_count", "developer_count"}


class TestSearchEndpoint:
    def test_page_shape(self, client):
        response = client.get("/api/search", params={"q": "name:Foo", "sort": "trust"})
        assert response.status_code == 200
        page = response.json()
        assert set(page) == {"query_echo", "sort", "alpha", "total_matches", "results"}
        assert page["query_echo"] == "name:Foo"
        assert page["sort"] == "trust"

    def test_result_record_fields_exact(self, client):
        page = client.get(
            "/api/search", params={"q": "name:ArrayComparisonFailure"}
        ).json()
        assert page["total_matches"] >= 1
        record = page["results"][0]
        assert set(record) == RESULT_FIELDS
        assert set(record["project"]) == PROJECT_FIELDS

    def test_matches_search_module_exactly(self, client, fixture_snapshot):
        query = parse_query("int", sort="trust", alpha=0.5, limit=5)
        expected = execute_search(fixture_snapshot, query)
        page = client.get(
            "/api/search", params={"q": "int", "sort": "trust", "limit": "5"}
        ).json()
        assert page["total_matches"] == len(match_candidates(fixture_snapshot, query))
        assert [r["qualified_name"] for r in page["results"]] == [
            r.entity.qualified_name for r in expected
        ]
        assert [r["relevance"] for r in page["results"]] == [
            r.relevance for r in expected
        ]
        assert [r["trust"] for r in page["results"]] == [r.trust for r in expected]

    def test_empty_query_is_400(self, client):
        response = client.get("/api/search", params={"q": ""})
        assert response.status_code == 400
        assert "error" in response.json()

    def test_unknown_field_is_400(self, client):
        response = client.get("/api/search", params={"q": "color:red"})
        assert response.status_code == 400
        assert "color" in response.json()["error"]

    def test_malformed_alpha_is_400(self, client):
        assert client.get(
            "/api/search", params={"q": "x", "alpha": "wide"}
        ).status_code == 400
        assert client.get(
            "/api/search", params={"q": "x", "alpha": "1.5"}
        ).status_code == 400

    def test_limit_respected(self, client):
        page = client.get("/api/search", params={"q": "int", "limit": "2"}).json()
        assert len(page["results"]) <= 2


class TestProjectAndDeveloperEndpoints:
    def test_project_found(self, client, fixture_snapshot):
        record = client.get("/api/projects/junit").json()
        assert record["name"] == "JUnit"
        assert record["votes"] == 400
        assert record["trust"] == fixture_snapshot.trust.trust["junit"]
        assert record["trust_scale"] == map_to_trust_scale(
            fixture_snapshot.trust, "junit"
        )

    def test_project_without_trust_is_null_not_zero(self, client):
        record = client.get("/api/projects/ghostproj").json()
        assert record["trust"] is None
        assert record["trust_scale"] is None

    def test_project_unknown_404(self, client):
        response = client.get("/api/projects/nosuch")
        assert response.status_code == 404
        assert "error" in response.json()

    def test_developer_found(self, client, fixture_snapshot):
        record = client.get("/api/developers/alice").json()
        assert record["karma"] == fixture_snapshot.karma.karma["alice"]

    def test_developer_unknown_404(self, client):
        assert client.get("/api/developers/cibot").status_code == 404


class TestRankings:
    def test_projects_by_trust_sorted_with_na_last(self, client):
        rows = client.get("/api/rankings/projects", params={"top": "10"}).json()["rows"]
        trusts = [r["trust"] for r in rows if r["trust"] is not None]
        assert trusts == sorted(trusts, reverse=True)
        assert rows[-1]["id"] == "ghostproj" and rows[-1]["trust"] is None

    def test_projects_by_votes(self, client):
        rows = client.get(
            "/api/rankings/projects", params={"top": "10", "by": "votes"}
        ).json()["rows"]
        votes = [r["votes"] for r in rows]
        assert votes == sorted(votes, reverse=True)

    def test_developers_by_karma(self, client):
        rows = client.get("/api/rankings/developers", params={"top": "3"}).json()["rows"]
        assert len(rows) <= 3
        karmas = [r["karma"] for r in rows]
        assert karmas == sorted(karmas, reverse=True)

    def test_top_must_be_positive(self, client):
        assert client.get(
            "/api/rankings/projects", params={"top": "0"}
        ).status_code == 400


class TestPowerLawEndpoint:
    def test_votes_series(self, client):
        record = client.get("/api/stats/powerlaw", params={"series": "votes"}).json()
        assert set(record) == {"series", "slope", "intercept", "abs_r", "n_points"}
        assert record["n_points"] == 4

    def test_matrix_series_needs_contributions(self, fixture_snapshot):
        app = create_app(fixture_snapshot, contributions=None)
        response = TestClient(app).get(
            "/api/stats/powerlaw", params={"series": "projects_per_dev"}
        )
        assert response.status_code == 404

    def test_unknown_series_400(self, client):
        assert client.get(
            "/api/stats/powerlaw", params={"series": "bogus"}
        ).status_code == 400
