"""Read-only HTTP JSON API over a loaded index snapshot.

Endpoints (all GET, responses UTF-8 JSON, errors as {"error": text}):

    /api/search?q=...&sort=relevance|trust|blend&alpha=0.5&limit=20
    /api/projects/{id}
    /api/developers/{id}
    /api/rankings/projects?top=N&by=trust|votes
    /api/rankings/developers?top=N
    /api/stats/powerlaw?series=votes|commits_per_dev_project|projects_per_dev

The snapshot is loaded once and shared read-only across requests; the HTTP
layer adds no logic beyond serialization of the search module's output.
"""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .codeindex import IndexSnapshot
from .ingest import ProjectMetadata
from .search import (
    QueryError,
    SearchResult,
    execute_search,
    match_candidates,
    parse_query,
)
from .series import (
    SeriesUnavailableError,
    UnknownSeriesError,
    series_samples,
)
from .trustcore import (
    ContributionMatrix,
    InsufficientDataError,
    DegenerateDataError,
    fit_power_law,
    map_to_trust_scale,
)


def _error(status: int, message: str) -> JSONResponse:
    return JSONResponse({"error": message}, status_code=status)


def _project_record(meta: ProjectMetadata) -> dict:
    return {
        "id": meta.project_id,
        "name": meta.name,
        "license": meta.license,
        "homepage": meta.homepage,
        "user_count": meta.user_count,
        "developer_count": meta.developer_count,
    }


def _result_record(result: SearchResult) -> dict:
    return {
        "qualified_name": result.entity.qualified_name,
        "kind": result.entity.kind,
        "snippet": result.entity.snippet,
        "file_path": result.entity.file_path,
        "project": _project_record(result.project),
        "trust": result.trust,
        "trust_scale": result.trust_scale,
        "relevance": result.relevance,
    }


def project_rankings(snapshot: IndexSnapshot, top: int, by: str = "trust") -> list[dict]:
    """Ranked project rows; by trust (n/a last) or by votes."""
    rows = []
    for pid, meta in snapshot.metadata.items():
        trust = snapshot.trust.trust.get(pid)
        scale = map_to_trust_scale(snapshot.trust, pid) if trust is not None else None
        rows.append(
            {
                "id": pid,
                "name": meta.name,
                "trust": trust,
                "trust_scale": scale,
                "votes": meta.votes,
            }
        )
    if by == "votes":
        rows.sort(key=lambda r: (-r["votes"], r["id"]))
    else:
        rows.sort(
            key=lambda r: (
                r["trust"] is None,
                -(r["trust"] if r["trust"] is not None else 0.0),
                r["id"],
            )
        )
    return rows[:top]


def developer_rankings(snapshot: IndexSnapshot, top: int) -> list[dict]:
    rows = [
        {"id": dev, "karma": karma}
        for dev, karma in snapshot.karma.karma.items()
    ]
    rows.sort(key=lambda r: (-r["karma"], r["id"]))
    return rows[:top]


def create_app(
    snapshot: IndexSnapshot,
    contributions: ContributionMatrix | None = None,
    static_dir: str | None = None,
) -> FastAPI:
    app = FastAPI(title="jbender", docs_url=None, redoc_url=None)

    @app.get("/api/search")
    def api_search(
        q: str = "", sort: str = "relevance", alpha: str = "0.5", limit: str = "20"
    ):
        try:
            alpha_value = float(alpha)
            limit_value = int(limit)
        except ValueError:
            return _error(400, f"alpha and limit must be numeric, got {alpha!r}, {limit!r}")
        try:
            query = parse_query(q, sort=sort, alpha=alpha_value, limit=limit_value)
            results = execute_search(snapshot, query)
            total = len(match_candidates(snapshot, query))
        except QueryError as exc:
            return _error(400, str(exc))
        return {
            "query_echo": q,
            "sort": query.sort,
            "alpha": query.alpha,
            "total_matches": total,
            "results": [_result_record(r) for r in results],
        }

    @app.get("/api/projects/{project_id}")
    def api_project(project_id: str):
        meta = snapshot.metadata.get(project_id)
        if meta is None:
            return _error(404, f"unknown project {project_id!r}")
        trust = snapshot.trust.trust.get(project_id)
        record = _project_record(meta)
        record["votes"] = meta.votes
        record["trust"] = trust
        record["trust_scale"] = (
            map_to_trust_scale(snapshot.trust, project_id) if trust is not None else None
        )
        return record

    @app.get("/api/developers/{developer_id}")
    def api_developer(developer_id: str):
        karma = snapshot.karma.karma.get(developer_id)
        if karma is None:
            return _error(404, f"unknown developer {developer_id!r}")
        return {"id": developer_id, "karma": karma}

    @app.get("/api/rankings/projects")
    def api_rankings_projects(top: str = "10", by: str = "trust"):
        try:
            top_value = int(top)
        except ValueError:
            return _error(400, f"top must be an integer, got {top!r}")
        if top_value < 1:
            return _error(400, f"top must be positive, got {top_value}")
        if by not in ("trust", "votes"):
            return _error(400, f"by must be trust or votes, got {by!r}")
        return {"rows": project_rankings(snapshot, top_value, by)}

    @app.get("/api/rankings/developers")
    def api_rankings_developers(top: str = "10"):
        try:
            top_value = int(top)
        except ValueError:
            return _error(400, f"top must be an integer, got {top!r}")
        if top_value < 1:
            return _error(400, f"top must be positive, got {top_value}")
        return {"rows": developer_rankings(snapshot, top_value)}

    @app.get("/api/stats/powerlaw")
    def api_powerlaw(series: str = "votes"):
        try:
            samples = series_samples(snapshot, contributions, series)
            fit = fit_power_law(samples)
        except UnknownSeriesError as exc:
            return _error(400, str(exc))
        except SeriesUnavailableError as exc:
            return _error(404, str(exc))
        except (InsufficientDataError, DegenerateDataError) as exc:
            return _error(400, str(exc))
        return {
            "series": series,
            "slope": fit.slope,
            "intercept": fit.intercept,
            "abs_r": fit.abs_r,
            "n_points": fit.n_points,
        }

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")

    return app
