"""Command-line entry points for the full pipeline.

    jbender ingest --meta DIR --out DIR
    jbender index --src DIR --project ID --out DIR
    jbender rank --index DIR --kind projects|developers --top N
    jbender search --index DIR --sort MODE --alpha F --limit N "QUERY"
    jbender fit --index DIR --series NAME
    jbender report --index DIR --out DIR
    jbender serve --index DIR --port N --static-dir DIR

All commands exit 0 on success and nonzero with a one-line diagnostic on
error. `--index` defaults to the JBENDER_INDEX environment variable.
"""

from __future__ import annotations

import functools
import sys
import warnings
from pathlib import Path

import click

from . import codeindex, ingest, report, search, series, trustcore
from .errors import JBenderError


def _echo_warnings(caught: list[warnings.WarningMessage]) -> None:
    for item in caught:
        click.echo(f"warning: {item.message}", err=True)


def _fail_on_error(func):
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except JBenderError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)

    return wrapper


def _load_snapshot(index_dir: str) -> codeindex.IndexSnapshot:
    return codeindex.load_index(index_dir)


@click.group()
def main() -> None:
    """Trust-ranked code search: ingest metadata, index sources, search."""


@main.command("ingest")
@click.option("--meta", "meta_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@_fail_on_error
def cli_ingest(meta_dir: str, out_dir: str) -> None:
    """Load the metadata dataset, compute the trust tables, start an index."""
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        bundle = ingest.load_dataset(meta_dir)
    _echo_warnings(caught)
    karma, trust = trustcore.compute_all(bundle.matrix, bundle.votes)
    snapshot = codeindex.build_index([], karma, trust, bundle.metadata)
    codeindex.persist_index(snapshot, out_dir)
    ingest.write_dataset(bundle, Path(out_dir) / series.DATASET_SUBDIR)
    click.echo(
        f"ingested {len(bundle.metadata)} projects, "
        f"{len(bundle.developers)} developers, "
        f"{len(bundle.matrix.entries)} contribution entries -> {out_dir}"
    )


@main.command("index")
@click.option("--src", "src_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--project", "project_id", required=True)
@click.option("--out", "out_dir", required=True, type=click.Path(exists=True, file_okay=False))
@_fail_on_error
def cli_index(src_dir: str, project_id: str, out_dir: str) -> None:
    """Extract and index one project's source tree into an ingested index."""
    snapshot = _load_snapshot(out_dir)
    if project_id not in snapshot.metadata:
        raise JBenderError(
            f"unknown project {project_id!r}; it has no metadata in this index"
        )
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        extracted = codeindex.extract_project(project_id, src_dir)
    _echo_warnings(caught)
    kept = [e for e in snapshot.entities if e.project_id != project_id]
    entities = codeindex.renumber_entities(kept + extracted)
    rebuilt = codeindex.build_index(
        entities, snapshot.karma, snapshot.trust, snapshot.metadata
    )
    codeindex.persist_index(rebuilt, out_dir)
    files = len({e.file_path for e in extracted})
    click.echo(
        f"indexed {len(extracted)} entities from {files} files "
        f"for project {project_id} (index now has {rebuilt.doc_count})"
    )


def _format_table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
    lines = [
        "  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip(),
        "  ".join("-" * w for w in widths),
    ]
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines)


def _fmt_float(value: float | None, digits: int = 4) -> str:
    return "n/a" if value is None else f"{value:.{digits}f}"


@main.command("rank")
@click.option("--index", "index_dir", required=True, envvar="JBENDER_INDEX",
              type=click.Path(exists=True, file_okay=False))
@click.option("--kind", type=click.Choice(["projects", "developers"]), required=True)
@click.option("--top", default=10, show_default=True, type=click.IntRange(min=1))
@_fail_on_error
def cli_rank(index_dir: str, kind: str, top: int) -> None:
    """Rank projects by trustability or developers by karma."""
    from .service import developer_rankings, project_rankings

    snapshot = _load_snapshot(index_dir)
    if kind == "projects":
        rows = project_rankings(snapshot, top)
        table = _format_table(
            ["rank", "project", "name", "trust", "scale", "votes"],
            [
                [
                    str(i),
                    row["id"],
                    row["name"],
                    _fmt_float(row["trust"]),
                    str(row["trust_scale"]) if row["trust_scale"] is not None else "n/a",
                    str(row["votes"]),
                ]
                for i, row in enumerate(rows, start=1)
            ],
        )
    else:
        rows = developer_rankings(snapshot, top)
        table = _format_table(
            ["rank", "developer", "karma"],
            [
                [str(i), row["id"], _fmt_float(row["karma"])]
                for i, row in enumerate(rows, start=1)
            ],
        )
    click.echo(table)


@main.command("search")
@click.option("--index", "index_dir", required=True, envvar="JBENDER_INDEX",
              type=click.Path(exists=True, file_okay=False))
@click.option("--sort", default="relevance", show_default=True,
              type=click.Choice(list(search.SORT_MODES)))
@click.option("--alpha", default=0.5, show_default=True, type=float)
@click.option("--limit", default=20, show_default=True, type=click.IntRange(min=1))
@click.argument("query_text")
@_fail_on_error
def cli_search(index_dir: str, sort: str, alpha: float, limit: int, query_text: str) -> None:
    """Search the index; QUERY_TEXT uses the field:term grammar."""
    if not 0.0 <= alpha <= 1.0:
        raise JBenderError(f"alpha must be in [0, 1], got {alpha}")
    snapshot = _load_snapshot(index_dir)
    query = search.parse_query(query_text, sort=sort, alpha=alpha, limit=limit)
    results = search.execute_search(snapshot, query)
    total = len(search.match_candidates(snapshot, query))
    click.echo(f"{total} matches (showing {len(results)})")
    if results:
        table = _format_table(
            ["rank", "qualified_name", "kind", "project", "trust", "scale", "relevance"],
            [
                [
                    str(i),
                    r.entity.qualified_name,
                    r.entity.kind,
                    r.entity.project_id,
                    _fmt_float(r.trust),
                    str(r.trust_scale) if r.trust_scale is not None else "n/a",
                    _fmt_float(r.relevance),
                ]
                for i, r in enumerate(results, start=1)
            ],
        )
        click.echo(table)


@main.command("fit")
@click.option("--index", "index_dir", required=True, envvar="JBENDER_INDEX",
              type=click.Path(exists=True, file_okay=False))
@click.option("--series", "series_name", required=True,
              type=click.Choice(list(series.SERIES_NAMES)))
@_fail_on_error
def cli_fit(index_dir: str, series_name: str) -> None:
    """Fit a power law (log-log rank-frequency regression) to one series."""
    snapshot = _load_snapshot(index_dir)
    matrix = series.load_contributions(index_dir)
    samples = series.series_samples(snapshot, matrix, series_name)
    fit = trustcore.fit_power_law(samples)
    click.echo(
        f"series={series_name} n_points={fit.n_points} "
        f"slope={fit.slope:.6f} intercept={fit.intercept:.6f} abs_r={fit.abs_r:.6f}"
    )


@main.command("report")
@click.option("--index", "index_dir", required=True, envvar="JBENDER_INDEX",
              type=click.Path(exists=True, file_okay=False))
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@_fail_on_error
def cli_report(index_dir: str, out_dir: str) -> None:
    """Write ranking CSVs and power-law figures into a report directory."""
    snapshot = _load_snapshot(index_dir)
    matrix = series.load_contributions(index_dir)
    written, notes = report.write_report(snapshot, matrix, out_dir)
    for note in notes:
        click.echo(f"warning: {note}", err=True)
    for path in written:
        click.echo(f"wrote {path}")


@main.command("serve")
@click.option("--index", "index_dir", required=True, envvar="JBENDER_INDEX",
              type=click.Path(exists=True, file_okay=False))
@click.option("--port", default=8080, show_default=True, type=int)
@click.option("--static-dir", default=None, type=click.Path(exists=True, file_okay=False))
@_fail_on_error
def cli_serve(index_dir: str, port: int, static_dir: str | None) -> None:
    """Serve the HTTP JSON API (and optionally the web UI) for an index."""
    import uvicorn

    from .service import create_app

    snapshot = _load_snapshot(index_dir)
    matrix = series.load_contributions(index_dir)
    app = create_app(snapshot, contributions=matrix, static_dir=static_dir)
    try:
        uvicorn.run(app, host="127.0.0.1", port=port, log_level="warning")
    except OSError as exc:
        raise JBenderError(f"cannot bind port {port}: {exc}") from None


if __name__ == "__main__":
    main()
