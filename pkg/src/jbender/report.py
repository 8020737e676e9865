"""Report rendering: ranking tables as CSV plus power-law figures as PNG.

Used by `jbender report`; writes everything into one output directory:

    rankings_projects.csv    rank,id,name,trust,trust_scale,votes
    rankings_developers.csv  rank,id,karma
    powerlaw_fits.csv        series,n_points,slope,intercept,abs_r
    powerlaw_<series>.png    log-log rank-frequency scatter with fitted line
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .codeindex import IndexSnapshot
from .series import SERIES_NAMES, SeriesUnavailableError, series_samples
from .service import developer_rankings, project_rankings
from .trustcore import (
    ContributionMatrix,
    DegenerateDataError,
    InsufficientDataError,
    PowerLawFit,
    fit_power_law,
)


def _fmt(value: float | None, digits: int = 4) -> str:
    return "n/a" if value is None else f"{value:.{digits}f}"


def write_rankings_csv(snapshot: IndexSnapshot, out_dir: Path) -> list[Path]:
    paths = []
    projects_path = out_dir / "rankings_projects.csv"
    with open(projects_path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["rank", "id", "name", "trust", "trust_scale", "votes"])
        rows = project_rankings(snapshot, top=len(snapshot.metadata) or 1)
        for rank, row in enumerate(rows, start=1):
            writer.writerow(
                [
                    rank,
                    row["id"],
                    row["name"],
                    _fmt(row["trust"]),
                    row["trust_scale"] if row["trust_scale"] is not None else "n/a",
                    row["votes"],
                ]
            )
    paths.append(projects_path)

    developers_path = out_dir / "rankings_developers.csv"
    with open(developers_path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["rank", "id", "karma"])
        rows = developer_rankings(snapshot, top=len(snapshot.karma.karma) or 1)
        for rank, row in enumerate(rows, start=1):
            writer.writerow([rank, row["id"], _fmt(row["karma"])])
    paths.append(developers_path)
    return paths


def plot_powerlaw(samples: list[float], fit: PowerLawFit, title: str, path: Path) -> None:
    """Rank-frequency scatter on log-log axes with the fitted line."""
    values = sorted((s for s in samples if s > 0), reverse=True)
    ranks = range(1, len(values) + 1)
    fig, ax = plt.subplots(figsize=(5.0, 4.0))
    ax.loglog(ranks, values, "o", markersize=4, label="samples")
    fitted = [math.exp(fit.intercept + fit.slope * math.log(r)) for r in ranks]
    ax.loglog(ranks, fitted, "-", label=f"slope {fit.slope:.3f}, |r| {fit.abs_r:.3f}")
    ax.set_xlabel("rank")
    ax.set_ylabel("value")
    ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report(
    snapshot: IndexSnapshot,
    contributions: ContributionMatrix | None,
    out_dir: str | Path,
) -> tuple[list[Path], list[str]]:
    """Write all report files; returns (written paths, warnings)."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = write_rankings_csv(snapshot, out)
    notes: list[str] = []

    fits_path = out / "powerlaw_fits.csv"
    with open(fits_path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["series", "n_points", "slope", "intercept", "abs_r"])
        for series in SERIES_NAMES:
            try:
                samples = series_samples(snapshot, contributions, series)
                fit = fit_power_law(samples)
            except (SeriesUnavailableError, InsufficientDataError, DegenerateDataError) as exc:
                notes.append(f"skipping series {series}: {exc}")
                continue
            writer.writerow(
                [series, fit.n_points, f"{fit.slope:.6f}", f"{fit.intercept:.6f}", f"{fit.abs_r:.6f}"]
            )
            figure_path = out / f"powerlaw_{series}.png"
            plot_powerlaw(samples, fit, series.replace("_", " "), figure_path)
            written.append(figure_path)
    written.insert(2, fits_path)
    return written, notes
