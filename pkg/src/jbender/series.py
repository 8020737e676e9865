"""Sample series for power-law fitting, pulled from an index directory.

The vote series lives in the snapshot metadata; the two matrix series need
the contribution data, which `jbender ingest` leaves as a CSV copy under
`<index>/dataset/`.
"""

from __future__ import annotations

import warnings
from pathlib import Path

from .codeindex import IndexSnapshot
from .errors import JBenderError
from .ingest import OrphanedProjectWarning, load_dataset
from .trustcore import ContributionMatrix

SERIES_NAMES = ("votes", "commits_per_dev_project", "projects_per_dev")

DATASET_SUBDIR = "dataset"


class UnknownSeriesError(JBenderError):
    """Series name is not one of the supported sample series."""


class SeriesUnavailableError(JBenderError):
    """The series needs contribution data that the index does not carry."""


def load_contributions(index_dir: str | Path) -> ContributionMatrix | None:
    """The contribution matrix from the index's dataset copy, if present."""
    dataset_dir = Path(index_dir) / DATASET_SUBDIR
    if not dataset_dir.is_dir():
        return None
    # Orphaned-project warnings were already reported at ingest time.
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", OrphanedProjectWarning)
        return load_dataset(dataset_dir).matrix


def series_samples(
    snapshot: IndexSnapshot,
    matrix: ContributionMatrix | None,
    series: str,
) -> list[float]:
    """Raw sample values for one series (zeros included; fitting drops them)."""
    if series == "votes":
        return [float(meta.votes) for meta in snapshot.metadata.values()]
    if series not in SERIES_NAMES:
        raise UnknownSeriesError(
            f"unknown series {series!r} (expected one of {', '.join(SERIES_NAMES)})"
        )
    if matrix is None:
        raise SeriesUnavailableError(
            f"series {series!r} needs the contribution data; "
            f"re-run ingest so the index contains its dataset copy"
        )
    if series == "commits_per_dev_project":
        return [float(c) for c in matrix.entries.values()]
    return [
        float(len(matrix.projects_of(dev))) for dev in matrix.developer_ids
    ]
