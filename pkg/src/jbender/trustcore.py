"""Karma and trustability scoring over contribution and vote data.

Pure computation, no I/O. A developer's karma is the vote-weighted,
contribution-weighted sum over the projects they committed to; a project's
trustability is the contribution-weighted average of its contributors'
karma. Both follow the smoothed-log weighting described below.

Smoothing: every logarithm is L(x) = log(1 + x) so that a developer with a
single project (project frequency 1) and a project with zero votes are both
well-defined. The log base only rescales scores by a positive constant, so
rankings are base-invariant; natural log is the default.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import JBenderError


class UnknownDeveloperError(JBenderError):
    """Developer id has no entries in the contribution matrix."""


class UnknownProjectError(JBenderError):
    """Project id is not present in the matrix or table at hand."""


class DegenerateProjectError(JBenderError):
    """A project's contribution weights sum to zero and cannot be normalized."""


class ConsistencyError(JBenderError):
    """Matrix and vote vector disagree about the project universe."""


class InsufficientDataError(JBenderError):
    """Too few positive samples to fit (need at least two)."""


class DegenerateDataError(JBenderError):
    """All samples equal; the log-log correlation is undefined."""


def smoothed_log(x: float, base: float = math.e) -> float:
    """log_base(1 + x); the smoothing applied to commits, votes and frequencies."""
    return math.log1p(x) / math.log(base)


class ContributionMatrix:
    """Sparse developer x project commit counts.

    Zero counts are represented by absence; every stored count is >= 1.
    Iteration over developers and projects is always in sorted-id order.
    """

    def __init__(self, entries: dict[tuple[str, str], int]):
        for (dev, proj), commits in entries.items():
            if not isinstance(commits, int) or commits < 1:
                raise ValueError(
                    f"commit count for ({dev!r}, {proj!r}) must be a positive "
                    f"integer, got {commits!r}"
                )
        self.entries: dict[tuple[str, str], int] = dict(sorted(entries.items()))
        self.developer_ids: tuple[str, ...] = tuple(sorted({d for d, _ in entries}))
        self.project_ids: tuple[str, ...] = tuple(sorted({p for _, p in entries}))
        rows: dict[str, list[tuple[str, int]]] = {d: [] for d in self.developer_ids}
        cols: dict[str, list[tuple[str, int]]] = {p: [] for p in self.project_ids}
        for (dev, proj), commits in self.entries.items():
            rows[dev].append((proj, commits))
            cols[proj].append((dev, commits))
        self._rows = rows
        self._cols = cols

    def commits(self, developer: str, project: str) -> int:
        return self.entries.get((developer, project), 0)

    def projects_of(self, developer: str) -> list[tuple[str, int]]:
        """(project, commits) pairs for a developer, sorted by project id."""
        return list(self._rows.get(developer, []))

    def contributors_of(self, project: str) -> list[tuple[str, int]]:
        """(developer, commits) pairs for a project, sorted by developer id."""
        return list(self._cols.get(project, []))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ContributionMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __repr__(self) -> str:
        return (
            f"ContributionMatrix({len(self.developer_ids)} developers, "
            f"{len(self.project_ids)} projects, {len(self.entries)} entries)"
        )


@dataclass
class VoteVector:
    """Per-project user-vote counts; covers at least every matrix project."""

    votes: dict[str, int]

    def __post_init__(self) -> None:
        for proj, count in self.votes.items():
            if not isinstance(count, int) or count < 0:
                raise ValueError(f"votes for {proj!r} must be a non-negative integer")
        self.votes = dict(sorted(self.votes.items()))


@dataclass
class KarmaTable:
    """Computed karma per developer; keys are exactly the matrix developers."""

    karma: dict[str, float]


@dataclass
class TrustTable:
    """Computed trustability per project; keys are exactly the matrix projects."""

    trust: dict[str, float]


@dataclass(frozen=True)
class PowerLawFit:
    """Least-squares line through (log rank, log value) of rank-frequency data."""

    slope: float
    intercept: float
    abs_r: float
    n_points: int


def developer_project_frequency(matrix: ContributionMatrix, developer: str) -> int:
    """Number of distinct projects the developer contributed to (0 if unknown)."""
    return len(matrix.projects_of(developer))


def contributor_karma(
    matrix: ContributionMatrix,
    votes: VoteVector,
    developer: str,
    log_base: float = math.e,
) -> float:
    """Karma: sum over the developer's projects of L(commits)/L(frequency) * L(votes)."""
    contributed = matrix.projects_of(developer)
    if not contributed:
        raise UnknownDeveloperError(f"unknown developer: {developer!r}")
    frequency = len(contributed)
    denom = smoothed_log(frequency, log_base)
    total = 0.0
    for project, commits in contributed:
        if project not in votes.votes:
            raise ConsistencyError(f"no vote entry for project {project!r}")
        weight = smoothed_log(commits, log_base) / denom
        total += weight * smoothed_log(votes.votes[project], log_base)
    return total


def project_trustability(
    matrix: ContributionMatrix,
    karma: KarmaTable,
    project: str,
    log_base: float = math.e,
) -> float:
    """Trustability: contribution-weighted average of the contributors' karma.

    The weights L(commits) / sum of L(commits) over contributors add up to 1,
    so the result lies between the smallest and largest contributor karma.
    """
    contributors = matrix.contributors_of(project)
    if not contributors:
        raise UnknownProjectError(f"unknown project: {project!r}")
    denom = sum(smoothed_log(commits, log_base) for _, commits in contributors)
    if denom <= 0.0:
        raise DegenerateProjectError(
            f"project {project!r} has zero total contribution weight"
        )
    total = 0.0
    for developer, commits in contributors:
        weight = smoothed_log(commits, log_base) / denom
        total += weight * karma.karma[developer]
    return total


def compute_all(
    matrix: ContributionMatrix,
    votes: VoteVector,
    log_base: float = math.e,
) -> tuple[KarmaTable, TrustTable]:
    """Karma for every developer and trustability for every project.

    Summation runs in sorted-id order, so results are reproducible
    bit-for-bit and identical to the per-item operations.
    """
    for project in matrix.project_ids:
        if project not in votes.votes:
            raise ConsistencyError(f"no vote entry for project {project!r}")
    karma = KarmaTable(
        {
            dev: contributor_karma(matrix, votes, dev, log_base)
            for dev in matrix.developer_ids
        }
    )
    trust = TrustTable(
        {
            proj: project_trustability(matrix, karma, proj, log_base)
            for proj in matrix.project_ids
        }
    )
    return karma, trust


def map_to_trust_scale(trust: TrustTable, project: str) -> int:
    """Rank-percentile decile of a project's trustability, as an int in 1..10.

    Ties share the higher rank count, so equal projects get equal (and never
    penalized) scale values; the maximum always maps to 10.
    """
    if project not in trust.trust:
        raise UnknownProjectError(f"unknown project: {project!r}")
    value = trust.trust[project]
    total = len(trust.trust)
    rank = sum(1 for other in trust.trust.values() if other <= value)
    scale = math.ceil(10 * rank / total)
    return min(10, max(1, scale))


def fit_power_law(samples: list[float]) -> PowerLawFit:
    """Fit a line to (log rank, log value) of the samples sorted descending.

    Only positive samples are fitted. Returns the slope (the power-law
    exponent, negative for decaying data), the intercept, and the absolute
    Pearson correlation of the log-log points.
    """
    positive = [float(s) for s in samples if s > 0]
    if len(positive) < 2:
        raise InsufficientDataError(
            f"need at least 2 positive samples, got {len(positive)}"
        )
    if min(positive) == max(positive):
        raise DegenerateDataError("all samples equal; correlation undefined")
    positive.sort(reverse=True)
    points = [
        (math.log(rank), math.log(value))
        for rank, value in enumerate(positive, start=1)
    ]
    n = len(points)
    mean_x = sum(x for x, _ in points) / n
    mean_y = sum(y for _, y in points) / n
    sxx = sum((x - mean_x) ** 2 for x, _ in points)
    syy = sum((y - mean_y) ** 2 for _, y in points)
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in points)
    slope = sxy / sxx
    intercept = mean_y - slope * mean_x
    abs_r = min(1.0, abs(sxy) / math.sqrt(sxx * syy))
    return PowerLawFit(slope=slope, intercept=intercept, abs_r=abs_r, n_points=n)
