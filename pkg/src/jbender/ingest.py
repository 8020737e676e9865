"""Dataset loading: projects, developers, commits, votes, aliases, bots.

The dataset is a directory of CSV files (UTF-8, RFC-4180, strict headers):

    projects.csv    project_id,name,homepage,license,votes,user_count
    developers.csv  developer_id,display_name
    commits.csv     developer_id,project_id,commits
    aliases.csv     alias_id,canonical_id          (optional)
    bots.txt        one developer_id per line, '#' comments  (optional)

Loading resolves aliases first (summing merged commit counts), then strips
blacklisted bots (bot ids are themselves alias-resolved, so a bot listed
under an alias is still caught), then validates cross-references.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass, field
from pathlib import Path

from .errors import JBenderError
from .trustcore import ContributionMatrix, VoteVector

PROJECTS_FILE = "projects.csv"
DEVELOPERS_FILE = "developers.csv"
COMMITS_FILE = "commits.csv"
ALIASES_FILE = "aliases.csv"
BOTS_FILE = "bots.txt"

PROJECTS_COLUMNS = ["project_id", "name", "homepage", "license", "votes", "user_count"]
DEVELOPERS_COLUMNS = ["developer_id", "display_name"]
COMMITS_COLUMNS = ["developer_id", "project_id", "commits"]
ALIASES_COLUMNS = ["alias_id", "canonical_id"]


class MissingFileError(JBenderError):
    """A required dataset file is absent."""


class MalformedRowError(JBenderError):
    """A row fails the schema; carries file name and 1-based line number."""

    def __init__(self, file_name: str, line: int, reason: str):
        super().__init__(f"{file_name}:{line}: {reason}")
        self.file_name = file_name
        self.line = line


class DuplicateKeyError(JBenderError):
    """An id (or id pair) appears more than once."""


class AliasChainError(JBenderError):
    """An alias maps to itself or to another alias."""


class DanglingReferenceError(JBenderError):
    """A commit row references a developer or project that does not exist."""


class OrphanedProjectWarning(UserWarning):
    """Projects left without any contributor; they get no trustability."""


@dataclass
class ProjectMetadata:
    project_id: str
    name: str
    homepage: str
    license: str
    votes: int
    user_count: int
    developer_count: int = 0


@dataclass
class AliasMap:
    """Single-step alias resolution; chains are rejected at construction."""

    pairs: dict[str, str]

    def __post_init__(self) -> None:
        for alias, canonical in self.pairs.items():
            if alias == canonical:
                raise AliasChainError(f"alias {alias!r} maps to itself")
            if canonical in self.pairs:
                raise AliasChainError(
                    f"alias {alias!r} -> {canonical!r} chains into another alias"
                )
        self.pairs = dict(sorted(self.pairs.items()))

    def resolve(self, developer: str) -> str:
        return self.pairs.get(developer, developer)


@dataclass
class DatasetBundle:
    """Everything the pipeline needs, aliases resolved and bots removed."""

    matrix: ContributionMatrix
    votes: VoteVector
    metadata: dict[str, ProjectMetadata]
    developers: dict[str, str]
    bots: set[str] = field(default_factory=set)

    def orphaned_projects(self) -> list[str]:
        """Projects with metadata but no contributors (no trustability)."""
        return sorted(set(self.metadata) - set(self.matrix.project_ids))


def _read_csv_rows(path: Path, columns: list[str]) -> list[tuple[int, list[str]]]:
    """Strict CSV read: exact header, exact field count; (line, fields) rows."""
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise MalformedRowError(path.name, 1, "missing header row") from None
        if header != columns:
            raise MalformedRowError(
                path.name, 1, f"header must be exactly {','.join(columns)}"
            )
        rows = []
        for fields in reader:
            if not fields:
                continue
            if len(fields) != len(columns):
                raise MalformedRowError(
                    path.name,
                    reader.line_num,
                    f"expected {len(columns)} fields, got {len(fields)}",
                )
            rows.append((reader.line_num, fields))
    return rows


def _parse_count(value: str, file_name: str, line: int, column: str, minimum: int) -> int:
    try:
        count = int(value)
    except ValueError:
        raise MalformedRowError(file_name, line, f"{column} must be an integer, got {value!r}") from None
    if count < minimum:
        raise MalformedRowError(file_name, line, f"{column} must be >= {minimum}, got {count}")
    return count


def _require_id(value: str, file_name: str, line: int, column: str) -> str:
    if not value.strip():
        raise MalformedRowError(file_name, line, f"{column} must not be empty")
    return value.strip()


def resolve_aliases(matrix: ContributionMatrix, aliases: AliasMap) -> ContributionMatrix:
    """Fold alias rows into their canonical rows, summing commit counts."""
    merged: dict[tuple[str, str], int] = {}
    for (developer, project), commits in matrix.entries.items():
        key = (aliases.resolve(developer), project)
        merged[key] = merged.get(key, 0) + commits
    return ContributionMatrix(merged)


def apply_blacklist(matrix: ContributionMatrix, bots: set[str]) -> ContributionMatrix:
    """Drop all rows of blacklisted developers.

    Projects that lose every contributor are reported via an
    OrphanedProjectWarning; their trustability becomes undefined.
    """
    kept = {
        (developer, project): commits
        for (developer, project), commits in matrix.entries.items()
        if developer not in bots
    }
    result = ContributionMatrix(kept)
    orphaned = sorted(set(matrix.project_ids) - set(result.project_ids))
    if orphaned:
        warnings.warn(
            f"projects lost all contributors after bot removal: {', '.join(orphaned)}",
            OrphanedProjectWarning,
            stacklevel=2,
        )
    return result


def load_dataset(directory: str | Path) -> DatasetBundle:
    """Load and validate a dataset directory into a DatasetBundle."""
    root = Path(directory)
    for name in (PROJECTS_FILE, DEVELOPERS_FILE, COMMITS_FILE):
        if not (root / name).is_file():
            raise MissingFileError(f"missing required file: {root / name}")

    metadata: dict[str, ProjectMetadata] = {}
    votes: dict[str, int] = {}
    for line, fields in _read_csv_rows(root / PROJECTS_FILE, PROJECTS_COLUMNS):
        project_id = _require_id(fields[0], PROJECTS_FILE, line, "project_id")
        if project_id in metadata:
            raise DuplicateKeyError(f"duplicate project_id {project_id!r} in {PROJECTS_FILE}")
        vote_count = _parse_count(fields[4], PROJECTS_FILE, line, "votes", 0)
        user_count = _parse_count(fields[5], PROJECTS_FILE, line, "user_count", 0)
        metadata[project_id] = ProjectMetadata(
            project_id=project_id,
            name=fields[1],
            homepage=fields[2],
            license=fields[3],
            votes=vote_count,
            user_count=user_count,
        )
        votes[project_id] = vote_count
    metadata = dict(sorted(metadata.items()))

    developers: dict[str, str] = {}
    for line, fields in _read_csv_rows(root / DEVELOPERS_FILE, DEVELOPERS_COLUMNS):
        developer_id = _require_id(fields[0], DEVELOPERS_FILE, line, "developer_id")
        if developer_id in developers:
            raise DuplicateKeyError(
                f"duplicate developer_id {developer_id!r} in {DEVELOPERS_FILE}"
            )
        developers[developer_id] = fields[1]
    developers = dict(sorted(developers.items()))

    alias_pairs: dict[str, str] = {}
    if (root / ALIASES_FILE).is_file():
        for line, fields in _read_csv_rows(root / ALIASES_FILE, ALIASES_COLUMNS):
            alias_id = _require_id(fields[0], ALIASES_FILE, line, "alias_id")
            canonical_id = _require_id(fields[1], ALIASES_FILE, line, "canonical_id")
            if alias_id in alias_pairs:
                raise DuplicateKeyError(f"duplicate alias_id {alias_id!r} in {ALIASES_FILE}")
            alias_pairs[alias_id] = canonical_id
    aliases = AliasMap(alias_pairs)

    bots: set[str] = set()
    if (root / BOTS_FILE).is_file():
        with open(root / BOTS_FILE, encoding="utf-8") as handle:
            for raw in handle:
                stripped = raw.strip()
                if stripped and not stripped.startswith("#"):
                    bots.add(aliases.resolve(stripped))

    raw_entries: dict[tuple[str, str], int] = {}
    entry_lines: dict[tuple[str, str], int] = {}
    for line, fields in _read_csv_rows(root / COMMITS_FILE, COMMITS_COLUMNS):
        developer_id = _require_id(fields[0], COMMITS_FILE, line, "developer_id")
        project_id = _require_id(fields[1], COMMITS_FILE, line, "project_id")
        commits = _parse_count(fields[2], COMMITS_FILE, line, "commits", 1)
        key = (developer_id, project_id)
        if key in raw_entries:
            raise DuplicateKeyError(
                f"duplicate (developer_id, project_id) pair {key!r} in {COMMITS_FILE}"
            )
        raw_entries[key] = commits
        entry_lines[key] = line

    # Aliases first, then bots, then cross-reference validation. Line numbers
    # survive the merge by keeping the first contributing row per merged key.
    merged_lines: dict[tuple[str, str], int] = {}
    for (developer, project), line in sorted(entry_lines.items(), key=lambda kv: kv[1]):
        key = (aliases.resolve(developer), project)
        merged_lines.setdefault(key, line)

    matrix = ContributionMatrix(raw_entries)
    matrix = resolve_aliases(matrix, aliases)
    matrix = apply_blacklist(matrix, bots)

    for (developer, project), _ in matrix.entries.items():
        line = merged_lines[(developer, project)]
        if developer not in developers:
            raise DanglingReferenceError(
                f"{COMMITS_FILE}:{line}: unknown developer {developer!r}"
            )
        if project not in metadata:
            raise DanglingReferenceError(
                f"{COMMITS_FILE}:{line}: unknown project {project!r}"
            )

    for project in metadata.values():
        project.developer_count = len(matrix.contributors_of(project.project_id))

    no_contributors = sorted(set(metadata) - set(matrix.project_ids))
    raw_projects = {proj for _, proj in raw_entries}
    no_commits_at_all = [p for p in no_contributors if p not in raw_projects]
    if no_commits_at_all:
        warnings.warn(
            f"projects with no contributors in the dataset: {', '.join(no_commits_at_all)}",
            OrphanedProjectWarning,
            stacklevel=2,
        )

    return DatasetBundle(
        matrix=matrix,
        votes=VoteVector(votes),
        metadata=metadata,
        developers=developers,
        bots=bots,
    )


def write_dataset(bundle: DatasetBundle, directory: str | Path) -> None:
    """Write a bundle back to CSV (debug facility; reload yields an equal bundle).

    Aliases are already resolved and bot rows already removed, so no
    aliases.csv is emitted and bots.txt only preserves the blacklist ids.
    """
    root = Path(directory)
    root.mkdir(parents=True, exist_ok=True)

    with open(root / PROJECTS_FILE, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(PROJECTS_COLUMNS)
        for project_id, meta in sorted(bundle.metadata.items()):
            writer.writerow(
                [project_id, meta.name, meta.homepage, meta.license, meta.votes, meta.user_count]
            )

    with open(root / DEVELOPERS_FILE, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(DEVELOPERS_COLUMNS)
        for developer_id, display_name in sorted(bundle.developers.items()):
            writer.writerow([developer_id, display_name])

    with open(root / COMMITS_FILE, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(COMMITS_COLUMNS)
        for (developer, project), commits in sorted(bundle.matrix.entries.items()):
            writer.writerow([developer, project, commits])

    if bundle.bots:
        with open(root / BOTS_FILE, "w", encoding="utf-8", newline="") as handle:
            for bot in sorted(bundle.bots):
                handle.write(f"{bot}\n")
