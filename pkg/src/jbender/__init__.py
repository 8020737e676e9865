"""jbender: trust-ranked code search.

Computes per-developer karma and per-project trustability from contribution
and vote data, indexes source code structurally, and serves search results
annotated and orderable by trustability.
"""

from .errors import JBenderError
from .trustcore import (
    ContributionMatrix,
    KarmaTable,
    PowerLawFit,
    TrustTable,
    VoteVector,
    compute_all,
    contributor_karma,
    developer_project_frequency,
    fit_power_law,
    map_to_trust_scale,
    project_trustability,
)
from .ingest import AliasMap, DatasetBundle, ProjectMetadata, load_dataset
from .extract import CodeEntity, extract_entities
from .codeindex import IndexSnapshot, build_index, load_index, persist_index, tokenize
from .search import Query, SearchResult, execute_search, order_results, parse_query, score_relevance

__version__ = "0.1.0"

__all__ = [
    "JBenderError",
    "ContributionMatrix",
    "VoteVector",
    "KarmaTable",
    "TrustTable",
    "PowerLawFit",
    "developer_project_frequency",
    "contributor_karma",
    "project_trustability",
    "compute_all",
    "map_to_trust_scale",
    "fit_power_law",
    "AliasMap",
    "DatasetBundle",
    "ProjectMetadata",
    "load_dataset",
    "CodeEntity",
    "extract_entities",
    "IndexSnapshot",
    "build_index",
    "persist_index",
    "load_index",
    "tokenize",
    "Query",
    "SearchResult",
    "parse_query",
    "score_relevance",
    "execute_search",
    "order_results",
    "__version__",
]
