import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from jbender.codeindex import build_index, extract_project
from jbender.ingest import load_dataset
from jbender.trustcore import compute_all

DATA_DIR = Path(__file__).parent / "data"
META_FIXTURE = DATA_DIR / "meta_fixture"
CORPUS_FIXTURE = DATA_DIR / "corpus_fixture"
GOLDEN_DIR = Path(__file__).parent / "golden"

FIXTURE_PROJECTS = ("junit", "coltk", "textutils")


@pytest.fixture(scope="session")
def fixture_bundle():
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return load_dataset(META_FIXTURE)


@pytest.fixture(scope="session")
def fixture_snapshot(fixture_bundle):
    """Index over the whole corpus fixture with real trust tables."""
    karma, trust = compute_all(fixture_bundle.matrix, fixture_bundle.votes)
    entities = []
    for project in FIXTURE_PROJECTS:
        for entity in extract_project(project, CORPUS_FIXTURE / project):
            entity.entity_id = len(entities)
            entities.append(entity)
    return build_index(entities, karma, trust, fixture_bundle.metadata)
