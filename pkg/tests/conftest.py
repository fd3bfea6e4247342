from __future__ import annotations

import pytest

from emonto.build import BuildConfig, run_build
from emonto.hierarchy import EmotionHierarchy, EmotionNode, Tier, data_path, load_canonical
from emonto.vocabulary import FileLexicon


@pytest.fixture(scope="session")
def hierarchy() -> EmotionHierarchy:
    return load_canonical()


@pytest.fixture(scope="session")
def lexicon() -> FileLexicon:
    return FileLexicon.from_file(data_path("lexicon.tsv"))


@pytest.fixture(scope="session")
def built():
    """(ontology, report, owl document) for the bundled data set."""
    return run_build(BuildConfig())


@pytest.fixture(scope="session")
def ontology(built):
    return built[0]


@pytest.fixture(scope="session")
def owl_doc(built) -> str:
    return built[2]


@pytest.fixture(scope="session")
def owl_file(tmp_path_factory, owl_doc):
    path = tmp_path_factory.mktemp("owl") / "canonical.owl"
    path.write_text(owl_doc, encoding="utf-8")
    return path


def make_hierarchy(rows) -> EmotionHierarchy:
    """Toy hierarchy from (tier, name, parent-or-None) rows."""
    return EmotionHierarchy(
        EmotionNode(name, Tier(tier), "", parent) for tier, name, parent in rows
    )


@pytest.fixture
def toy_hierarchy() -> EmotionHierarchy:
    return make_hierarchy(
        [
            ("primary", "Alpha", None),
            ("secondary", "Charlie", "Alpha"),
            ("tertiary", "Echo", "Charlie"),
            ("tertiary", "Foxtrot", "Charlie"),
            ("primary", "Bravo", None),
            ("secondary", "Delta", "Bravo"),
        ]
    )
