import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ftcrit import load_casestudy, load_ftdl  # noqa: E402

CORPUS_DIR = Path(__file__).parent / "data" / "corpus"


def load_corpus():
    return {p.stem: load_ftdl(p) for p in sorted(CORPUS_DIR.glob("*.ftdl"))}


CORPUS = load_corpus()
NOT_FREE = {name: tree for name, tree in CORPUS.items() if not tree.has_not}


@pytest.fixture(scope="session")
def casestudy():
    return load_casestudy()


@pytest.fixture(scope="session")
def corpus():
    return CORPUS
