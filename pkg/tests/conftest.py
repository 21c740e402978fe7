import pytest

from magmadual.golden import load_corpus
from magmadual.table import make_table


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def z3(corpus):
    """Order-3 worked examples z1..z8, keyed by number."""
    return {int(k[1:]): t for k, (t, _) in corpus["n3"].items()}


@pytest.fixture(scope="session")
def z4(corpus):
    return {int(k[1:]): t for k, (t, _) in corpus["n4"].items()}


@pytest.fixture
def trivial():
    return make_table(1, [[0]])
