import pytest

from corpus import corpus


@pytest.fixture(scope="session")
def random_corpus():
    return corpus(220, seed=2024)
