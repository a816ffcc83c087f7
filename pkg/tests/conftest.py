import pytest

from alphacf.corpus import alpha_grid, rational_corpus, surd_corpus


@pytest.fixture(scope="session")
def small_rationals():
    return rational_corpus(100, qmax=10 ** 4, seed=1)


@pytest.fixture(scope="session")
def surd_samples():
    return surd_corpus(20)


@pytest.fixture(scope="session")
def alphas():
    return alpha_grid(20)
