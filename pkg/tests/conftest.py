from fractions import Fraction

import pytest

import mulseries as ms


@pytest.fixture(scope="session")
def point():
    """Maximal ideal of the smooth point: one blowup."""
    return ms.model_from_contact([1, 1])


@pytest.fixture(scope="session")
def cusp():
    """Chain of the (2,3)-cusp valuation: three centers, one satellite."""
    return ms.model_from_contact([2, 3, 6])


@pytest.fixture(scope="session")
def chain7():
    """Cusp chain plus one trailing free center: free terminal divisor."""
    return ms.model_from_contact([2, 3, 7])


@pytest.fixture(scope="session")
def two_stars():
    """Two-stage valuation with two star vertices."""
    return ms.model_from_contact([4, 6, 13, 27])


@pytest.fixture(scope="session")
def small_corpus():
    """Small sweep used by the unit tests; the acceptance suite runs its own."""
    return ms.corpus_models(3, 16)


def frac(text: str) -> Fraction:
    return Fraction(text)
