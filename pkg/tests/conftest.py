import pytest

from wordeq import Morphism, Word, parse_system


def eqs(text):
    """Equations from a newline-separated block, names discarded."""
    return parse_system(text)[0]


def eq1(text):
    out = eqs(text)
    assert len(out) == 1
    return out[0]


def morphism(*words):
    return Morphism(tuple(Word(tuple(w)) for w in words))


@pytest.fixture
def sample_pair():
    """A cyclic-shift equation and a longer companion with shared solutions."""
    return eqs("x1 x2 x3 = x3 x1 x2\nx1 x2 x1 x3 x2 x3 = x3 x1 x3 x2 x1 x2")
