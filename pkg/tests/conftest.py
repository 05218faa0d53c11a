from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from arcnerve import Arc, ArcCollection
from arcnerve.homology import set_caps

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@st.composite
def grid_arcs(draw, max_n: int = 8):
    """Arcs on a small rational grid so endpoints coincide often."""
    q = draw(st.sampled_from([2, 3, 4, 6, 8, 12]))
    n = draw(st.integers(1, max_n))
    arcs = []
    for _ in range(n):
        start = Fraction(draw(st.integers(0, 2 * q - 1)), 2 * q)
        length = Fraction(draw(st.integers(0, 2 * q)), 2 * q)
        arcs.append(Arc(start, length))
    return ArcCollection(arcs)


@pytest.fixture
def big_caps():
    old = set_caps(12, 11)
    yield
    set_caps(old["vertices"], old["dim"])
