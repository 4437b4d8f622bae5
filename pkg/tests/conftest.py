from fractions import Fraction

import pytest
from hypothesis import strategies as st

from bvpairing import Domain, PiecewiseAffine
from bvpairing.bvfunc import step

F = Fraction
UNIT = Domain(0, 1)
SYM = Domain(-1, 1)


def pw(*pieces):
    """Shorthand: pw((0, 1, 0, 1), ...) with (lo, hi, value at lo, value at hi)."""
    return PiecewiseAffine.from_pieces(pieces)


def const(c, domain=UNIT):
    return PiecewiseAffine.constant(domain, c)


def spike():
    return pw((-1, 0, -1, 0), (0, 1, 1, 0))


def up_step():
    return step(UNIT, F(1, 2), 0, 1)


def sign_field():
    """1 on (0,1/2), -1 on (1/2,1)."""
    return step(UNIT, F(1, 2), 1, -1)


rationals = st.fractions(min_value=-3, max_value=3, max_denominator=8)


@st.composite
def piecewise(draw, domain=UNIT, max_pieces=4, continuous=False):
    n = draw(st.integers(1, max_pieces))
    grid = sorted(draw(st.sets(st.integers(1, 11), min_size=n - 1, max_size=n - 1)))
    inner = [domain.a + domain.length * Fraction(k, 12) for k in grid]
    knots = [domain.a, *inner, domain.b]
    pieces, prev = [], None
    for l, h in zip(knots, knots[1:]):
        lo = prev if continuous and prev is not None else draw(rationals)
        hi = draw(rationals)
        pieces.append((l, h, lo, hi))
        prev = hi
    return PiecewiseAffine.from_pieces(pieces)


@pytest.fixture
def unit():
    return UNIT
