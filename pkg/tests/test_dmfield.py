import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bvpairing import PiecewiseAffine, SignedMeasure
from bvpairing.dmfield import (
    dimension_constant,
    div_bound_check,
    divergence,
    is_nonincreasing,
    normal_trace,
    sinfty_check,
)
from bvpairing.measure import total_variation

from conftest import UNIT, const, piecewise, sign_field

dx = SignedMeasure.lebesgue
delta = SignedMeasure.dirac
decreasing = PiecewiseAffine.affine(UNIT, -2, 1)  # 1 - 2x


class TestDivergence:
    def test_affine(self):
        assert divergence(decreasing) == dx(UNIT, value=-2)

    def test_step(self):
        assert divergence(sign_field()) == delta(UNIT, F(1, 2), -2)

    def test_constant(self):
        assert divergence(const(F(3, 7))).is_zero()


class TestNormalTrace:
    def test_plus_one(self):
        assert normal_trace(const(1)) == (1, -1)

    def test_minus_one(self):
        assert normal_trace(const(-1)) == (-1, 1)

    def test_decreasing(self):
        assert normal_trace(decreasing) == (1, 1)


class TestSinfty:
    def test_cases(self):
        assert sinfty_check(const(1))
        assert sinfty_check(PiecewiseAffine.affine(UNIT, 2, -1))
        assert not sinfty_check(const(F(3, 2)))


def _omega(n):
    return math.pi ** (n / 2) / math.gamma(n / 2 + 1)


class TestDimensionConstant:
    def test_low_dimensions(self):
        assert dimension_constant(1) == (2, 0)
        assert dimension_constant(2) == (1, 1)
        assert dimension_constant(3) == (4, 0)

    @pytest.mark.parametrize("n", range(1, 25))
    def test_against_gamma_oracle(self, n):
        assert float(dimension_constant(n)) == pytest.approx(n * _omega(n) / _omega(n - 1), rel=1e-12)

    def test_zero_dimension(self):
        with pytest.raises(ValueError):
            dimension_constant(0)

    def test_irrational_has_no_rational_value(self):
        with pytest.raises(ValueError):
            dimension_constant(2).rational()


class TestDivBound:
    def test_decreasing(self):
        assert div_bound_check(decreasing) == (True, 2, 4)

    def test_zero(self):
        assert div_bound_check(const(0)) == (True, 0, 0)

    def test_step_witness(self):
        assert div_bound_check(sign_field()) == (True, 2, 4)

    def test_increasing_rejected(self):
        with pytest.raises(ValueError):
            div_bound_check(PiecewiseAffine.affine(UNIT, 1))


@settings(max_examples=100, deadline=None)
@given(piecewise())
def test_trace_bound(sigma):
    assert max(map(abs, normal_trace(sigma))) <= sigma.sup_norm


@settings(max_examples=100, deadline=None)
@given(piecewise())
def test_divergence_mass(sigma):
    a, b = sigma.traces
    assert divergence(sigma).total_mass() == b - a


@settings(max_examples=100, deadline=None)
@given(piecewise())
def test_nonincreasing_iff_nonpositive_divergence(sigma):
    assert is_nonincreasing(sigma) == (-divergence(sigma)).is_nonnegative()


@settings(max_examples=100, deadline=None)
@given(piecewise(), st.sets(st.fractions(0, 1, max_denominator=30), max_size=4))
def test_divergence_is_absolutely_continuous_wrt_counting(sigma, points):
    # atoms of Div sigma sit on the finite knot set, so a set charged by |Div sigma|
    # has positive counting measure; the empty set is never charged
    tv = total_variation(divergence(sigma))
    assert {x for x, _ in tv.atoms} <= set(sigma.interior_knots)
    off_knots = [p for p in points if p not in sigma.knots]
    assert all(tv.atom(p) == 0 for p in off_knots)
