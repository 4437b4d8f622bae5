from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bvpairing import MINUS, PLUS, STAR, Domain, PiecewiseAffine, SignedMeasure
from bvpairing.bvfunc import (
    Representative,
    approx_from_above,
    approx_from_below,
    extend_by_zero,
    extension_bound_check,
    gradient_measure,
    interior_traces,
    representative_value,
    step,
)
from bvpairing.measure import total_variation

from conftest import SYM, UNIT, const, piecewise, pw, up_step

dx = SignedMeasure.lebesgue
delta = SignedMeasure.dirac


class TestGradient:
    def test_identity(self):
        assert gradient_measure(PiecewiseAffine.affine(UNIT, 1)) == dx(UNIT)

    def test_pure_jump(self):
        assert gradient_measure(up_step()) == delta(UNIT, F(1, 2))

    def test_mixed(self):
        u = pw((-1, 0, -1, 0), (0, 1, 2, 1))
        expected = dx(SYM, -1, 0) + delta(SYM, 0, 2) + dx(SYM, 0, 1, -1)
        assert gradient_measure(u) == expected


class TestRepresentative:
    def test_continuity_point(self):
        assert representative_value(PiecewiseAffine.affine(UNIT, 2, 1), F(1, 4), MINUS) == F(3, 2)

    def test_up_jump(self):
        u = up_step()
        assert [representative_value(u, F(1, 2), r) for r in (PLUS, MINUS, STAR)] == [1, 0, F(1, 2)]

    def test_down_jump(self):
        assert representative_value(step(UNIT, F(1, 2), 3, 1), F(1, 2), PLUS) == 3

    def test_outside(self):
        with pytest.raises(ValueError):
            representative_value(up_step(), 1, PLUS)

    def test_parse(self):
        assert Representative.parse("Star") is STAR
        with pytest.raises(ValueError):
            Representative.parse("median")


class TestTraces:
    def test_affine(self):
        assert interior_traces(PiecewiseAffine.affine(UNIT, -1, 2)) == (2, 1)

    def test_constant(self):
        assert interior_traces(const(F(5, 3))) == (F(5, 3), F(5, 3))

    def test_step(self):
        assert interior_traces(up_step()) == (0, 1)


class TestExtension:
    ambient = Domain(-1, 2)

    def test_constant_one(self):
        ext = extend_by_zero(const(1), self.ambient)
        dv = gradient_measure(ext)
        assert dv.atom(0) == 1 and dv.atom(1) == -1
        assert extension_bound_check(const(1), ext) == (True, 2, 4)

    def test_zero(self):
        ext = extend_by_zero(const(0), self.ambient)
        assert gradient_measure(ext).is_zero()
        assert extension_bound_check(const(0))[1] == 0

    def test_identity(self):
        ext = extend_by_zero(PiecewiseAffine.affine(UNIT, 1), self.ambient)
        dv = gradient_measure(ext)
        assert dv.atom(0) == 0 and dv.atom(1) == -1

    def test_ambient_too_small(self):
        with pytest.raises(ValueError):
            extend_by_zero(const(1), Domain(0, 2))


class TestApproxFromAbove:
    def test_continuous_unchanged(self):
        u = PiecewiseAffine.polyline([0, F(1, 2), 1], [0, 1, 0])
        assert approx_from_above(u, 3) is u

    def test_up_step(self):
        # w = 2^-3 = 1/8 <= gap/3 = 1/6
        v = approx_from_above(up_step(), 3)
        expected = pw((0, F(3, 8), 0, 0), (F(3, 8), F(1, 2), 0, 1), (F(1, 2), 1, 1, 1))
        assert v.equivalent(expected)
        assert v.limit_left(F(1, 2)) == v.limit_right(F(1, 2)) == 1

    def test_down_step(self):
        v = approx_from_above(step(UNIT, F(1, 2), 1, 0), 4)
        expected = pw((0, F(1, 2), 1, 1), (F(1, 2), F(9, 16), 1, 0), (F(9, 16), 1, 0, 0))
        assert v.equivalent(expected)

    def test_gap_clipping(self):
        u = pw((0, F(1, 10), 0, 0), (F(1, 10), 1, 1, 1))
        v = approx_from_above(u, 1)
        assert v.knots[1] == F(1, 10) - F(1, 30)

    def test_ell_must_be_positive(self):
        with pytest.raises(ValueError):
            approx_from_above(up_step(), 0)


# -- properties --------------------------------------------------------------

@settings(max_examples=100, deadline=None)
@given(piecewise())
def test_fundamental_theorem(u):
    a, b = u.traces
    assert gradient_measure(u).total_mass() == b - a


@settings(max_examples=100, deadline=None)
@given(piecewise())
def test_total_variation_formula(u):
    expected = sum(abs(s) * (h - l) for (l, h, _, _), s in zip(u.pieces(), u.slopes))
    expected += sum(abs(r - l) for _, l, r in u.jumps())
    assert total_variation(gradient_measure(u)).total_mass() == expected


@settings(max_examples=100, deadline=None)
@given(piecewise())
def test_representative_order(u):
    for x in u.interior_knots:
        lo, mid, hi = (representative_value(u, x, r) for r in (MINUS, STAR, PLUS))
        assert lo <= mid <= hi and mid == (lo + hi) / 2
        jump = u.limit_left(x) != u.limit_right(x)
        assert (lo == hi) != jump


@settings(max_examples=100, deadline=None)
@given(piecewise(), st.integers(1, 12))
def test_approx_from_above(u, ell):
    v1, v = approx_from_above(u, 1), approx_from_above(u, ell)
    assert v.is_continuous
    assert v.le(v1) and u.le(v)


@settings(max_examples=100, deadline=None)
@given(piecewise(), st.sampled_from([F(1, 2), F(1, 8), F(1, 64)]))
def test_approx_from_below(u, w):
    v = approx_from_below(u, w)
    assert v.is_continuous and v.le(u)
    assert approx_from_below(u, 2 * w).le(v)


@settings(max_examples=100, deadline=None)
@given(piecewise())
def test_extension_bound(u):
    ok, mass, bound = extension_bound_check(u)
    assert ok and mass == abs(u.traces[0]) + abs(u.traces[1])
