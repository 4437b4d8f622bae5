from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from bvpairing import MINUS, PLUS, STAR, PiecewiseAffine, Region, SignedMeasure, TestFunction
from bvpairing.measure import evaluate, restrict
from bvpairing.pairing import (
    boundary_div_extension,
    boundary_trace_term,
    dirichlet_gradient,
    modified_boundary_formula,
    pair_global,
    pair_global_def_eval,
    pair_local,
    pair_local_def_eval,
    pair_modified,
)

from conftest import UNIT, const, piecewise, sign_field, up_step

CLOSED = UNIT.closure()
dx = SignedMeasure.lebesgue
delta = SignedMeasure.dirac
identity = PiecewiseAffine.affine(UNIT, 1)
zero = const(0)
REPS = (PLUS, MINUS, STAR)


class TestPairLocal:
    def test_trivial(self):
        assert pair_local(const(F(1, 2)), identity, PLUS) == dx(UNIT, value=F(1, 2))

    @pytest.mark.parametrize("rep", REPS)
    def test_constant_field_on_jump(self, rep):
        assert pair_local(const(F(2, 3)), up_step(), rep) == delta(UNIT, F(1, 2), F(2, 3))

    def test_representative_dependence(self):
        u, sigma = up_step(), sign_field()
        assert pair_local(sigma, u, PLUS) == delta(UNIT, F(1, 2), 1)
        assert pair_local(sigma, u, MINUS) == delta(UNIT, F(1, 2), -1)
        assert pair_local(sigma, u, STAR).is_zero()


class TestDefEval:
    tent = TestFunction.tent(UNIT, 0, F(1, 2), 1)

    def test_tent_on_identity(self):
        assert pair_local_def_eval(const(1), identity, PLUS, self.tent) == F(1, 2)

    def test_tent_on_step(self):
        assert pair_local_def_eval(sign_field(), up_step(), PLUS, self.tent) == 1

    def test_requires_vanishing(self):
        with pytest.raises(ValueError):
            pair_local_def_eval(const(1), identity, PLUS, TestFunction(const(1)))


class TestPairGlobal:
    def test_constant_u(self):
        s = F(3, 4)
        expected = delta(CLOSED, 0, s) + delta(CLOSED, 1, -s)
        assert pair_global(const(s), const(1), zero, PLUS) == expected

    def test_no_trace_difference(self):
        u = PiecewiseAffine.polyline([0, F(1, 3), 1], [0, 2, 1])
        sigma = PiecewiseAffine.affine(UNIT, -1, F(1, 2))
        assert pair_global(sigma, u, u, STAR) == pair_local(sigma, u, STAR).closure()

    def test_step_with_zero_datum(self):
        assert pair_global(const(1), up_step(), zero, PLUS) == delta(CLOSED, F(1, 2)) - delta(CLOSED, 1)

    def test_discontinuous_datum(self):
        with pytest.raises(ValueError):
            pair_global(const(1), identity, up_step(), PLUS)


class TestDirichletGradient:
    def test_constant(self):
        assert dirichlet_gradient(const(1), zero) == delta(CLOSED, 0) - delta(CLOSED, 1)

    def test_equal_datum(self):
        assert dirichlet_gradient(identity, identity) == dx(CLOSED)

    def test_identity(self):
        assert dirichlet_gradient(identity, zero) == dx(CLOSED) - delta(CLOSED, 1)


class TestBoundaryExtension:
    def test_plus(self):
        assert boundary_div_extension(const(1)) == delta(CLOSED, 1, 2)

    def test_minus(self):
        assert boundary_div_extension(const(-1)) == delta(CLOSED, 0, 2)

    def test_inward_traces_one(self):
        assert boundary_div_extension(PiecewiseAffine.affine(UNIT, -2, 1)).is_zero()


class TestPairModified:
    def test_zero_field(self):
        assert pair_modified(zero, const(1), zero, PLUS) == delta(CLOSED, 0) + delta(CLOSED, 1)

    def test_below_datum(self):
        mu = pair_modified(const(-1), const(-1), zero, PLUS)
        assert restrict(mu, Region.boundary_of(UNIT)) == delta(CLOSED, 0) - delta(CLOSED, 1)

    def test_equal_datum(self):
        u = PiecewiseAffine.polyline([0, F(1, 2), 1], [1, 0, 2])
        sigma = PiecewiseAffine.affine(UNIT, -1)
        assert pair_modified(sigma, u, u, PLUS) == pair_global(sigma, u, u, PLUS) \
            == pair_local(sigma, u, PLUS).closure()


# -- properties --------------------------------------------------------------

def _vanishing(phi):
    """Turn a continuous polyline into one vanishing at both endpoints."""
    a, b = phi.traces
    line = PiecewiseAffine.affine(UNIT, b - a, a)
    return phi - line


@settings(max_examples=100, deadline=None)
@given(piecewise(), piecewise(), piecewise(continuous=True))
def test_local_definitional(sigma, u, phi):
    phi0 = _vanishing(phi)
    for rep in REPS:
        assert evaluate(pair_local(sigma, u, rep), phi0) == pair_local_def_eval(sigma, u, rep, phi0)


@settings(max_examples=100, deadline=None)
@given(piecewise(), piecewise(), piecewise(continuous=True), piecewise(continuous=True))
def test_global_definitional(sigma, u, u0, phi):
    for rep in REPS:
        assert evaluate(pair_global(sigma, u, u0, rep), phi) == pair_global_def_eval(sigma, u, u0, rep, phi)


@settings(max_examples=100, deadline=None)
@given(piecewise(), piecewise(), piecewise(continuous=True), piecewise(continuous=True))
def test_locality(sigma, u, u0, phi):
    phi0 = _vanishing(phi)
    for rep in REPS:
        assert evaluate(pair_global(sigma, u, u0, rep), phi0) == evaluate(pair_local(sigma, u, rep), phi0)


@settings(max_examples=100, deadline=None)
@given(piecewise(), piecewise(continuous=True))
def test_boundary_equality(sigma, u0):
    for u in (u0 + const(1), u0.refine([F(1, 3)])):
        for rep in REPS:
            rest = pair_global(sigma, u, u0, rep) - boundary_trace_term(sigma, u, u0)
            assert restrict(rest, Region.boundary_of(UNIT)).is_zero()


@settings(max_examples=100, deadline=None)
@given(piecewise(), piecewise(), piecewise(continuous=True))
def test_modified_boundary_identity(sigma, u, u0):
    mu = pair_modified(sigma, u, u0, PLUS)
    assert restrict(mu, Region.boundary_of(UNIT)) == modified_boundary_formula(sigma, u, u0)
