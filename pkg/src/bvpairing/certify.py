"""Certificates for weak super-1-harmonicity, locally and with Dirichlet data.

A certificate is a field sigma with |sigma| <= 1, Div sigma <= 0 and pairing
equal to the total variation. The search works with two unknowns per piece of
the partition, sigma just right of the left end and sigma just left of the
right end, chained by monotonicity:

    L_0 >= R_0 >= L_1 >= R_1 >= ... >= R_{m-1}

Every pairing-equality requirement pins one of these one-sided values (or a
whole piece) to +1 or -1, so the system is a chain and interval propagation
decides it exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .bvfunc import Representative, gradient_measure, require_continuous
from .core import Domain, PiecewiseAffine, format_rational
from .dmfield import Field, is_nonincreasing, normal_trace, sinfty_check
from .fme import ConstraintSystem, Solution
from .measure import Ordering, compare, total_variation
from .pairing import dirichlet_gradient, pair_global, pair_local, pair_modified

PLUS = Representative.PLUS


@dataclass(frozen=True)
class Certificate:
    sigma: Field
    kind: str  # "local" or "dirichlet"
    rep: Representative = PLUS
    datum: PiecewiseAffine | None = None
    verified: bool = False


def _fmt(x: Fraction) -> str:
    return format_rational(x)


def _base_system(knots: tuple[Fraction, ...]) -> ConstraintSystem:
    names, positions = [], []
    for l, h in zip(knots, knots[1:]):
        names += [f"sigma({_fmt(l)}+)", f"sigma({_fmt(h)}-)"]
        positions += [l, h]
    system = ConstraintSystem(names, positions, partition=tuple(knots))
    for v in range(len(names)):
        system.bound(v, -1, 1, "|sigma| <= 1")
    for v in range(len(names) - 1):
        system.link(v, "sigma nonincreasing")
    return system


def _pin_piece(system: ConstraintSystem, i: int, value: int, label: str) -> None:
    system.pin(2 * i, value, label)
    system.pin(2 * i + 1, value, label)


def build_local_system(
    u: PiecewiseAffine, rep: Representative = PLUS, extra_knots=()
) -> ConstraintSystem:
    """Constraints on sigma making <sigma, Du^rep> = |Du| on the open interval."""
    v = u.refine(extra_knots)
    system = _base_system(v.knots)
    for i, ((l, h, _, _), s) in enumerate(zip(v.pieces(), v.slopes)):
        if s > 0:
            _pin_piece(system, i, 1, f"u increases on ({_fmt(l)},{_fmt(h)})")
        elif s < 0:
            _pin_piece(system, i, -1, f"u decreases on ({_fmt(l)},{_fmt(h)})")
    for i, x in enumerate(v.interior_knots):
        ul, ur = v.hi_values[i], v.lo_values[i + 1]
        if ul == ur:
            continue
        sign = 1 if ur > ul else -1
        kind = "up" if sign > 0 else "down"
        label = f"{kind}-jump at {_fmt(x)}"
        left_var, right_var = 2 * i + 1, 2 * i + 2
        # the atom is jump * (theta sigma(x-) + (1 - theta) sigma(x+)), u_rep = theta u(x+) + ...
        if rep is Representative.STAR:
            system.pin(left_var, sign, label)
            system.pin(right_var, sign, label)
        elif (rep is PLUS) == (sign > 0):
            system.pin(left_var, sign, label)
        else:
            system.pin(right_var, sign, label)
    return system


def _add_dirichlet_boundary(
    system: ConstraintSystem, u: PiecewiseAffine, u0: PiecewiseAffine, modified: bool
) -> None:
    last = system.n_vars - 1
    (ua, ub), (da, db) = u.traces, u0.traces
    # sigma_n(a) = sigma(a+), sigma_n(b) = -sigma(b-)
    if ua < da:
        system.pin(0, -1, f"trace below datum at {_fmt(u.domain.a)}")
    elif ua > da and not modified:
        system.pin(0, 1, f"trace above datum at {_fmt(u.domain.a)}")
    if ub < db:
        system.pin(last, 1, f"trace below datum at {_fmt(u.domain.b)}")
    elif ub > db and not modified:
        system.pin(last, -1, f"trace above datum at {_fmt(u.domain.b)}")


def build_dirichlet_system(
    u: PiecewiseAffine, u0: PiecewiseAffine, modified: bool = True
) -> ConstraintSystem:
    """Local constraints (rep plus) together with the boundary conditions.

    With ``modified=False`` the boundary rows encode equality for the plain
    up-to-the-boundary pairing instead of the modified one.
    """
    require_continuous(u0)
    u.domain.require_same(u0.domain)
    system = build_local_system(u, PLUS, extra_knots=u0.knots)
    _add_dirichlet_boundary(system, u, u0, modified)
    return system


def sigma_from_solution(system: ConstraintSystem, values: list[Fraction]) -> Field:
    """Piecewise-constant sigma; a piece whose two ends differ is split at its midpoint."""
    knots = system.partition
    if not system.pinned():
        return PiecewiseAffine.constant(Domain(knots[0], knots[-1]), 0)
    pieces = []
    for i, (l, h) in enumerate(zip(knots, knots[1:])):
        left, right = values[2 * i], values[2 * i + 1]
        if left == right:
            pieces.append((l, h, left, left))
        else:
            m = (l + h) / 2
            pieces += [(l, m, left, left), (m, h, right, right)]
    return PiecewiseAffine.from_pieces(pieces).simplify()


def solve_system(system: ConstraintSystem, method: str = "auto") -> Solution:
    return system.solve(method)


def verify_local(sigma: Field, u: PiecewiseAffine, rep: Representative = PLUS) -> bool:
    sigma.domain.require_same(u.domain)
    return (
        sinfty_check(sigma)
        and is_nonincreasing(sigma)
        and compare(pair_local(sigma, u, rep), total_variation(gradient_measure(u))) is Ordering.EQUAL
    )


def certify_local(
    u: PiecewiseAffine, rep: Representative = PLUS, method: str = "auto"
) -> Certificate | None:
    system = build_local_system(u, rep)
    sol = system.solve(method)
    if not sol.feasible:
        return None
    sigma = sigma_from_solution(system, sol.values)
    cert = Certificate(sigma, "local", rep)
    if not verify_local(sigma, u, rep):
        raise RuntimeError(f"certificate search returned an invalid field {sigma}")
    return replace(cert, verified=True)


def explain_local(u: PiecewiseAffine, rep: Representative = PLUS) -> str | None:
    """The infeasibility message for ``u``, or None when it is certifiable."""
    return build_local_system(u, rep).solve().conflict


def _tags(u: PiecewiseAffine):
    """Demand tags (x, side) with side 0 = just left of x, 1 = just right of x."""
    plus, minus = [], []
    for (l, h, _, _), s in zip(u.pieces(), u.slopes):
        if s > 0:
            plus.append((h, 0))
        elif s < 0:
            minus.append((l, 1))
    for x, left, right in u.jumps():
        if right > left:
            plus.append((x, 0))
        else:
            minus.append((x, 1))
    return plus, minus


def unimodal_oracle(u: PiecewiseAffine) -> Fraction | None:
    """Peak position if u increases up to a point and decreases afterwards.

    Independent of the constraint machinery: every +1 demand must come before
    every -1 demand in the order (x, left) < (x, right) < (y, .) for x < y.
    """
    plus, minus = _tags(u)
    if plus and minus and max(plus) > min(minus):
        return None
    if not plus:
        return u.domain.a
    return max(plus)[0]


def verify_dirichlet(sigma: Field, u: PiecewiseAffine, u0: PiecewiseAffine) -> bool:
    require_continuous(u0)
    return (
        sinfty_check(sigma)
        and is_nonincreasing(sigma)
        and compare(
            pair_modified(sigma, u, u0, PLUS), total_variation(dirichlet_gradient(u, u0))
        ) is Ordering.EQUAL
    )


def verify_dirichlet_unmodified(sigma: Field, u: PiecewiseAffine, u0: PiecewiseAffine) -> bool:
    """Same as :func:`verify_dirichlet` but with the plain up-to-the-boundary pairing."""
    require_continuous(u0)
    return (
        sinfty_check(sigma)
        and is_nonincreasing(sigma)
        and compare(
            pair_global(sigma, u, u0, PLUS), total_variation(dirichlet_gradient(u, u0))
        ) is Ordering.EQUAL
    )


def boundary_reformulation(sigma: Field, u: PiecewiseAffine, u0: PiecewiseAffine) -> bool:
    """Interior equality plus sigma_n^* = -1 wherever the trace lies below the datum."""
    if not verify_local(sigma, u, PLUS):
        return False
    na, nb = normal_trace(sigma)
    (ua, ub), (da, db) = u.traces, u0.traces
    return (ua >= da or na == -1) and (ub >= db or nb == -1)


def _certify_dirichlet(u, u0, modified: bool, method: str) -> Certificate | None:
    system = build_dirichlet_system(u, u0, modified)
    sol = system.solve(method)
    if not sol.feasible:
        return None
    sigma = sigma_from_solution(system, sol.values)
    check = verify_dirichlet if modified else verify_dirichlet_unmodified
    if not check(sigma, u, u0):
        raise RuntimeError(f"certificate search returned an invalid field {sigma}")
    return Certificate(sigma, "dirichlet" if modified else "dirichlet-unmodified", PLUS, u0, True)


def certify_dirichlet(
    u: PiecewiseAffine, u0: PiecewiseAffine, method: str = "auto"
) -> Certificate | None:
    return _certify_dirichlet(u, u0, True, method)


def certify_dirichlet_unmodified(
    u: PiecewiseAffine, u0: PiecewiseAffine, method: str = "auto"
) -> Certificate | None:
    return _certify_dirichlet(u, u0, False, method)


def explain_dirichlet(u: PiecewiseAffine, u0: PiecewiseAffine) -> str | None:
    return build_dirichlet_system(u, u0).solve().conflict


def traversed_endpoints(u: PiecewiseAffine, u0: PiecewiseAffine, new_u0: PiecewiseAffine):
    """Endpoints e with u0(e) <= u^int(e) < new_u0(e)."""
    out = []
    for e, t, d, nd in zip(u.domain.boundary, u.traces, u0.traces, new_u0.traces):
        if d <= t < nd:
            out.append(e)
    return out


def transfer_datum(
    sigma: Field, u: PiecewiseAffine, u0: PiecewiseAffine, new_u0: PiecewiseAffine
) -> bool:
    """Whether a Dirichlet certificate for ``u0`` carries over to ``new_u0``.

    The answer is yes exactly when no endpoint trace is traversed by the change
    of datum; in that case sigma itself is re-verified against ``new_u0``.
    """
    require_continuous(new_u0)
    if not verify_dirichlet(sigma, u, u0):
        raise ValueError("sigma does not certify u with respect to the original datum")
    if traversed_endpoints(u, u0, new_u0):
        return False
    # wherever u^int < new datum, the old datum already forced sigma_n^* = -1
    if not verify_dirichlet(sigma, u, new_u0):
        raise RuntimeError("datum transfer failed although no trace was traversed")
    return True
