"""Piecewise-affine BV functions: representatives, gradient measures, traces,
extension by zero and approximation from above."""

from __future__ import annotations

from enum import Enum
from fractions import Fraction

from .core import Domain, PiecewiseAffine, Q, Rational
from .measure import SignedMeasure, total_variation


class Representative(Enum):
    """Which value a BV function takes at a jump point."""

    PLUS = "plus"
    MINUS = "minus"
    STAR = "star"

    def pick(self, left: Fraction, right: Fraction) -> Fraction:
        if self is Representative.PLUS:
            return max(left, right)
        if self is Representative.MINUS:
            return min(left, right)
        return (left + right) / 2

    @classmethod
    def parse(cls, name: str) -> Representative:
        try:
            return cls(name.lower())
        except ValueError:
            raise ValueError(f"unknown representative {name!r}; use plus, minus or star") from None


PLUS, MINUS, STAR = Representative.PLUS, Representative.MINUS, Representative.STAR


def gradient_measure(u: PiecewiseAffine) -> SignedMeasure:
    """Du: slope density on each piece plus an atom of size u(x+) - u(x-) at each jump."""
    slopes = u.slopes
    dens = PiecewiseAffine(u.domain, u.knots, slopes, slopes)
    atoms = tuple((x, right - left) for x, left, right in u.jumps())
    return SignedMeasure(u.domain, dens, atoms)


def representative_value(u: PiecewiseAffine, x: Rational, rep: Representative) -> Fraction:
    x = Q(x)
    if not u.domain.contains(x, closed=False):
        raise ValueError(f"{x} is not inside {u.domain}")
    left, right = u.limits(x)
    if left == right:
        return left
    return rep.pick(left, right)


def interior_traces(u: PiecewiseAffine) -> tuple[Fraction, Fraction]:
    """(u(a+), u(b-))."""
    return u.traces


def sup_norm(u: PiecewiseAffine) -> Fraction:
    return u.sup_norm


def require_continuous(u0: PiecewiseAffine, what: str = "boundary datum") -> None:
    if not u0.is_continuous:
        raise ValueError(f"{what} must be continuous (a W^{{1,1}} representative)")


def extend_by_zero(u: PiecewiseAffine, ambient: Domain) -> PiecewiseAffine:
    """The zero extension of ``u`` to a strictly larger interval.

    The jumps created at a and b are checked against the dimension-constant
    bound before returning.
    """
    a, b = u.domain.a, u.domain.b
    if not ambient.a < a or not b < ambient.b:
        raise ValueError(f"{ambient} does not strictly contain [{a}, {b}]")
    ext = PiecewiseAffine(
        ambient.interior(),
        (ambient.a,) + u.knots + (ambient.b,),
        (Fraction(0),) + u.lo_values + (Fraction(0),),
        (Fraction(0),) + u.hi_values + (Fraction(0),),
    )
    holds, mass, bound = extension_bound_check(u, ext)
    assert holds, f"extension bound violated: {mass} > {bound}"
    return ext


def extension_bound_check(
    u: PiecewiseAffine, extension: PiecewiseAffine | None = None
) -> tuple[bool, Fraction, Fraction]:
    """(holds, |D(1_Omega u)|({a, b}), constant * ||u|| * H^0(boundary))."""
    from .dmfield import dimension_constant

    if extension is None:
        width = u.domain.length
        extension = extend_by_zero(u, Domain(u.domain.a - width, u.domain.b + width))
    tv = total_variation(gradient_measure(extension))
    mass = tv.atom(u.domain.a) + tv.atom(u.domain.b)
    bound = dimension_constant(1).rational() * u.sup_norm * u.domain.boundary_count
    return mass <= bound, mass, bound


def local_gap(u: PiecewiseAffine, x: Fraction) -> Fraction:
    """Distance from knot ``x`` to its nearest neighbouring knot."""
    i = u.knots.index(x)
    return min(x - u.knots[i - 1], u.knots[i + 1] - x)


def approx_from_above(u: PiecewiseAffine, ell: int) -> PiecewiseAffine:
    """Continuous v_ell >= u that equals u^+ at every jump point.

    At a jump x the lower side is replaced by an affine ramp of width
    ``min(2**-ell, gap/3)`` that climbs to the larger jump value at x. The
    widths shrink with ``ell``, so v_1 >= v_ell >= u and v_ell -> u^+ pointwise.
    """
    if ell < 1:
        raise ValueError("ell must be a positive integer")
    jumps = u.jumps()
    if not jumps:
        return u
    cap = Fraction(1, 2**ell)
    ramps = []  # (lo, hi, v_lo, v_hi)
    for x, left, right in jumps:
        w = min(cap, local_gap(u, x) / 3)
        if right > left:
            ramps.append((x - w, x, u.limit_right(x - w), right))
        else:
            ramps.append((x, x + w, left, u.limit_left(x + w)))
    v = u.refine([r[0] for r in ramps] + [r[1] for r in ramps])
    by_lo = {r[0]: r for r in ramps}
    lo_vals, hi_vals = list(v.lo_values), list(v.hi_values)
    for i, (l, h, _, _) in enumerate(v.pieces()):
        r = by_lo.get(l)
        if r is not None and r[1] == h:
            lo_vals[i], hi_vals[i] = r[2], r[3]
    return PiecewiseAffine(v.domain, v.knots, tuple(lo_vals), tuple(hi_vals))


def approx_from_below(u: PiecewiseAffine, width: Rational) -> PiecewiseAffine:
    """Continuous w <= u obtained by ramping down the upper side of each jump.

    Mirror image of :func:`approx_from_above`; ``width`` is clipped to half the
    local gap so neighbouring ramps never overlap. Decreasing ``width`` gives
    an increasing family converging to u away from the jumps.
    """
    width = Q(width)
    if width <= 0:
        raise ValueError("width must be positive")
    ramps = []
    for x, left, right in u.jumps():
        w = min(width, local_gap(u, x) / 2)
        if right > left:
            ramps.append((x, x + w, left, u.limit_left(x + w)))
        else:
            ramps.append((x - w, x, u.limit_right(x - w), right))
    if not ramps:
        return u
    v = u.refine([r[0] for r in ramps] + [r[1] for r in ramps])
    by_lo = {r[0]: r for r in ramps}
    lo_vals, hi_vals = list(v.lo_values), list(v.hi_values)
    for i, (l, h, _, _) in enumerate(v.pieces()):
        r = by_lo.get(l)
        if r is not None and r[1] == h:
            lo_vals[i], hi_vals[i] = r[2], r[3]
    return PiecewiseAffine(v.domain, v.knots, tuple(lo_vals), tuple(hi_vals))


def step(domain: Domain, x: Rational, left: Rational, right: Rational) -> PiecewiseAffine:
    """Piecewise constant: ``left`` on (a, x), ``right`` on (x, b)."""
    x, left, right = Q(x), Q(left), Q(right)
    return PiecewiseAffine(domain, (domain.a, x, domain.b), (left, right), (left, right))
