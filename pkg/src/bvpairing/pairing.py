"""Anzellotti-type pairings of a field sigma with the gradient of a BV function u.

Each pairing is available as an explicit measure (``pair_*``) and, where it is
defined through integration against test functions, as a direct evaluation of
that definition (``*_def_eval``). The two routes share no code beyond exact
integration of affine products, so agreement between them is a real check.
"""

from __future__ import annotations

from fractions import Fraction

from .bvfunc import Representative, gradient_measure, representative_value, require_continuous
from .core import PiecewiseAffine, simpson
from .dmfield import Field, normal_trace
from .measure import SignedMeasure, TestFunction

PLUS = Representative.PLUS


def _common(*fs: PiecewiseAffine) -> list[PiecewiseAffine]:
    for f in fs[1:]:
        fs[0].domain.require_same(f.domain)
    knots = sorted(set().union(*(f.knots for f in fs)))
    return [f.refine(knots) for f in fs]


def pair_local(sigma: Field, u: PiecewiseAffine, rep: Representative = PLUS) -> SignedMeasure:
    """<sigma, Du^rep> as a measure on the open interval.

    Density sigma * u' on the pieces; at each knot x the atom
    u(x+)sigma(x+) - u(x-)sigma(x-) - u_rep(x) (sigma(x+) - sigma(x-)).
    """
    s, v = _common(sigma, u)
    slopes = v.slopes
    dens = PiecewiseAffine(
        s.domain, s.knots,
        tuple(sl * d for sl, d in zip(s.lo_values, slopes)),
        tuple(sh * d for sh, d in zip(s.hi_values, slopes)),
    )
    atoms = []
    for i, x in enumerate(s.interior_knots):
        sl, sr = s.hi_values[i], s.lo_values[i + 1]
        ul, ur = v.hi_values[i], v.lo_values[i + 1]
        u_rep = ul if ul == ur else rep.pick(ul, ur)
        atoms.append((x, ur * sr - ul * sl - u_rep * (sr - sl)))
    return SignedMeasure(s.domain, dens, tuple(atoms))


def _as_function(phi) -> PiecewiseAffine:
    return phi.phi if isinstance(phi, TestFunction) else phi


def pair_local_def_eval(
    sigma: Field, u: PiecewiseAffine, rep: Representative, phi
) -> Fraction:
    """-int u sigma phi' dx - int phi u_rep d(Div sigma), for phi vanishing at a and b."""
    phi = _as_function(phi)
    if phi.traces != (0, 0):
        raise ValueError("local pairing needs a test function vanishing at both endpoints")
    if not phi.is_continuous:
        raise ValueError("test function must be continuous")
    s, v, p = _common(sigma, u, phi)
    total = Fraction(0)
    p_slopes, s_slopes = p.slopes, s.slopes
    for i, (l, h) in enumerate(zip(s.knots, s.knots[1:])):
        uu = (v.lo_values[i], v.hi_values[i])
        ss = (s.lo_values[i], s.hi_values[i])
        pp = (p.lo_values[i], p.hi_values[i])
        total -= p_slopes[i] * simpson(l, h, uu, ss)
        # absolutely continuous part of Div sigma
        total -= s_slopes[i] * simpson(l, h, pp, uu)
    for i, x in enumerate(s.interior_knots):
        jump = s.lo_values[i + 1] - s.hi_values[i]
        if jump:
            total -= p.lo_values[i + 1] * representative_value(u, x, rep) * jump
    return total


def boundary_trace_term(sigma: Field, u: PiecewiseAffine, u0: PiecewiseAffine) -> SignedMeasure:
    """(u - u0)^int sigma_n^* H^0 on the boundary, as a measure on the closure."""
    dom = u.domain.closure()
    (ua, ub), (da, db) = u.traces, u0.traces
    na, nb = normal_trace(sigma)
    return SignedMeasure(dom, None, ((dom.a, (ua - da) * na), (dom.b, (ub - db) * nb)))


def pair_global(
    sigma: Field, u: PiecewiseAffine, u0: PiecewiseAffine, rep: Representative = PLUS
) -> SignedMeasure:
    """Up-to-the-boundary pairing <sigma, Du^rep>_{u0} on the closed interval."""
    require_continuous(u0)
    sigma.domain.require_same(u0.domain)
    return pair_local(sigma, u, rep).closure() + boundary_trace_term(sigma, u, u0)


def pair_global_def_eval(
    sigma: Field, u: PiecewiseAffine, u0: PiecewiseAffine, rep: Representative, phi
) -> Fraction:
    """-int (u-u0) sigma phi' - int phi (u_rep - u0) d(Div sigma) + int phi sigma u0'.

    ``phi`` need not vanish at the endpoints.
    """
    require_continuous(u0)
    phi = _as_function(phi)
    if not phi.is_continuous:
        raise ValueError("test function must be continuous")
    s, v, d, p = _common(sigma, u, u0, phi)
    w = v - d
    total = Fraction(0)
    p_slopes, s_slopes, d_slopes = p.slopes, s.slopes, d.slopes
    for i, (l, h) in enumerate(zip(s.knots, s.knots[1:])):
        ww = (w.lo_values[i], w.hi_values[i])
        ss = (s.lo_values[i], s.hi_values[i])
        pp = (p.lo_values[i], p.hi_values[i])
        total -= p_slopes[i] * simpson(l, h, ww, ss)
        total -= s_slopes[i] * simpson(l, h, pp, ww)
        total += d_slopes[i] * simpson(l, h, pp, ss)
    for i, x in enumerate(s.interior_knots):
        jump = s.lo_values[i + 1] - s.hi_values[i]
        if jump:
            total -= p.lo_values[i + 1] * (representative_value(u, x, rep) - d.lo_values[i + 1]) * jump
    return total


def dirichlet_gradient(u: PiecewiseAffine, u0: PiecewiseAffine) -> SignedMeasure:
    """D_{u0} u = Du on the interior plus (u - u0)^int * inward normal at a and b."""
    require_continuous(u0)
    u.domain.require_same(u0.domain)
    dom = u.domain.closure()
    (ua, ub), (da, db) = u.traces, u0.traces
    boundary = SignedMeasure(dom, None, ((dom.a, ua - da), (dom.b, -(ub - db))))
    return gradient_measure(u).closure() + boundary


def boundary_div_extension(sigma: Field) -> SignedMeasure:
    """(-Div sigma) on the boundary, defined as (1 - sigma_n^*) H^0."""
    dom = sigma.domain.closure()
    na, nb = normal_trace(sigma)
    return SignedMeasure(dom, None, ((dom.a, 1 - na), (dom.b, 1 - nb)))


def pair_modified(
    sigma: Field, u: PiecewiseAffine, u0: PiecewiseAffine, rep: Representative = PLUS
) -> SignedMeasure:
    """pair_global plus [(u - u0)^int]_+ times the boundary extension of -Div sigma."""
    base = pair_global(sigma, u, u0, rep)
    (ua, ub), (da, db) = u.traces, u0.traces
    ext = boundary_div_extension(sigma)
    dom = base.domain
    extra = SignedMeasure(
        dom, None,
        ((dom.a, max(ua - da, 0) * ext.atom(dom.a)), (dom.b, max(ub - db, 0) * ext.atom(dom.b))),
    )
    return base + extra


def modified_boundary_formula(
    sigma: Field, u: PiecewiseAffine, u0: PiecewiseAffine
) -> SignedMeasure:
    """([(u-u0)^int]_+ - [(u-u0)^int]_- sigma_n^*) H^0 on the boundary, built directly."""
    dom = u.domain.closure()
    (ua, ub), (da, db) = u.traces, u0.traces
    na, nb = normal_trace(sigma)

    def weight(diff, n):
        return max(diff, 0) - max(-diff, 0) * n

    return SignedMeasure(dom, None, ((dom.a, weight(ua - da, na)), (dom.b, weight(ub - db, nb))))
