"""Signed measures made of finitely many atoms plus a piecewise-affine density.

This class is closed under everything the pairings produce for piecewise-affine
inputs, so equality and ordering of measures are decidable exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Mapping

from .core import (
    Domain,
    DomainMismatchError,
    PiecewiseAffine,
    Q,
    Rational,
    format_rational,
    simpson,
)


class Ordering(Enum):
    EQUAL = "equal"
    LESS_EQUAL = "less_equal"
    GREATER_EQUAL = "greater_equal"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class Region:
    """A finite union of open intervals and single points."""

    intervals: tuple[tuple[Fraction, Fraction], ...] = ()
    points: tuple[Fraction, ...] = ()

    def __post_init__(self):
        ivs = sorted((Q(lo), Q(hi)) for lo, hi in self.intervals)
        merged: list[list[Fraction]] = []
        for lo, hi in ivs:
            if lo >= hi:
                continue
            if merged and lo < merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        object.__setattr__(self, "intervals", tuple((lo, hi) for lo, hi in merged))
        object.__setattr__(self, "points", tuple(sorted({Q(p) for p in self.points})))

    @classmethod
    def open_interval(cls, lo: Rational, hi: Rational) -> Region:
        return cls(((lo, hi),))

    @classmethod
    def closed_interval(cls, lo: Rational, hi: Rational) -> Region:
        return cls(((lo, hi),), (lo, hi))

    @classmethod
    def at(cls, *points: Rational) -> Region:
        return cls((), points)

    @classmethod
    def boundary_of(cls, domain: Domain) -> Region:
        return cls.at(domain.a, domain.b)

    def __or__(self, other: Region) -> Region:
        return Region(self.intervals + other.intervals, self.points + other.points)

    def contains(self, x: Rational) -> bool:
        x = Q(x)
        return x in self.points or any(lo < x < hi for lo, hi in self.intervals)

    def covers_open(self, lo: Fraction, hi: Fraction) -> bool:
        return any(ilo <= lo and hi <= ihi for ilo, ihi in self.intervals)


def _zero_density(domain: Domain) -> PiecewiseAffine:
    return PiecewiseAffine.constant(domain.interior(), 0)


@dataclass(frozen=True)
class SignedMeasure:
    """``density dx + sum_x weight_x delta_x`` on an interval or its closure.

    Instances are canonical: the density is simplified, zero atoms are dropped
    and atoms are sorted, so ``==`` is equality of measures.
    """

    domain: Domain
    density: PiecewiseAffine = None
    atoms: tuple[tuple[Fraction, Fraction], ...] = field(default=())

    def __post_init__(self):
        dens = self.density if self.density is not None else _zero_density(self.domain)
        self.domain.require_same(dens.domain)
        object.__setattr__(self, "density", dens.simplify())
        merged: dict[Fraction, Fraction] = {}
        for x, w in self.atoms:
            x, w = Q(x), Q(w)
            merged[x] = merged.get(x, Fraction(0)) + w
        for x in merged:
            if not self.domain.contains(x):
                where = "closure of " if self.domain.closed else ""
                raise ValueError(f"atom at {x} outside the {where}domain {self.domain}")
        object.__setattr__(
            self, "atoms", tuple(sorted((x, w) for x, w in merged.items() if w != 0))
        )

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls, domain: Domain) -> SignedMeasure:
        return cls(domain)

    @classmethod
    def lebesgue(
        cls, domain: Domain, lo: Rational | None = None, hi: Rational | None = None,
        value: Rational = 1,
    ) -> SignedMeasure:
        """``value * dx`` restricted to (lo, hi), defaulting to the whole interval."""
        lo = domain.a if lo is None else Q(lo)
        hi = domain.b if hi is None else Q(hi)
        value = Q(value)
        base = _zero_density(domain).refine([lo, hi])
        vals = tuple(value if lo <= l and h <= hi else Fraction(0) for l, h, _, _ in base.pieces())
        return cls(domain, PiecewiseAffine(base.domain, base.knots, vals, vals))

    @classmethod
    def dirac(cls, domain: Domain, x: Rational, weight: Rational = 1) -> SignedMeasure:
        return cls(domain, None, ((Q(x), Q(weight)),))

    @classmethod
    def from_density(cls, density: PiecewiseAffine, closed: bool = False) -> SignedMeasure:
        domain = density.domain.closure() if closed else density.domain
        return cls(domain, density)

    # -- accessors --------------------------------------------------------

    def atom(self, x: Rational) -> Fraction:
        return dict(self.atoms).get(Q(x), Fraction(0))

    @property
    def atom_map(self) -> Mapping[Fraction, Fraction]:
        return dict(self.atoms)

    def is_zero(self) -> bool:
        return not self.atoms and all(
            v == 0 for v in self.density.lo_values + self.density.hi_values
        )

    def is_nonnegative(self) -> bool:
        # affine density pieces are nonnegative iff both end values are
        return all(w >= 0 for _, w in self.atoms) and all(
            v >= 0 for v in self.density.lo_values + self.density.hi_values
        )

    def total_mass(self) -> Fraction:
        """mu(domain)."""
        dens = sum((simpson(l, h, (vl, vh)) for l, h, vl, vh in self.density.pieces()), Fraction(0))
        return dens + sum((w for _, w in self.atoms), Fraction(0))

    def mass(self, region: Region | None = None) -> Fraction:
        if region is None:
            return self.total_mass()
        return restrict(self, region).total_mass()

    def closure(self) -> SignedMeasure:
        return SignedMeasure(self.domain.closure(), self.density, self.atoms)

    # -- arithmetic -------------------------------------------------------

    def _joint_domain(self, other: SignedMeasure) -> Domain:
        self.domain.require_same(other.domain)
        return self.domain.closure() if (self.domain.closed or other.domain.closed) else self.domain

    def __add__(self, other: SignedMeasure) -> SignedMeasure:
        if not isinstance(other, SignedMeasure):
            return NotImplemented
        return SignedMeasure(
            self._joint_domain(other), self.density + other.density, self.atoms + other.atoms
        )

    def __neg__(self) -> SignedMeasure:
        return SignedMeasure(self.domain, -self.density, tuple((x, -w) for x, w in self.atoms))

    def __sub__(self, other: SignedMeasure) -> SignedMeasure:
        if not isinstance(other, SignedMeasure):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar: Rational) -> SignedMeasure:
        if isinstance(scalar, SignedMeasure):
            return NotImplemented
        c = Q(scalar)
        return SignedMeasure(self.domain, self.density * c, tuple((x, c * w) for x, w in self.atoms))

    __rmul__ = __mul__

    def __str__(self):
        text = serialize_measure(self)
        return text if text else "0"


def total_variation(mu: SignedMeasure) -> SignedMeasure:
    """|mu|: absolute value of the density (split at sign changes) and of each atom."""
    dens = mu.density
    crossings = []
    for l, h, vl, vh in dens.pieces():
        if vl * vh < 0:
            crossings.append(l + (h - l) * vl / (vl - vh))
    dens = dens.refine(crossings)
    abs_dens = PiecewiseAffine(
        dens.domain, dens.knots,
        tuple(abs(v) for v in dens.lo_values), tuple(abs(v) for v in dens.hi_values),
    )
    return SignedMeasure(mu.domain, abs_dens, tuple((x, abs(w)) for x, w in mu.atoms))


def jordan_decomposition(mu: SignedMeasure) -> tuple[SignedMeasure, SignedMeasure]:
    """(mu+, mu-) with mu = mu+ - mu- and |mu| = mu+ + mu-."""
    tv = total_variation(mu)
    return (tv + mu) * Fraction(1, 2), (tv - mu) * Fraction(1, 2)


def evaluate(mu: SignedMeasure, phi) -> Fraction:
    """Integral of a continuous piecewise-affine ``phi`` against ``mu``.

    ``phi`` may be a :class:`TestFunction` or a continuous :class:`PiecewiseAffine`.
    """
    if isinstance(phi, TestFunction):
        phi = phi.phi
    if not phi.domain.same_interval(mu.domain):
        raise DomainMismatchError(f"test function on {phi.domain}, measure on {mu.domain}")
    knots = sorted(set(mu.density.knots) | set(phi.knots))
    dens = mu.density.refine(knots)
    ph = phi.refine(knots)
    total = Fraction(0)
    for i, (l, h) in enumerate(zip(knots, knots[1:])):
        total += simpson(l, h, (dens.lo_values[i], dens.hi_values[i]), (ph.lo_values[i], ph.hi_values[i]))
    for x, w in mu.atoms:
        total += w * _point_value(phi, x)
    return total


def _point_value(phi: PiecewiseAffine, x: Fraction) -> Fraction:
    if x == phi.domain.b:
        return phi.limit_left(x)
    return phi.limit_right(x)


def compare(mu: SignedMeasure, nu: SignedMeasure) -> Ordering:
    """Order of measures: mu <= nu iff nu - mu is nonnegative."""
    diff = nu - mu
    if diff.is_zero():
        return Ordering.EQUAL
    if diff.is_nonnegative():
        return Ordering.LESS_EQUAL
    if (-diff).is_nonnegative():
        return Ordering.GREATER_EQUAL
    return Ordering.INCOMPARABLE


def measure_le(mu: SignedMeasure, nu: SignedMeasure) -> bool:
    return compare(mu, nu) in (Ordering.EQUAL, Ordering.LESS_EQUAL)


def restrict(mu: SignedMeasure, region: Region) -> SignedMeasure:
    """mu restricted to ``region`` (the corner-bracket operation)."""
    cuts = [p for iv in region.intervals for p in iv]
    dens = mu.density.refine(cuts)
    lo, hi = [], []
    for l, h, vl, vh in dens.pieces():
        keep = region.covers_open(l, h)
        lo.append(vl if keep else Fraction(0))
        hi.append(vh if keep else Fraction(0))
    new_dens = PiecewiseAffine(dens.domain, dens.knots, tuple(lo), tuple(hi))
    atoms = tuple((x, w) for x, w in mu.atoms if region.contains(x))
    return SignedMeasure(mu.domain, new_dens, atoms)


@dataclass(frozen=True)
class TestFunction:
    """A continuous piecewise-affine test function on the domain's closure."""

    __test__ = False  # keep pytest from collecting this class

    phi: PiecewiseAffine

    def __post_init__(self):
        if not self.phi.is_continuous:
            raise ValueError("test functions must be continuous")

    @property
    def domain(self) -> Domain:
        return self.phi.domain

    @property
    def vanishes_on_boundary(self) -> bool:
        return self.phi.traces == (0, 0)

    def __call__(self, x: Rational) -> Fraction:
        return _point_value(self.phi, Q(x))

    @classmethod
    def tent(cls, domain: Domain, lo: Rational, peak: Rational, hi: Rational,
             height: Rational = 1) -> TestFunction:
        """Hat function supported on [lo, hi] with its maximum at ``peak``."""
        lo, peak, hi = Q(lo), Q(peak), Q(hi)
        knots = sorted({domain.a, lo, peak, hi, domain.b})
        vals = [Q(height) if k == peak else Fraction(0) for k in knots]
        tent = PiecewiseAffine.polyline(knots, vals)
        return cls(PiecewiseAffine(domain, tent.knots, tent.lo_values, tent.hi_values))


# -- text form ---------------------------------------------------------------

def serialize_measure(mu: SignedMeasure) -> str:
    """One ``D x_lo x_hi value`` line per nonzero density piece (two values when
    the piece is not constant) and one ``A x weight`` line per atom, by location."""
    entries = []
    for l, h, vl, vh in mu.density.pieces():
        if vl == 0 and vh == 0:
            continue
        vals = format_rational(vl) if vl == vh else f"{format_rational(vl)} {format_rational(vh)}"
        entries.append(((l, 1), f"D {format_rational(l)} {format_rational(h)} {vals}"))
    for x, w in mu.atoms:
        entries.append(((x, 0), f"A {format_rational(x)} {format_rational(w)}"))
    entries.sort(key=lambda e: e[0])
    return "\n".join(line for _, line in entries)


def parse_measure(text: str, domain: Domain) -> SignedMeasure:
    """Inverse of :func:`serialize_measure` for a known domain."""
    pieces: list[tuple[Fraction, Fraction, Fraction, Fraction]] = []
    atoms = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            if tok[0] == "D" and len(tok) in (4, 5):
                lo, hi, v0 = Q(tok[1]), Q(tok[2]), Q(tok[3])
                v1 = Q(tok[4]) if len(tok) == 5 else v0
                pieces.append((lo, hi, v0, v1))
            elif tok[0] == "A" and len(tok) == 3:
                atoms.append((Q(tok[1]), Q(tok[2])))
            else:
                raise ValueError(f"unrecognised record {tok[0]!r}")
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    dens = _zero_density(domain)
    total = SignedMeasure(domain, dens, tuple(atoms))
    for lo, hi, v0, v1 in pieces:
        base = _zero_density(domain).refine([lo, hi])
        lo_v, hi_v = [], []
        for l, h, _, _ in base.pieces():
            if l == lo and h == hi:
                lo_v.append(v0)
                hi_v.append(v1)
            else:
                lo_v.append(Fraction(0))
                hi_v.append(Fraction(0))
        total = total + SignedMeasure(domain, PiecewiseAffine(base.domain, base.knots, tuple(lo_v), tuple(hi_v)))
    return total
