"""Exact piecewise-affine functions on a bounded open interval.

Everything here works over :class:`fractions.Fraction`; floats are rejected so
that equalities of measures stay decidable.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

Rational = Union[int, Fraction, str]


class DomainMismatchError(ValueError):
    """Two objects live on different intervals."""


def Q(x: Rational) -> Fraction:
    """Coerce ``x`` to an exact rational. Floats are refused."""
    if type(x) is Fraction:  # fast path; isinstance goes through the ABC machinery
        return x
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError(f"refusing float {x!r}; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


def format_rational(q: Fraction) -> str:
    q = Q(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def simpson(lo: Fraction, hi: Fraction, *factors: tuple[Fraction, Fraction]) -> Fraction:
    """Exact integral over (lo, hi) of a product of at most three affine factors.

    Each factor is given by its values at ``lo`` and ``hi``. Simpson's rule is
    exact up to degree three.
    """
    if len(factors) > 3:
        raise ValueError("Simpson's rule is only exact up to three affine factors")
    p_lo = Fraction(1)
    p_mid = Fraction(1)
    p_hi = Fraction(1)
    for f_lo, f_hi in factors:
        p_lo *= f_lo
        p_hi *= f_hi
        p_mid *= (f_lo + f_hi) / 2
    return (hi - lo) * (p_lo + 4 * p_mid + p_hi) / 6


@dataclass(frozen=True)
class Domain:
    """The open interval (a, b), or its closure when ``closed`` is set.

    In one dimension the boundary is {a, b}: its perimeter and counting
    measure both equal 2, and the inward unit normal is +1 at a, -1 at b.
    """

    a: Fraction
    b: Fraction
    closed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "a", Q(self.a))
        object.__setattr__(self, "b", Q(self.b))
        if not self.a < self.b:
            raise ValueError(f"empty interval ({self.a}, {self.b})")

    @property
    def length(self) -> Fraction:
        return self.b - self.a

    @property
    def boundary(self) -> tuple[Fraction, Fraction]:
        return (self.a, self.b)

    perimeter = 2
    boundary_count = 2

    def inward_normal(self, x: Rational) -> int:
        x = Q(x)
        if x == self.a:
            return 1
        if x == self.b:
            return -1
        raise ValueError(f"{x} is not a boundary point of ({self.a}, {self.b})")

    def closure(self) -> Domain:
        return Domain(self.a, self.b, True)

    def interior(self) -> Domain:
        return Domain(self.a, self.b, False)

    def same_interval(self, other: Domain) -> bool:
        return self.a == other.a and self.b == other.b

    def require_same(self, other: Domain) -> None:
        if not self.same_interval(other):
            raise DomainMismatchError(
                f"({self.a}, {self.b}) differs from ({other.a}, {other.b})"
            )

    def contains(self, x: Rational, closed: bool | None = None) -> bool:
        x = Q(x)
        closed = self.closed if closed is None else closed
        if closed:
            return self.a <= x <= self.b
        return self.a < x < self.b

    def __str__(self):
        lb, rb = ("[", "]") if self.closed else ("(", ")")
        return f"{lb}{format_rational(self.a)}, {format_rational(self.b)}{rb}"


def _merge_knots(*knot_lists: Iterable[Fraction]) -> tuple[Fraction, ...]:
    return tuple(sorted(set().union(*knot_lists)))


@dataclass(frozen=True)
class PiecewiseAffine:
    """A function on (a, b) that is affine on each piece between knots.

    ``lo_values[i]`` and ``hi_values[i]`` are the one-sided limits of piece i
    at its own left and right end. Jumps are implied wherever the right end of
    one piece disagrees with the left end of the next.
    """

    domain: Domain
    knots: tuple[Fraction, ...]
    lo_values: tuple[Fraction, ...]
    hi_values: tuple[Fraction, ...]

    def __post_init__(self):
        knots = tuple(Q(k) for k in self.knots)
        lo = tuple(Q(v) for v in self.lo_values)
        hi = tuple(Q(v) for v in self.hi_values)
        object.__setattr__(self, "knots", knots)
        object.__setattr__(self, "lo_values", lo)
        object.__setattr__(self, "hi_values", hi)
        if self.domain.closed:
            object.__setattr__(self, "domain", self.domain.interior())
        if len(knots) < 2 or knots[0] != self.domain.a or knots[-1] != self.domain.b:
            raise ValueError("knots must start at a and end at b")
        if any(k0 >= k1 for k0, k1 in zip(knots, knots[1:])):
            raise ValueError("knots must be strictly increasing")
        if not len(lo) == len(hi) == len(knots) - 1:
            raise ValueError("need one (lo, hi) value pair per piece")

    # -- construction -----------------------------------------------------

    @classmethod
    def _trusted(cls, domain, knots, lo, hi) -> PiecewiseAffine:
        # internal results that are valid by construction skip re-validation
        obj = object.__new__(cls)
        object.__setattr__(obj, "domain", domain)
        object.__setattr__(obj, "knots", knots)
        object.__setattr__(obj, "lo_values", lo)
        object.__setattr__(obj, "hi_values", hi)
        return obj

    @classmethod
    def from_pieces(cls, pieces: Iterable[Sequence[Rational]]) -> PiecewiseAffine:
        """Build from contiguous ``(x_lo, x_hi, v_lo, v_hi)`` tuples."""
        pieces = [tuple(Q(p) for p in piece) for piece in pieces]
        if not pieces:
            raise ValueError("at least one piece is required")
        for (_, hi0, _, _), (lo1, _, _, _) in zip(pieces, pieces[1:]):
            if hi0 != lo1:
                raise ValueError(f"non-contiguous pieces at {hi0} / {lo1}")
        knots = [p[0] for p in pieces] + [pieces[-1][1]]
        domain = Domain(knots[0], knots[-1])
        return cls(domain, tuple(knots), tuple(p[2] for p in pieces), tuple(p[3] for p in pieces))

    @classmethod
    def constant(cls, domain: Domain, c: Rational = 0) -> PiecewiseAffine:
        c = Q(c)
        return cls(domain, (domain.a, domain.b), (c,), (c,))

    @classmethod
    def polyline(cls, knots: Sequence[Rational], values: Sequence[Rational]) -> PiecewiseAffine:
        """Continuous interpolant through ``(knots[i], values[i])``."""
        knots = [Q(k) for k in knots]
        values = [Q(v) for v in values]
        if len(knots) != len(values):
            raise ValueError("knots and values differ in length")
        domain = Domain(knots[0], knots[-1])
        return cls(domain, tuple(knots), tuple(values[:-1]), tuple(values[1:]))

    @classmethod
    def affine(cls, domain: Domain, slope: Rational, intercept: Rational = 0) -> PiecewiseAffine:
        """x -> slope * x + intercept on the whole domain."""
        s, c = Q(slope), Q(intercept)
        return cls(domain, (domain.a, domain.b), (s * domain.a + c,), (s * domain.b + c,))

    # -- structure --------------------------------------------------------

    @property
    def n_pieces(self) -> int:
        return len(self.knots) - 1

    def pieces(self) -> Iterator[tuple[Fraction, Fraction, Fraction, Fraction]]:
        return zip(self.knots, self.knots[1:], self.lo_values, self.hi_values)

    @property
    def slopes(self) -> tuple[Fraction, ...]:
        return tuple((vh - vl) / (h - l) for l, h, vl, vh in self.pieces())

    @property
    def interior_knots(self) -> tuple[Fraction, ...]:
        return self.knots[1:-1]

    def _interp(self, i: int, x: Fraction) -> Fraction:
        l, h = self.knots[i], self.knots[i + 1]
        vl, vh = self.lo_values[i], self.hi_values[i]
        return vl + (vh - vl) * (x - l) / (h - l)

    def limit_left(self, x: Rational) -> Fraction:
        """u(x-), for a < x <= b."""
        x = Q(x)
        if not self.domain.a < x <= self.domain.b:
            raise ValueError(f"left limit undefined at {x}")
        i = bisect_left(self.knots, x) - 1
        if self.knots[i + 1] == x:
            return self.hi_values[i]
        return self._interp(i, x)

    def limit_right(self, x: Rational) -> Fraction:
        """u(x+), for a <= x < b."""
        x = Q(x)
        if not self.domain.a <= x < self.domain.b:
            raise ValueError(f"right limit undefined at {x}")
        i = bisect_right(self.knots, x) - 1
        if self.knots[i] == x:
            return self.lo_values[i]
        return self._interp(i, x)

    def limits(self, x: Rational) -> tuple[Fraction, Fraction]:
        """(u(x-), u(x+)) at an interior point."""
        return self.limit_left(x), self.limit_right(x)

    def jumps(self) -> list[tuple[Fraction, Fraction, Fraction]]:
        """Interior jump points as ``(x, u(x-), u(x+))``."""
        out = []
        for i, x in enumerate(self.interior_knots):
            left, right = self.hi_values[i], self.lo_values[i + 1]
            if left != right:
                out.append((x, left, right))
        return out

    @property
    def is_continuous(self) -> bool:
        return all(self.hi_values[i] == self.lo_values[i + 1] for i in range(self.n_pieces - 1))

    @property
    def sup_norm(self) -> Fraction:
        return max(max(abs(v) for v in self.lo_values), max(abs(v) for v in self.hi_values))

    @property
    def traces(self) -> tuple[Fraction, Fraction]:
        """(u(a+), u(b-))."""
        return self.lo_values[0], self.hi_values[-1]

    # -- reshaping --------------------------------------------------------

    def refine(self, points: Iterable[Rational]) -> PiecewiseAffine:
        """Same function, with extra knots inserted at ``points`` inside (a, b)."""
        a, b = self.domain.a, self.domain.b
        have = set(self.knots)
        extra = sorted({q for q in map(Q, points) if a < q < b and q not in have})
        if not extra:
            return self
        knots, lo, hi = [a], [], []
        j = 0
        for l, h, vl, vh in self.pieces():
            slope = None
            start_v = vl
            while j < len(extra) and extra[j] < h:
                x = extra[j]
                if slope is None:
                    slope = (vh - vl) / (h - l)
                v = vl + slope * (x - l)
                knots.append(x)
                lo.append(start_v)
                hi.append(v)
                start_v = v
                j += 1
            knots.append(h)
            lo.append(start_v)
            hi.append(vh)
        return PiecewiseAffine._trusted(self.domain, tuple(knots), tuple(lo), tuple(hi))

    def simplify(self) -> PiecewiseAffine:
        """Drop knots where the function continues as the same affine map."""
        knots = [self.knots[0]]
        lo = [self.lo_values[0]]
        hi = [self.hi_values[0]]
        for l, h, vl, vh in list(self.pieces())[1:]:
            pl, pvl, pvh = knots[-1], lo[-1], hi[-1]
            same_line = (
                pvh == vl
                and (pvh - pvl) * (h - l) == (vh - vl) * (l - pl)
            )
            if same_line:
                hi[-1] = vh
            else:
                knots.append(l)
                lo.append(vl)
                hi.append(vh)
        knots.append(self.knots[-1])
        return PiecewiseAffine._trusted(self.domain, tuple(knots), tuple(lo), tuple(hi))

    def equivalent(self, other: PiecewiseAffine) -> bool:
        """Equal as functions (ignoring redundant knots)."""
        return self.domain.same_interval(other.domain) and self.simplify() == other.simplify()

    def restricted(self, lo: Rational, hi: Rational) -> PiecewiseAffine:
        """The function on the sub-interval (lo, hi)."""
        lo, hi = Q(lo), Q(hi)
        if not self.domain.a <= lo < hi <= self.domain.b:
            raise ValueError(f"({lo}, {hi}) is not inside {self.domain}")
        f = self.refine([lo, hi])
        i0, i1 = f.knots.index(lo), f.knots.index(hi)
        return PiecewiseAffine(
            Domain(lo, hi), f.knots[i0 : i1 + 1], f.lo_values[i0:i1], f.hi_values[i0:i1]
        )

    # -- arithmetic -------------------------------------------------------

    def _aligned(self, other: PiecewiseAffine) -> tuple[PiecewiseAffine, PiecewiseAffine]:
        self.domain.require_same(other.domain)
        knots = _merge_knots(self.knots, other.knots)
        return self.refine(knots), other.refine(knots)

    def _zip(self, other: PiecewiseAffine, op) -> PiecewiseAffine:
        f, g = self._aligned(other)
        return PiecewiseAffine._trusted(
            f.domain,
            f.knots,
            tuple(op(x, y) for x, y in zip(f.lo_values, g.lo_values)),
            tuple(op(x, y) for x, y in zip(f.hi_values, g.hi_values)),
        )

    def __add__(self, other):
        if isinstance(other, PiecewiseAffine):
            return self._zip(other, lambda x, y: x + y)
        c = Q(other)
        return self.map_values(lambda v: v + c)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, PiecewiseAffine):
            return self._zip(other, lambda x, y: x - y)
        c = Q(other)
        return self.map_values(lambda v: v - c)

    def __neg__(self):
        return self.map_values(lambda v: -v)

    def __mul__(self, scalar):
        if isinstance(scalar, PiecewiseAffine):
            return NotImplemented  # products leave the affine class
        c = Q(scalar)
        return self.map_values(lambda v: c * v)

    __rmul__ = __mul__

    def map_values(self, fn) -> PiecewiseAffine:
        """Apply an affine map ``fn`` to the values (only valid for affine fn)."""
        return PiecewiseAffine._trusted(
            self.domain,
            self.knots,
            tuple(fn(v) for v in self.lo_values),
            tuple(fn(v) for v in self.hi_values),
        )

    def _envelope(self, other: PiecewiseAffine, pick_max: bool) -> PiecewiseAffine:
        f, g = self._aligned(other)
        crossings = []
        for i, (l, h) in enumerate(zip(f.knots, f.knots[1:])):
            d_lo = f.lo_values[i] - g.lo_values[i]
            d_hi = f.hi_values[i] - g.hi_values[i]
            if d_lo * d_hi < 0:
                crossings.append(l + (h - l) * d_lo / (d_lo - d_hi))
        f, g = f.refine(crossings), g.refine(crossings)
        lo, hi = [], []
        for i in range(f.n_pieces):
            # on each piece one function dominates; compare via the piece sum
            df = f.lo_values[i] + f.hi_values[i] - g.lo_values[i] - g.hi_values[i]
            use_f = (df >= 0) if pick_max else (df <= 0)
            src = f if use_f else g
            lo.append(src.lo_values[i])
            hi.append(src.hi_values[i])
        return PiecewiseAffine._trusted(f.domain, f.knots, tuple(lo), tuple(hi))

    def maximum(self, other: PiecewiseAffine) -> PiecewiseAffine:
        """Pointwise max(self, other)."""
        return self._envelope(other, pick_max=True)

    def minimum(self, other: PiecewiseAffine) -> PiecewiseAffine:
        """Pointwise min(self, other)."""
        return self._envelope(other, pick_max=False)

    def le(self, other: PiecewiseAffine) -> bool:
        """self <= other almost everywhere, decided on the common refinement."""
        f, g = self._aligned(other)
        return all(a <= b for a, b in zip(f.lo_values, g.lo_values)) and all(
            a <= b for a, b in zip(f.hi_values, g.hi_values)
        )

    def __str__(self):
        parts = [
            f"({format_rational(l)},{format_rational(h)}): {format_rational(vl)}->{format_rational(vh)}"
            for l, h, vl, vh in self.pieces()
        ]
        return "; ".join(parts)
