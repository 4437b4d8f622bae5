"""Exact feasibility for small systems of linear constraints.

Two engines: interval propagation for chain-shaped systems (unit bounds plus
``x[i+1] <= x[i]`` links), and Fourier-Motzkin elimination for anything else.
Both complete a feasible system greedily, taking the largest admissible value
for each variable from first to last.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import Q, Rational, format_rational


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[tuple[int, Fraction], ...]
    sense: str  # "<=", ">=" or "=="
    rhs: Fraction
    label: str = ""

    def value(self, x: Sequence[Fraction]) -> Fraction:
        return sum((c * x[i] for i, c in self.coeffs), Fraction(0))

    def satisfied_by(self, x: Sequence[Fraction]) -> bool:
        lhs = self.value(x)
        if self.sense == "<=":
            return lhs <= self.rhs
        if self.sense == ">=":
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass
class Solution:
    values: list[Fraction] | None
    conflict: str | None = None
    method: str = ""

    @property
    def feasible(self) -> bool:
        return self.values is not None


@dataclass
class ConstraintSystem:
    """Linear constraints over rational variables ``x[0..n)``.

    ``positions`` optionally attaches a location to each variable, used only
    in infeasibility messages.
    """

    names: list[str]
    positions: list[Fraction] = field(default_factory=list)
    constraints: list[Constraint] = field(default_factory=list)
    partition: tuple[Fraction, ...] = ()

    @property
    def n_vars(self) -> int:
        return len(self.names)

    def add(self, coeffs: dict[int, Rational], sense: str, rhs: Rational, label: str = "") -> None:
        if sense not in ("<=", ">=", "=="):
            raise ValueError(f"bad sense {sense!r}")
        items = tuple(sorted((i, Q(c)) for i, c in coeffs.items() if Q(c) != 0))
        for i, _ in items:
            if not 0 <= i < self.n_vars:
                raise IndexError(f"variable {i} out of range")
        self.constraints.append(Constraint(items, sense, Q(rhs), label))

    def pin(self, i: int, value: Rational, label: str = "") -> None:
        self.add({i: 1}, "==", value, label)

    def bound(self, i: int, lo: Rational, hi: Rational, label: str = "") -> None:
        self.add({i: 1}, ">=", lo, label)
        self.add({i: 1}, "<=", hi, label)

    def link(self, i: int, label: str = "") -> None:
        """x[i+1] <= x[i]."""
        self.add({i + 1: 1, i: -1}, "<=", 0, label)

    def is_chain(self) -> bool:
        for c in self.constraints:
            if len(c.coeffs) == 1:
                continue
            if len(c.coeffs) != 2 or c.sense != "<=" or c.rhs != 0:
                return False
            (i, ci), (j, cj) = c.coeffs
            if not (j == i + 1 and ci == -1 and cj == 1):
                return False
        return True

    def satisfied_by(self, x: Sequence[Fraction]) -> bool:
        return all(c.satisfied_by(x) for c in self.constraints)

    def pinned(self) -> bool:
        """True if some constraint is an equality."""
        return any(c.sense == "==" for c in self.constraints)

    def solve(self, method: str = "auto") -> Solution:
        if method == "auto":
            method = "propagate" if self.is_chain() else "fourier-motzkin"
        if method == "propagate":
            return propagate(self)
        if method == "fourier-motzkin":
            return fourier_motzkin(self)
        raise ValueError(f"unknown method {method!r}")


def _signed(v: Fraction) -> str:
    return ("+" if v > 0 else "") + format_rational(v)


def propagate(system: ConstraintSystem) -> Solution:
    """Interval propagation along a chain ``x[0] >= x[1] >= ...`` (where linked)."""
    if not system.is_chain():
        raise ValueError("system is not chain-shaped")
    n = system.n_vars
    lo: list[Fraction | None] = [None] * n
    hi: list[Fraction | None] = [None] * n
    lo_src = [""] * n
    hi_src = [""] * n
    linked = [False] * max(n - 1, 0)
    for c in system.constraints:
        if len(c.coeffs) == 2:
            linked[c.coeffs[0][0]] = True
            continue
        (i, a), = c.coeffs
        bound = c.rhs / a
        sense = c.sense
        if a < 0 and sense != "==":
            sense = "<=" if sense == ">=" else ">="
        if sense in ("<=", "=="):
            if hi[i] is None or bound < hi[i]:
                hi[i], hi_src[i] = bound, c.label
        if sense in (">=", "=="):
            if lo[i] is None or bound > lo[i]:
                lo[i], lo_src[i] = bound, c.label

    # forward: upper bounds flow to the right
    hp, hp_src, hp_var = list(hi), list(hi_src), list(range(n))
    for i in range(1, n):
        if linked[i - 1] and hp[i - 1] is not None and (hp[i] is None or hp[i - 1] < hp[i]):
            hp[i], hp_src[i], hp_var[i] = hp[i - 1], hp_src[i - 1], hp_var[i - 1]
    for j in range(n):
        if lo[j] is not None and hp[j] is not None and lo[j] > hp[j]:
            i = hp_var[j]
            where = system.positions[j] if system.positions else system.names[j]
            if i == j:
                msg = (f"infeasible: conflicting demands on {system.names[j]} "
                       f"({hi_src[j]}; {lo_src[j]})")
            else:
                msg = (f"infeasible: {_signed(hp[j])} demand precedes {_signed(lo[j])} demand "
                       f"at {format_rational(where) if system.positions else where} "
                       f"({hp_src[j]}; {lo_src[j]})")
            return Solution(None, msg, "propagate")
    # backward: lower bounds flow to the left
    lp = list(lo)
    for i in range(n - 2, -1, -1):
        if linked[i] and lp[i + 1] is not None and (lp[i] is None or lp[i + 1] > lp[i]):
            lp[i] = lp[i + 1]
    values: list[Fraction] = []
    for i in range(n):
        cap = hp[i]
        if i > 0 and linked[i - 1]:
            cap = values[-1] if cap is None else min(cap, values[-1])
        if cap is None:
            cap = lp[i] if lp[i] is not None else Fraction(0)
        values.append(cap)
    assert system.satisfied_by(values), "propagation produced an infeasible point"
    return Solution(values, None, "propagate")


def _normalise(row: tuple[tuple[Fraction, ...], Fraction]):
    coeffs, rhs = row
    for c in coeffs:
        if c != 0:
            s = abs(c)
            return tuple(x / s for x in coeffs), rhs / s
    return coeffs, rhs


def fourier_motzkin(system: ConstraintSystem) -> Solution:
    """Decide feasibility by eliminating variables from last to first."""
    n = system.n_vars
    rows: set[tuple[tuple[Fraction, ...], Fraction]] = set()
    for c in system.constraints:
        dense = [Fraction(0)] * n
        for i, a in c.coeffs:
            dense[i] = a
        if c.sense in ("<=", "=="):
            rows.add(_normalise((tuple(dense), c.rhs)))
        if c.sense in (">=", "=="):
            rows.add(_normalise((tuple(-a for a in dense), -c.rhs)))

    stages = [rows]  # stages[k] involves variables 0 .. n-1-k
    for k in range(n - 1, -1, -1):
        pos, neg, rest = [], [], set()
        for coeffs, rhs in rows:
            if coeffs[k] > 0:
                pos.append((coeffs, rhs))
            elif coeffs[k] < 0:
                neg.append((coeffs, rhs))
            else:
                rest.add((coeffs, rhs))
        for pc, pr in pos:
            for nc, nr in neg:
                a, b = pc[k], -nc[k]
                combo = tuple(b * x + a * y for x, y in zip(pc, nc))
                rest.add(_normalise((combo, b * pr + a * nr)))
        for coeffs, rhs in rest:
            if all(c == 0 for c in coeffs) and rhs < 0:
                return Solution(None, "infeasible: Fourier-Motzkin derived 0 <= "
                                f"{format_rational(rhs)}", "fourier-motzkin")
        rows = rest
        stages.append(rows)

    values: list[Fraction] = []
    for k in range(n):
        stage = stages[n - 1 - k]  # involves variables 0..k
        lo_b: Fraction | None = None
        hi_b: Fraction | None = None
        for coeffs, rhs in stage:
            a = coeffs[k]
            if a == 0:
                continue
            rest = rhs - sum((coeffs[i] * values[i] for i in range(k)), Fraction(0))
            bound = rest / a
            if a > 0:
                hi_b = bound if hi_b is None else min(hi_b, bound)
            else:
                lo_b = bound if lo_b is None else max(lo_b, bound)
        if hi_b is not None:
            values.append(hi_b)
        else:
            values.append(lo_b if lo_b is not None else Fraction(0))
    assert system.satisfied_by(values), "back-substitution produced an infeasible point"
    return Solution(values, None, "fourier-motzkin")
