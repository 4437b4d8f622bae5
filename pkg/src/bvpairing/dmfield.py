"""Bounded divergence-measure fields on an interval.

A field is a :class:`PiecewiseAffine` sigma; its divergence is the measure with
the slopes as density and the jumps of sigma as atoms.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import NamedTuple

from .bvfunc import gradient_measure
from .core import PiecewiseAffine
from .measure import SignedMeasure

Field = PiecewiseAffine


class PiMultiple(NamedTuple):
    """The exact real number ``coefficient * pi**pi_power``."""

    coefficient: Fraction
    pi_power: int

    def rational(self) -> Fraction:
        if self.pi_power != 0:
            raise ValueError(f"{self} is irrational")
        return self.coefficient

    def __float__(self):
        import math

        return float(self.coefficient) * math.pi**self.pi_power


def dimension_constant(n: int) -> PiMultiple:
    """n * omega_n / omega_{n-1}, with omega_n the volume of the unit ball in R^n.

    Even n give a rational multiple of pi, odd n a rational number.
    """
    if n < 1:
        raise ValueError("dimension must be a positive integer")
    if n % 2 == 0:
        k = n // 2
        ratio = Fraction(factorial(2 * k), 4**k * factorial(k) ** 2)
        return PiMultiple(n * ratio, 1)
    k = (n - 1) // 2
    ratio = Fraction(factorial(k) * factorial(k + 1) * 4 ** (k + 1), factorial(2 * k + 2))
    return PiMultiple(n * ratio, 0)


def divergence(sigma: Field) -> SignedMeasure:
    return gradient_measure(sigma)


def normal_trace(sigma: Field) -> tuple[Fraction, Fraction]:
    """Inward normal trace (sigma(a+), -sigma(b-))."""
    left, right = sigma.traces
    return left, -right


def sinfty_check(sigma: Field) -> bool:
    """|sigma| <= 1 a.e.; affine pieces attain their extremes at the ends."""
    return sigma.sup_norm <= 1


def is_nonincreasing(sigma: Field) -> bool:
    """Div sigma <= 0, which in one dimension means sigma does not increase."""
    return all(s <= 0 for s in sigma.slopes) and all(r < l for _, l, r in sigma.jumps())


def div_bound_check(sigma: Field) -> tuple[bool, Fraction, Fraction]:
    """Check (-Div sigma)(Omega) <= C(1) * ||sigma|| * H^0(boundary).

    Returns ``(holds, mass, bound)``. A ``False`` here is a bug, not a finding.
    """
    if not is_nonincreasing(sigma):
        raise ValueError("Div sigma is not a nonpositive measure")
    mass = -divergence(sigma).total_mass()
    bound = dimension_constant(1).rational() * sigma.sup_norm * sigma.domain.boundary_count
    return mass <= bound, mass, bound
