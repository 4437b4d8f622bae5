"""Pairings of a field with a BV gradient, computed exactly.

Run: python demos/01_pairings.py
"""

from fractions import Fraction as F

from bvpairing import MINUS, PLUS, STAR, Domain, PiecewiseAffine, TestFunction
from bvpairing.bvfunc import gradient_measure, step
from bvpairing.measure import evaluate, serialize_measure
from bvpairing.pairing import (
    dirichlet_gradient,
    pair_global,
    pair_local,
    pair_local_def_eval,
    pair_modified,
)

unit = Domain(0, 1)

# u = x against a constant field: the pairing is just sigma * u' dx
u = PiecewiseAffine.affine(unit, 1)
half = PiecewiseAffine.constant(unit, F(1, 2))
print("pair(1/2, x)      :", serialize_measure(pair_local(half, u)))

# a unit up-jump at 1/2, paired with a field that flips sign at the jump
jump = step(unit, F(1, 2), 0, 1)
flip = step(unit, F(1, 2), 1, -1)
print("Du                :", serialize_measure(gradient_measure(jump)))
for rep in (PLUS, MINUS, STAR):
    mu = pair_local(flip, jump, rep)
    print(f"pair with u^{rep.value:<5}  :", serialize_measure(mu) or "0")

# the same number from the distributional definition, tested against a tent
tent = TestFunction.tent(unit, 0, F(1, 2), 1)
print("closed form       :", evaluate(pair_local(flip, jump, PLUS), tent))
print("definition        :", pair_local_def_eval(flip, jump, PLUS, tent))

# up to the boundary: trace differences show up as endpoint atoms
zero = PiecewiseAffine.constant(unit, 0)
one = PiecewiseAffine.constant(unit, 1)
sigma = PiecewiseAffine.constant(unit, F(3, 4))
print("global pairing    :", serialize_measure(pair_global(sigma, one, zero)).replace("\n", "; "))
print("D_u0 u            :", serialize_measure(dirichlet_gradient(one, zero)).replace("\n", "; "))

# the modified pairing charges [u - u0]_+ (1 - sigma_n) on the boundary
print("modified, sigma=0 :", serialize_measure(pair_modified(zero, one, zero)).replace("\n", "; "))
