"""Constants and bounds: divergences with a sign, zero extension, and the
continuous approximation from above."""

from fractions import Fraction as F

from bvpairing import Domain, PiecewiseAffine
from bvpairing.bvfunc import approx_from_above, extend_by_zero, extension_bound_check, step
from bvpairing.dmfield import dimension_constant, div_bound_check
from bvpairing.core import format_rational
from bvpairing.textio import serialize_function

for n in range(1, 7):
    coef, power = dimension_constant(n)
    print(f"n = {n}: {coef}" + (" pi" if power else ""), f"~ {float(dimension_constant(n)):.6f}")

unit = Domain(0, 1)
# a sign flip is the tightest 1-D case: half of the general constant
flip = step(unit, F(1, 2), 1, -1)
ok, mass, bound = div_bound_check(flip)
print(f"\n(-Div sigma)(Omega) = {mass} <= {bound}: {ok}")

u = PiecewiseAffine.constant(unit, F(3, 2))
ext = extend_by_zero(u, Domain(-1, 2))
for x, left, right in ext.jumps():
    print(f"extension jumps at {format_rational(x)}: {format_rational(left)} -> {format_rational(right)}")
ok, mass, bound = extension_bound_check(u, ext)
print(f"|D(1_Omega u)|(boundary) = {mass} <= {bound}: {ok}")

# v_ell is continuous, sits above u and hits u^+ at the jump
jumpy = PiecewiseAffine.from_pieces([(0, F(1, 2), 0, F(1, 2)), (F(1, 2), 1, 2, 1)])
for ell in (1, 3, 6):
    v = approx_from_above(jumpy, ell)
    print(f"\nell = {ell}:")
    print(serialize_function(v, "v"))
