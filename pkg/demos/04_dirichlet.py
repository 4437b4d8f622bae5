"""Boundary data: the modified pairing, its failure-free limit theorem, and
what goes wrong without the modification."""

from fractions import Fraction as F

from bvpairing import Domain, PiecewiseAffine
from bvpairing.certify import (
    certify_dirichlet,
    certify_dirichlet_unmodified,
    explain_dirichlet,
    transfer_datum,
)
from bvpairing.harness import boundary_ramp_family, run_compactness_dirichlet, search_unmodified_witness

unit = Domain(0, 1)
zero = PiecewiseAffine.constant(unit, 0)
one = PiecewiseAffine.constant(unit, 1)

# above the datum nothing is demanded of sigma at the boundary
print("u = 1, u0 = 0   :", "certified" if certify_dirichlet(one, zero) else "no")
# below the datum at both ends would need sigma_n = -1 twice
print("u = -1, u0 = 0  :", explain_dirichlet(-one, zero))

# ramps min(1, k dist) with zero boundary values increase to u = 1
ramps = boundary_ramp_family(unit, range(1, 7))
print()
print(run_compactness_dirichlet(ramps, [zero] * len(ramps), one, zero).to_text())

# bounded exhaustive search for a limit that the unmodified pairing rejects
print()
search = search_unmodified_witness()
print(search.to_text())
if search.first is not None:
    w = search.first
    print("modified:", bool(certify_dirichlet(w, zero)),
          "| unmodified:", bool(certify_dirichlet_unmodified(w, zero)))

# lowering the datum never hurts; raising it past a trace does
cert = certify_dirichlet(one, zero)
for new in (F(1, 2), F(-1), F(2)):
    ok = transfer_datum(cert.sigma, one, zero, PiecewiseAffine.constant(unit, new))
    print(f"transfer to u0 = {new}: {ok}")
