"""Searching for and checking certificates of weak super-1-harmonicity.

In one dimension the certifiable functions (with the upper representative)
are the ones that climb up to some point and descend afterwards.
"""

from bvpairing import MINUS, PLUS, STAR, PiecewiseAffine
from bvpairing.certify import certify_local, explain_local, unimodal_oracle, verify_local
from bvpairing.textio import serialize_certificate

tent = PiecewiseAffine.polyline([-1, 0, 1], [0, 1, 0])
valley = PiecewiseAffine.polyline([-1, 0, 1], [1, 0, 1])
spike = PiecewiseAffine.from_pieces([(-1, 0, -1, 0), (0, 1, 1, 0)])

cert = certify_local(tent)
print("tent certificate:")
print(serialize_certificate(cert))
print("checks out:", verify_local(cert.sigma, tent))

print("\nvalley:", certify_local(valley))
print(explain_local(valley))

# a jump sitting exactly at the peak: only the upper representative works
print("\nspike with a jump at its peak")
for rep in (PLUS, MINUS, STAR):
    found = certify_local(spike, rep)
    print(f"  {rep.value:<5}", "certified" if found else explain_local(spike, rep))

# the independent peak oracle agrees with the solver
print("\npeak of the spike:", unimodal_oracle(spike), "| valley:", unimodal_oracle(valley))
