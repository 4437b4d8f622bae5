"""Increasing limits of certified functions stay certified, but only for u^+.

Each member of the family replaces the jump of the spike by a ramp of width
1/k; the members are continuous, so every representative certifies them.
"""

import sys

from bvpairing import MINUS, PLUS, STAR, PiecewiseAffine
from bvpairing.harness import ramp_family, run_compactness
from bvpairing.plot import svg_plot

spike = PiecewiseAffine.from_pieces([(-1, 0, -1, 0), (0, 1, 1, 0)])
family = ramp_family(spike, range(1, 9))

for rep in (PLUS, MINUS, STAR):
    print(run_compactness(family, spike, rep).to_text())
    print()

# optional picture: python demos/03_compactness.py family.svg
if len(sys.argv) > 1:
    curves = {f"u_{k}": f for k, f in enumerate(family[::3], 1)}
    curves["limit"] = spike
    with open(sys.argv[1], "w") as fh:
        fh.write(svg_plot(curves, title="ramps increasing to the spike"))
    print("wrote", sys.argv[1])
