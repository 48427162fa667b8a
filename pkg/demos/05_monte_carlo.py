"""Sampling the channel and running the MXOR circuit against the exact tables."""
from fractions import Fraction

import numpy as np

from ghzdistill.channel import ChannelParams
from ghzdistill.oracle import simulate_protocol

params = ChannelParams(2, 3, 3, Fraction(85, 100))
sim = simulate_protocol(params, samples=10**6, seed=0)
report = sim.compare(sigmas=3.0)
z = np.array([r["z"] for r in report])

print(f"{sim.num_cells} cells, {sim.samples} samples, seed {sim.seed}")
print(f"max |z| = {np.abs(z).max():.3f}, cells beyond 3 sigma: {(np.abs(z) > 3).sum()}")
# with 128 cells about 0.35 of them are expected beyond 3 sigma by chance
print(f"expected by chance: {sim.num_cells * 0.0027:.2f}")
print("largest cells:")
for r in sorted(report, key=lambda r: -r["expected"])[:5]:
    print(f"  {r['cell']}: exact {float(r['expected']):.5f}  observed {r['observed']:.5f}")
