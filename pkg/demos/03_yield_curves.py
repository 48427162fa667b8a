"""Yields of the three concatenated protocols and the two single-copy baselines."""
from fractions import Fraction

from ghzdistill.yields import compute_yield

q, m, n = 2, 3, 3
print(f"q={q} m={m} n={n}")
print("   F       SS         MS         CL         D1         D2")
for i in range(11):
    F = Fraction(7, 10) + Fraction(3 * i, 100)
    row = [compute_yield(p, q, m, n, F).value for p in ("ss", "ms", "cl", "d1", "d2")]
    print(f"{float(F):.2f}  " + "  ".join(f"{float(v):+.6f}" for v in row))

# at F = 1 each concatenated protocol keeps one perfect state per block of n
print("D at F=1:", [str(compute_yield(p, q, m, n, 1).value)[:10] for p in ("ss", "ms", "cl")])
