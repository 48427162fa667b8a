"""Class-based yields against a per-raw-syndrome evaluation built from tuple enumeration."""
from fractions import Fraction

import mpmath

from ghzdistill.channel import ChannelParams
from ghzdistill.oracle import exhaustive_yield
from ghzdistill.yields import compute_yield

for q, m, n in [(2, 3, 2), (2, 3, 3), (3, 3, 2)]:
    params = ChannelParams(q, m, n, Fraction(4, 5))
    for protocol in ("ss", "ms", "cl"):
        fast = compute_yield(protocol, q, m, n, params.F).value
        slow = exhaustive_yield(protocol, params)
        print(f"q={q} m={m} n={n} {protocol}: {mpmath.nstr(fast, 15)}  |diff| = {mpmath.nstr(abs(fast - slow), 3)}")
