"""Threshold fidelities next to the bundled published values."""
from ghzdistill.reference import lookup
from ghzdistill.threshold import find_threshold, lower_bound

for protocol, q, m in [("ss", 2, 2), ("ss", 2, 3), ("ms", 2, 3), ("cl", 2, 3)]:
    print(f"{protocol.upper()} q={q} m={m}  (no-go bound {float(lower_bound(m, q)):.4f})")
    for n in range(2, 8):
        res = find_threshold(protocol, q, m, n)
        ref = lookup(protocol, q, m, n)
        print(f"  n={n}: {res.rounded(4)}   published {ref}   delta {res.rounded(4) - ref:+.4f}")

for protocol in ("d1", "d2"):
    res = find_threshold(protocol, 2, 3)
    print(f"{protocol.upper()} q=2 m=3: {res.rounded(4)}  published {lookup(protocol, 2, 3)}")
