"""Threshold fidelities by bisection, plus the analytic no-go bound."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction

import mpmath

from .channel import parse_fidelity
from .classes import DEFAULT_CLASS_LIMIT
from .yields import DEFAULT_PRECISION, compute_yield

DEFAULT_TOL = Fraction(1, 10**6)
# below this |D| the sign is re-checked at doubled precision
SIGN_GUARD_BITS = 80
MAX_PRECISION = 4096


class NoThresholdError(RuntimeError):
    """The yield does not change sign across the initial bracket."""

    def __init__(self, protocol, lo, hi, d_lo, d_hi):
        self.lo, self.hi, self.d_lo, self.d_hi = lo, hi, d_lo, d_hi
        super().__init__(
            f"{protocol}: no sign change on [{float(lo):.6f}, {float(hi):.6f}] "
            f"(D = {mpmath.nstr(d_lo, 8)}, {mpmath.nstr(d_hi, 8)})")


@dataclass
class ThresholdResult:
    protocol: str
    params: dict
    lo: Fraction
    hi: Fraction
    tolerance: Fraction
    iterations: int
    history: list = field(default_factory=list, repr=False)
    elapsed_s: float = 0.0
    precision_bits: int = DEFAULT_PRECISION
    bracket_extended: bool = False

    @property
    def F_min(self) -> Fraction:
        """Midpoint of the final bracket."""
        return (self.lo + self.hi) / 2

    def rounded(self, places: int = 4) -> Decimal:
        """F_min rounded half-even, for comparison with published tables."""
        mid = self.F_min
        exact = Decimal(mid.numerator) / Decimal(mid.denominator)
        return exact.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN)

    def __float__(self):
        return float(self.F_min)

    def as_dict(self) -> dict:
        return {
            "protocol": self.protocol,
            **self.params,
            "F_min": str(self.rounded(4)),
            "F_min_decimal": mpmath.nstr(mpmath.mpf(self.F_min.numerator) / self.F_min.denominator, 12),
            "bracket": [str(self.lo), str(self.hi)],
            "bracket_width": float(self.hi - self.lo),
            "tolerance": str(self.tolerance),
            "iterations": self.iterations,
            "precision_bits": self.precision_bits,
            "bracket_extended": self.bracket_extended,
        }


def lower_bound(m: int, q: int = 2) -> Fraction:
    """Fidelity at or below which no one-way protocol can purify.

    ``1 - (q^m - 1) / (4 (q - 1)) * (q^(m-1) + 1/(m-1))^-1``.
    """
    if m < 2 or q < 2:
        raise ValueError("need m >= 2 and q >= 2")
    return 1 - Fraction(q**m - 1, 4 * (q - 1)) / (q ** (m - 1) + Fraction(1, m - 1))


def average_error_rate(m: int, q: int = 2, F=Fraction(1)) -> Fraction:
    """Mean number of erroneous particles per non-reference player.

    ``(q - 1)(1 - F)/(q^m - 1) * (q^(m-1) + 1/(m-1))``; for qubits this is
    ``(1 - F)/(2^m - 1) * (2^(m-1) + 1/(m-1))``.  Equal to 1/4 exactly at
    :func:`lower_bound`.
    """
    if m < 2 or q < 2:
        raise ValueError("need m >= 2 and q >= 2")
    F = parse_fidelity(F)
    return (q - 1) * (1 - F) / (q**m - 1) * (q ** (m - 1) + Fraction(1, m - 1))


def _signed_yield(protocol, q, m, n, F, precision, class_limit):
    """Yield at F, re-evaluated at higher precision while too close to zero."""
    prec = precision
    while True:
        value = compute_yield(protocol, q, m, n, F, precision=prec,
                              class_limit=class_limit).value
        if abs(value) >= mpmath.mpf(2) ** -SIGN_GUARD_BITS or prec >= MAX_PRECISION:
            return value, prec
        prec *= 2


def find_threshold(protocol: str, q: int, m: int, n: int | None = None,
                   tol=DEFAULT_TOL, precision: int = DEFAULT_PRECISION,
                   class_limit: int = DEFAULT_CLASS_LIMIT,
                   bracket: tuple | None = None) -> ThresholdResult:
    """Bisect for the smallest fidelity with positive yield.

    The default bracket is ``[max(F_bound, 1/q^m), 1]``.  For q > 2 the
    yield can already be positive at F_bound; the lower end then falls back
    to ``1/q^m`` (where every yield is negative) and ``bracket_extended`` is
    set on the result.  Only the bracket invariant ``D(lo) <= 0 < D(hi)`` is
    maintained; monotonicity of the yield in F is not assumed.
    """
    start = time.perf_counter()
    tol = parse_fidelity(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if bracket is None:
        lo = max(lower_bound(m, q), Fraction(1, q**m))
        hi = Fraction(1)
    else:
        lo, hi = (parse_fidelity(b) for b in bracket)
    d_lo, _ = _signed_yield(protocol, q, m, n, lo, precision, class_limit)
    extended = False
    if bracket is None and d_lo > 0 and lo > Fraction(1, q**m):
        lo = Fraction(1, q**m)
        d_lo, _ = _signed_yield(protocol, q, m, n, lo, precision, class_limit)
        extended = True
    d_hi, _ = _signed_yield(protocol, q, m, n, hi, precision, class_limit)
    if not (d_lo <= 0 < d_hi):
        raise NoThresholdError(protocol, lo, hi, d_lo, d_hi)
    history = [(lo, hi)]
    iterations = 0
    max_prec = precision
    while hi - lo > tol:
        mid = (lo + hi) / 2
        d_mid, used = _signed_yield(protocol, q, m, n, mid, precision, class_limit)
        max_prec = max(max_prec, used)
        if d_mid > 0:
            hi = mid
        else:
            lo = mid
        history.append((lo, hi))
        iterations += 1
    params = {"q": q, "m": m}
    if n is not None and protocol.lower() in ("ss", "ms", "cl"):
        params["n"] = n
    return ThresholdResult(protocol.lower(), params, lo, hi, tol, iterations,
                           history, time.perf_counter() - start, max_prec, extended)
