"""Depolarizing channel acting on GHZ copies, with exact rational fidelity."""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from numbers import Rational

from .labels import DimensionError, ErrorLabel


def parse_fidelity(value) -> Fraction:
    """Convert ``value`` to an exact Fraction.

    Accepts ints, Fractions, ``"p/q"`` strings and decimal literals such as
    ``"0.8097"``.  Floats are refused: their binary expansion is rarely the
    value the caller meant.
    """
    if isinstance(value, bool):
        raise TypeError("fidelity cannot be a bool")
    if isinstance(value, float):
        raise TypeError(
            f"fidelity must be exact; pass '{value!r}' as a string or Fraction")
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, Decimal):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, _, den = text.partition("/")
            try:
                return Fraction(int(num), int(den))
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"bad fidelity {value!r}") from exc
        try:
            dec = Decimal(text)
        except InvalidOperation as exc:
            raise ValueError(f"bad fidelity {value!r}") from exc
        if not dec.is_finite():
            raise ValueError(f"bad fidelity {value!r}")
        return Fraction(dec)
    raise TypeError(f"cannot interpret {value!r} as a fidelity")


@dataclass(frozen=True)
class ChannelParams:
    """``q``-ary GHZ copies among ``m`` players, blocks of ``n``, fidelity ``F``."""

    q: int
    m: int
    n: int
    F: Fraction

    def __post_init__(self):
        for name, lo in (("q", 2), ("m", 2), ("n", 2)):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < lo:
                raise ValueError(f"{name} must be an integer >= {lo}, got {v!r}")
        F = parse_fidelity(self.F)
        if not 0 < F <= 1:
            raise ValueError(f"fidelity must lie in (0, 1], got {F}")
        object.__setattr__(self, "F", F)

    @property
    def num_labels(self) -> int:
        return self.q ** self.m

    @property
    def x(self) -> Fraction:
        """Probability of each individual non-identity label."""
        return (1 - self.F) / (self.q ** self.m - 1)

    @property
    def y(self) -> Fraction:
        return self.F

    def with_fidelity(self, F) -> "ChannelParams":
        return ChannelParams(self.q, self.m, self.n, F)

    def as_dict(self) -> dict:
        return {"q": self.q, "m": self.m, "n": self.n, "F": str(self.F)}


def xy_params(params: ChannelParams) -> tuple[Fraction, Fraction]:
    """Enumerator substitution ``x = (1 - F)/(q^m - 1)``, ``y = F``."""
    return params.x, params.y


def label_probability(label: ErrorLabel, params: ChannelParams) -> Fraction:
    if label.q != params.q or label.m != params.m:
        raise DimensionError(
            f"label has (q, m) = ({label.q}, {label.m}), "
            f"channel has ({params.q}, {params.m})")
    return params.F if label.is_identity() else params.x
