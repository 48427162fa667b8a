"""Stabilizer-eigenvalue error labels of noisy GHZ copies.

A copy shared by ``m`` players is described by ``(beta, alpha)`` where
``beta`` is the phase coordinate and ``alpha`` holds the ``m - 1`` bit-flip
coordinates.  All arithmetic is in the ring Z/qZ.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence


class DimensionError(ValueError):
    """Labels with incompatible ``(q, m)`` were combined."""


@dataclass(frozen=True)
class RingK:
    """The ring Z/qZ; q = 2 is GF(2)."""

    q: int

    def __post_init__(self):
        if not isinstance(self.q, int) or self.q < 2:
            raise ValueError(f"modulus must be an integer >= 2, got {self.q!r}")

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.q

    def neg(self, a: int) -> int:
        return (-a) % self.q

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.q

    def elements(self) -> range:
        return range(self.q)

    def vectors(self, length: int) -> Iterator[tuple[int, ...]]:
        """All vectors of K^length in lexicographic order."""
        return itertools.product(range(self.q), repeat=length)


@dataclass(frozen=True)
class ErrorLabel:
    """Error ``(beta, alpha)`` of one GHZ copy over Z/qZ."""

    q: int
    beta: int
    alpha: tuple[int, ...]

    def __post_init__(self):
        if self.q < 2:
            raise ValueError("q must be >= 2")
        if len(self.alpha) < 1:
            raise ValueError("alpha needs m - 1 >= 1 coordinates")
        object.__setattr__(self, "alpha", tuple(int(a) for a in self.alpha))
        if not 0 <= self.beta < self.q or any(not 0 <= a < self.q for a in self.alpha):
            raise ValueError(f"label entries must lie in 0..{self.q - 1}")

    @property
    def m(self) -> int:
        return len(self.alpha) + 1

    def is_identity(self) -> bool:
        return self.beta == 0 and not any(self.alpha)

    @classmethod
    def identity(cls, q: int, m: int) -> "ErrorLabel":
        return cls(q, 0, (0,) * (m - 1))

    def __str__(self):
        return f"({self.beta},({','.join(map(str, self.alpha))}))"


LabelTuple = Sequence[ErrorLabel]


def all_labels(q: int, m: int) -> Iterator[ErrorLabel]:
    """Every label of K x K^(m-1), identity first."""
    for beta in range(q):
        for alpha in itertools.product(range(q), repeat=m - 1):
            yield ErrorLabel(q, beta, alpha)


def _check_pair(a: ErrorLabel, b: ErrorLabel):
    if a.q != b.q or len(a.alpha) != len(b.alpha):
        raise DimensionError(
            f"labels differ in (q, m): ({a.q}, {a.m}) vs ({b.q}, {b.m})")


def check_tuple(labels: LabelTuple) -> tuple[int, int]:
    """Return the common ``(q, m)`` of ``labels`` or raise DimensionError."""
    if len(labels) == 0:
        raise DimensionError("empty label tuple")
    first = labels[0]
    for lab in labels[1:]:
        _check_pair(first, lab)
    return first.q, first.m


def mxor(source: ErrorLabel, target: ErrorLabel) -> tuple[ErrorLabel, ErrorLabel]:
    """Multilateral XOR acting on a (source, target) pair of labels.

    Returns ``((b1 + b2, a1), (b2, a1 - a2))`` computed in Z/qZ.  For q > 2
    the target update follows the ``|i, j> -> |i, i - j>`` measurement gate.
    """
    _check_pair(source, target)
    q = source.q
    new_source = ErrorLabel(q, (source.beta + target.beta) % q, source.alpha)
    new_target = ErrorLabel(
        q, target.beta,
        tuple((a1 - a2) % q for a1, a2 in zip(source.alpha, target.alpha)))
    return new_source, new_target


def decode_repetition(labels: LabelTuple):
    """Syndrome and residual error after the [n, 1, n]_q repetition decoder.

    Copy 0 is the source.  The syndrome has components
    ``s_j = alpha_j - alpha_0`` for ``j = 1..n-1`` and the residual label on
    the source is ``(sum_j beta_j, alpha_0)``.

    Returns
    -------
    syndrome : tuple of tuple of int
        ``n - 1`` vectors of K^(m-1).
    residual : ErrorLabel
    """
    q, _ = check_tuple(labels)
    if len(labels) < 2:
        raise ValueError("repetition decoding needs n >= 2 copies")
    alpha0 = labels[0].alpha
    syndrome = tuple(
        tuple((a - a0) % q for a, a0 in zip(lab.alpha, alpha0))
        for lab in labels[1:])
    delta = sum(lab.beta for lab in labels) % q
    return syndrome, ErrorLabel(q, delta, alpha0)


def depolarization_weight(labels: LabelTuple) -> int:
    """Number of copies carrying a non-identity label."""
    return sum(1 for lab in labels if not lab.is_identity())
