"""Equivalence classes of repetition-code syndromes.

A raw syndrome is ``(s_1, ..., s_{n-1})`` with each ``s_j`` in K^(m-1); the
source position carries ``s_0 = 0``.  Every probability needed downstream
depends on a syndrome only through

* the multiset of values ``{s_0, ..., s_{n-1}}`` (enough for all yields), or
* its k-profile ``f(i) = #{t : k(s, t) = i}`` (enough for the full-table
  entropy), which is determined by the multiplicities alone.

Both granularities are enumerated here with exact class cardinalities so
sums over ``q^((m-1)(n-1))`` raw syndromes collapse to sums over classes.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

DEFAULT_CLASS_LIMIT = 10**8


class ClassLimitError(RuntimeError):
    """The requested enumeration exceeds the configured class budget."""

    def __init__(self, estimate: int, limit: int, what: str = "classes"):
        self.estimate = estimate
        self.limit = limit
        super().__init__(
            f"{what}: estimated {estimate} classes exceeds limit {limit}")


@dataclass(frozen=True)
class SyndromeMultiset:
    """Value multiset of ``(s_0 = 0, s_1, ..., s_{n-1})``.

    ``entries`` pairs each distinct value with its multiplicity, sorted by
    value.  ``cardinality`` is the number of raw syndromes in the class.
    """

    q: int
    m: int
    n: int
    entries: tuple[tuple[tuple[int, ...], int], ...]
    cardinality: int

    def __post_init__(self):
        if sum(c for _, c in self.entries) != self.n:
            raise ValueError("multiplicities must sum to n")
        zero = (0,) * (self.m - 1)
        if self.multiplicity(zero) < 1:
            raise ValueError("the zero value (source position) must be present")

    def multiplicity(self, value: tuple[int, ...]) -> int:
        for v, c in self.entries:
            if v == value:
                return c
        return 0

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self.entries)

    @property
    def is_zero(self) -> bool:
        return len(self.entries) == 1

    def member(self) -> tuple[tuple[int, ...], ...]:
        """One raw syndrome ``(s_1, ..., s_{n-1})`` belonging to the class."""
        zero = (0,) * (self.m - 1)
        out = []
        for v, c in self.entries:
            out.extend([v] * (c - 1 if v == zero else c))
        return tuple(out)


@dataclass(frozen=True)
class KProfile:
    """Distribution ``f(i)`` of ``k(s, t)`` over ``t`` in K^(m-1).

    ``f[i]`` for ``i = 0..n``; ``sum(f) == q^(m-1)``.
    """

    q: int
    m: int
    n: int
    f: tuple[int, ...]
    cardinality: int

    def __post_init__(self):
        if len(self.f) != self.n + 1:
            raise ValueError("profile needs n + 1 entries")
        if sum(self.f) != self.q ** (self.m - 1):
            raise ValueError("profile must count every t exactly once")

    @property
    def is_zero(self) -> bool:
        return self.f[0] == 1

    def as_dict(self) -> dict[int, int]:
        return {i: c for i, c in enumerate(self.f) if c}


def _neg(vec: tuple[int, ...], q: int) -> tuple[int, ...]:
    return tuple((-a) % q for a in vec)


def k_of(cls: SyndromeMultiset, gamma) -> int:
    """Number of copies with a spin flip when the source error is ``gamma``.

    Equals ``#{j : s_j + gamma != 0} = n - multiplicity(-gamma)``.
    """
    gamma = tuple(gamma)
    if len(gamma) != cls.m - 1:
        raise ValueError("gamma must have m - 1 coordinates")
    return cls.n - cls.multiplicity(_neg(gamma, cls.q))


def profile_of(cls: SyndromeMultiset) -> KProfile:
    f = [0] * (cls.n + 1)
    for _, c in cls.entries:
        f[cls.n - c] += 1
    f[cls.n] += cls.q ** (cls.m - 1) - len(cls.entries)
    return KProfile(cls.q, cls.m, cls.n, tuple(f), cls.cardinality)


def multiset_class_count(q: int, m: int, n: int) -> int:
    """Number of multisets of size n - 1 drawn from q^(m-1) values."""
    return math.comb(q ** (m - 1) + n - 2, n - 1)


def _multinomial(total: int, parts) -> int:
    out = math.factorial(total)
    for p in parts:
        out //= math.factorial(p)
    return out


def enumerate_multiset_classes(q: int, m: int, n: int,
                               limit: int = DEFAULT_CLASS_LIMIT
                               ) -> Iterator[SyndromeMultiset]:
    """Yield every value-multiset class once, in lexicographic order.

    Cardinality is the multinomial ``(n-1)! / prod c'_v!`` where ``c'_v``
    counts occurrences among the free positions ``1..n-1``.
    """
    _check_dims(q, m, n)
    estimate = multiset_class_count(q, m, n)
    if estimate > limit:
        raise ClassLimitError(estimate, limit, f"multiset classes (q={q}, m={m}, n={n})")
    values = list(itertools.product(range(q), repeat=m - 1))
    for combo in itertools.combinations_with_replacement(range(len(values)), n - 1):
        free = Counter(combo)
        card = _multinomial(n - 1, free.values())
        free[0] += 1
        entries = tuple((values[i], free[i]) for i in sorted(free))
        yield SyndromeMultiset(q, m, n, entries, card)


@lru_cache(maxsize=None)
def _partitions_at_most(n: int, parts: int) -> int:
    """Partitions of n into at most ``parts`` positive parts."""
    if n == 0:
        return 1
    if parts == 0:
        return 0
    # either fewer than `parts` parts, or exactly `parts` parts (subtract 1 from each)
    return _partitions_at_most(n, parts - 1) + (
        _partitions_at_most(n - parts, parts) if n >= parts else 0)


def profile_count(q: int, m: int, n: int) -> int:
    """Number of distinct k-profiles: partitions of n into <= q^(m-1) parts."""
    return _partitions_at_most(n, q ** (m - 1))


def _partitions(n: int, max_parts: int, max_size: int | None = None):
    """Partitions of ``n`` as non-increasing tuples with at most ``max_parts`` parts."""
    if max_size is None:
        max_size = n
    if n == 0:
        yield ()
        return
    if max_parts == 0:
        return
    for first in range(min(n, max_size), 0, -1):
        for rest in _partitions(n - first, max_parts - 1, first):
            yield (first,) + rest


def _profile_cardinality(parts: tuple[int, ...], n: int, values: int) -> int:
    """Raw syndromes whose value multiplicities (with s_0 = 0) form ``parts``.

    One part belongs to the zero value and absorbs the source position; the
    remaining parts go injectively to distinct nonzero values, divided by the
    permutations of equal-size parts.
    """
    total = 0
    r = len(parts)
    sizes = Counter(parts)
    for c0 in sizes:
        rest = sizes.copy()
        rest[c0] -= 1
        assign = math.perm(values - 1, r - 1)
        for mult in rest.values():
            assign //= math.factorial(mult)
        positions = math.factorial(n - 1) // math.factorial(c0 - 1)
        for size, mult in rest.items():
            positions //= math.factorial(size) ** mult
        total += assign * positions
    return total


def enumerate_profiles(q: int, m: int, n: int,
                       limit: int = DEFAULT_CLASS_LIMIT) -> Iterator[KProfile]:
    """Yield every k-profile once with the number of raw syndromes sharing it."""
    _check_dims(q, m, n)
    values = q ** (m - 1)
    estimate = profile_count(q, m, n)
    if estimate > limit:
        raise ClassLimitError(estimate, limit, f"k-profiles (q={q}, m={m}, n={n})")
    for parts in _partitions(n, values):
        f = [0] * (n + 1)
        for c in parts:
            f[n - c] += 1
        f[n] += values - len(parts)
        yield KProfile(q, m, n, tuple(f), _profile_cardinality(parts, n, values))


def _check_dims(q: int, m: int, n: int):
    if q < 2 or m < 2 or n < 2:
        raise ValueError(f"need q, m, n >= 2, got ({q}, {m}, {n})")


def classify(q: int, m: int, syndrome) -> SyndromeMultiset:
    """Multiset class of a raw syndrome ``(s_1, ..., s_{n-1})``."""
    syndrome = [tuple(s) for s in syndrome]
    n = len(syndrome) + 1
    _check_dims(q, m, n)
    for s in syndrome:
        if len(s) != m - 1 or any(not 0 <= a < q for a in s):
            raise ValueError(f"syndrome entry {s} is not in K^{m - 1}")
    free = Counter(syndrome)
    card = _multinomial(n - 1, free.values())
    free[(0,) * (m - 1)] += 1
    return SyndromeMultiset(q, m, n, tuple(sorted(free.items())), card)
