"""Exact outcome probabilities after repetition-code decoding.

Everything here is a :class:`fractions.Fraction`.  The joint probability of
residual error ``(delta, gamma)`` and syndrome ``s`` depends only on
``delta`` and ``k = k(s, gamma)``, the number of copies carrying a spin flip.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .channel import ChannelParams, xy_params
from .classes import KProfile, SyndromeMultiset, k_of, profile_of

SyndromeClass = Union[KProfile, SyndromeMultiset]


class UndefinedConditionalError(ZeroDivisionError):
    """Conditioning on a syndrome class of probability zero."""


def weight_enumerator(k: int, delta: int, n: int, q: int, x, y):
    """Depolarization weight enumerator ``w(k, delta; x, y)``.

    Sums ``x^wt y^(n - wt)`` over all label tuples that decode to residual
    phase ``delta`` while ``k`` copies carry a spin flip::

        k > 0:            q^(k-1) x^k ((q-1)x + y)^(n-k)
        k = 0, delta = 0: (((q-1)x + y)^n + (q-1)(y - x)^n) / q
        k = 0, delta > 0: (((q-1)x + y)^n - (y - x)^n) / q

    ``x`` and ``y`` may be any exact numbers (ints, Fractions, sympy symbols).
    """
    if not 0 <= k <= n:
        raise ValueError(f"k must lie in [0, {n}], got {k}")
    if not 0 <= delta < q:
        raise ValueError(f"delta must lie in [0, {q - 1}], got {delta}")
    z = (q - 1) * x + y
    if k > 0:
        return q ** (k - 1) * x ** k * z ** (n - k)
    if delta == 0:
        return Fraction(1, q) * (z ** n + (q - 1) * (y - x) ** n)
    return Fraction(1, q) * (z ** n - (y - x) ** n)


def joint_prob(delta: int, k: int, params: ChannelParams) -> Fraction:
    """``Pr((delta, gamma) and s)`` for any ``(gamma, s)`` with ``k(s, gamma) = k``."""
    x, y = xy_params(params)
    return weight_enumerator(k, delta, params.n, params.q, x, y)


def _gamma_weight(k: int, params: ChannelParams) -> Fraction:
    """``sum_delta Pr((delta, gamma) and s) = (q x)^k ((q-1)x + y)^(n-k)``."""
    x, y = xy_params(params)
    q = params.q
    return (q * x) ** k * ((q - 1) * x + y) ** (params.n - k)


def _as_profile(cls: SyndromeClass) -> KProfile:
    return cls if isinstance(cls, KProfile) else profile_of(cls)


def _check_class(cls: SyndromeClass, params: ChannelParams):
    if (cls.q, cls.m, cls.n) != (params.q, params.m, params.n):
        raise ValueError(
            f"class has (q, m, n) = ({cls.q}, {cls.m}, {cls.n}), "
            f"channel has ({params.q}, {params.m}, {params.n})")


def syndrome_prob(cls: SyndromeClass, params: ChannelParams) -> Fraction:
    """Probability of one raw syndrome of the class (multiply by cardinality for the class mass).

    Uses the integer form
    ``(q^m-1)^-n sum_i f(i) [q(1-F)]^i (q^m F - qF + q - 1)^(n-i)``.
    """
    _check_class(cls, params)
    prof = _as_profile(cls)
    q, m, n, F = params.q, params.m, params.n, params.F
    a = q * (1 - F)
    b = q ** m * F - q * F + q - 1
    total = sum(c * a ** i * b ** (n - i) for i, c in enumerate(prof.f) if c)
    return total / Fraction(q ** m - 1) ** n


@dataclass(frozen=True)
class ConditionalTable:
    """``Pr((delta, gamma) | s)`` for one syndrome class, grouped by ``(delta, k)``.

    ``entries[(delta, k)]`` is the probability of each single outcome
    ``(delta, gamma)`` with ``k(s, gamma) = k``; ``gamma_counts[k]`` is the
    number of ``gamma`` values at that ``k``.
    """

    cls: SyndromeClass
    params: ChannelParams
    syndrome_probability: Fraction
    entries: dict = field(repr=False)
    gamma_counts: dict = field(repr=False)

    @property
    def granularity(self) -> str:
        return "profile" if isinstance(self.cls, KProfile) else "multiset"

    def prob(self, delta: int, k: int) -> Fraction:
        return self.entries.get((delta, k), Fraction(0))

    def groups(self):
        """Yield ``(probability, multiplicity)`` over all (delta, gamma) outcomes."""
        for (delta, k), p in self.entries.items():
            yield p, self.gamma_counts[k]

    def total(self) -> Fraction:
        return sum((p * c for p, c in self.groups()), Fraction(0))

    def delta_marginal(self) -> list[Fraction]:
        q = self.params.q
        out = [Fraction(0)] * q
        for (delta, k), p in self.entries.items():
            out[delta] += p * self.gamma_counts[k]
        return out

    def _require_multiset(self):
        if not isinstance(self.cls, SyndromeMultiset):
            raise TypeError("per-gamma probabilities need a multiset class")

    def gamma_probability(self, gamma) -> Fraction:
        """``Pr(gamma | s)`` summed over delta."""
        self._require_multiset()
        return _gamma_weight(k_of(self.cls, gamma), self.params) / self.syndrome_probability

    def gamma_distribution(self) -> dict[tuple[int, ...], Fraction]:
        """``Pr(gamma | s)`` for every gamma in K^(m-1), lexicographic order."""
        self._require_multiset()
        q, m = self.params.q, self.params.m
        return {g: self.gamma_probability(g)
                for g in itertools.product(range(q), repeat=m - 1)}

    def prefix_marginal(self, length: int) -> dict[tuple[int, ...], Fraction]:
        """``Pr(gamma_1..gamma_length | s)`` by exact marginalization."""
        out: dict[tuple[int, ...], Fraction] = {}
        for g, p in self.gamma_distribution().items():
            key = g[:length]
            out[key] = out.get(key, Fraction(0)) + p
        return out

    def prefix_conditional(self, prefix) -> dict[int, Fraction]:
        """``Pr(gamma_i = a | gamma_1..gamma_{i-1} = prefix, s)`` for each ``a``."""
        prefix = tuple(prefix)
        i = len(prefix)
        if i >= self.params.m - 1:
            raise ValueError("prefix must be shorter than m - 1")
        joint = self.prefix_marginal(i + 1)
        mass = sum((p for g, p in joint.items() if g[:i] == prefix), Fraction(0))
        if mass == 0:
            raise UndefinedConditionalError(f"prefix {prefix} has probability zero")
        return {a: joint.get(prefix + (a,), Fraction(0)) / mass
                for a in range(self.params.q)}


def conditional_table(cls: SyndromeClass, params: ChannelParams) -> ConditionalTable:
    _check_class(cls, params)
    ps = syndrome_prob(cls, params)
    if ps == 0:
        raise UndefinedConditionalError("syndrome class has probability zero")
    prof = _as_profile(cls)
    entries = {}
    counts = {}
    for k, c in enumerate(prof.f):
        if not c:
            continue
        counts[k] = c
        for delta in range(params.q):
            entries[(delta, k)] = joint_prob(delta, k, params) / ps
    return ConditionalTable(cls, params, ps, entries, counts)
