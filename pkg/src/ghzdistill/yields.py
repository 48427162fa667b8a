"""Asymptotic yields of the concatenated protocols and the hashing baselines.

Probabilities arrive as exact Fractions; they are rounded to mpmath reals
only inside the entropy sums, at a configurable binary precision.  All
entropies use base ``q`` (bits for qubits, dits otherwise).

Protocol tags:

``ss``  repetition code + random hashing outer code (full-table entropy)
``ms``  repetition code + independent bit/phase hashing
``cl``  repetition code + chained bit hashing with phase side information
``d1``  independent bit/phase hashing applied to single Werner copies
``d2``  chained hashing applied to single Werner copies
"""
from __future__ import annotations

import heapq
import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .channel import ChannelParams
from .classes import (DEFAULT_CLASS_LIMIT, enumerate_multiset_classes,
                      enumerate_profiles)
from .probability import conditional_table, syndrome_prob

DEFAULT_PRECISION = 192
PROTOCOLS = ("ss", "ms", "cl", "d1", "d2")
CONCATENATED = ("ss", "ms", "cl")
_TOP_CONTRIBUTIONS = 5


class NormalizationError(ValueError):
    """A distribution handed to :func:`entropy` does not sum to one."""


@dataclass
class YieldResult:
    protocol: str
    value: mpmath.mpf
    params: dict
    precision_bits: int
    diagnostics: dict = field(default_factory=dict)

    def __float__(self):
        return float(self.value)

    def as_dict(self, digits: int = 12) -> dict:
        return {
            "protocol": self.protocol,
            **self.params,
            "D": mpmath.nstr(self.value, digits),
            "precision_bits": self.precision_bits,
        }


def _to_mpf(p: Fraction) -> mpmath.mpf:
    return mpmath.mpf(p.numerator) / p.denominator


def _h_nats(pairs) -> mpmath.mpf:
    """Entropy in nats of ``(probability, multiplicity)`` pairs; caller sets precision."""
    total = mpmath.mpf(0)
    for p, count in pairs:
        if p:
            pf = _to_mpf(p)
            total -= count * pf * mpmath.log(pf)
    return total


def _h(pairs, base: int) -> mpmath.mpf:
    return _h_nats(pairs) / mpmath.log(base)


def _h_dist(probs, base: int) -> mpmath.mpf:
    return _h(((p, 1) for p in probs), base)


def entropy(dist, base: int = 2, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """Shannon entropy ``-sum p log_base p`` of an exactly normalized distribution.

    ``0 log 0`` is taken as 0.  Raises :class:`NormalizationError` unless the
    entries are non-negative and sum to exactly one.
    """
    probs = [Fraction(p) for p in dist]
    if any(p < 0 for p in probs) or sum(probs) != 1:
        raise NormalizationError("distribution must be non-negative and sum to 1")
    with mpmath.workprec(precision):
        return +_h_dist(probs, base)


def _params_dict(protocol, q, m, n, F) -> dict:
    out = {"q": q, "m": m}
    if protocol in CONCATENATED:
        out["n"] = n
    out["F"] = str(F)
    return out


class _TopK:
    def __init__(self, size=_TOP_CONTRIBUTIONS):
        self.size = size
        self.heap: list = []
        self._tie = itertools.count()

    def push(self, weight, label):
        item = (abs(weight), next(self._tie), label, weight)
        if len(self.heap) < self.size:
            heapq.heappush(self.heap, item)
        else:
            heapq.heappushpop(self.heap, item)

    def items(self):
        return [{"class": label, "contribution": mpmath.nstr(w, 12)}
                for _, _, label, w in sorted(self.heap, key=lambda t: (-t[0], t[1]))]


def _ss_terms(params: ChannelParams, class_limit: int):
    """``(class mass, h(Pr(.|s)), is_zero, f)`` per k-profile."""
    for prof in enumerate_profiles(params.q, params.m, params.n, limit=class_limit):
        if not syndrome_prob(prof, params):
            continue
        table = conditional_table(prof, params)
        mass = prof.cardinality * table.syndrome_probability
        yield mass, _h(table.groups(), params.q), prof.is_zero, prof.f


def s_x(params: ChannelParams, precision: int = DEFAULT_PRECISION,
        class_limit: int = DEFAULT_CLASS_LIMIT) -> mpmath.mpf:
    """Average conditional entropy of the residual error given the syndrome."""
    with mpmath.workprec(precision):
        total = mpmath.mpf(0)
        for mass, h, _, _ in _ss_terms(params, class_limit):
            total += _to_mpf(mass) * h
        return +total


def s_x_split(params: ChannelParams, precision: int = DEFAULT_PRECISION,
              class_limit: int = DEFAULT_CLASS_LIMIT) -> mpmath.mpf:
    """Same quantity as :func:`s_x`, via the zero/nonzero syndrome split.

    ``1 - S_X = Pr(0)[1 - h_0] - sum_{s != 0} Pr(s)[h_s - 1]``; near threshold
    both pieces are small and positive, so this form exposes the cancellation.
    """
    with mpmath.workprec(precision):
        gain = mpmath.mpf(0)
        loss = mpmath.mpf(0)
        for mass, h, is_zero, _ in _ss_terms(params, class_limit):
            if is_zero:
                gain += _to_mpf(mass) * (1 - h)
            else:
                loss += _to_mpf(mass) * (h - 1)
        return 1 - (gain - loss)


def yield_ss(params: ChannelParams, precision: int = DEFAULT_PRECISION,
             class_limit: int = DEFAULT_CLASS_LIMIT) -> YieldResult:
    start = time.perf_counter()
    top = _TopK()
    count = 0
    with mpmath.workprec(precision):
        sx = mpmath.mpf(0)
        for mass, h, _, f in _ss_terms(params, class_limit):
            term = _to_mpf(mass) * h
            sx += term
            top.push(term, "f=" + ",".join(map(str, f)))
            count += 1
        value = (1 - sx) / params.n
    return YieldResult("ss", value, _params_dict("ss", params.q, params.m, params.n, params.F),
                       precision, {"class_count": count, "granularity": "profile",
                                   "elapsed_s": time.perf_counter() - start,
                                   "top_contributions": top.items()})


def _coordinate_marginal(gamma_dist: dict, i: int, q: int) -> list[Fraction]:
    out = [Fraction(0)] * q
    for g, p in gamma_dist.items():
        out[g[i]] += p
    return out


def _chained_entropies(gamma_dist: dict, q: int, m: int) -> list[mpmath.mpf]:
    """``H(gamma_i | gamma_1..gamma_{i-1}, s)`` for ``i = 1..m-1``."""
    out = []
    for i in range(m - 1):
        joint: dict = {}
        for g, p in gamma_dist.items():
            key = g[:i + 1]
            joint[key] = joint.get(key, Fraction(0)) + p
        h = mpmath.mpf(0)
        for prefix in itertools.product(range(q), repeat=i):
            row = [joint.get(prefix + (a,), Fraction(0)) for a in range(q)]
            mass = sum(row)
            if mass:
                h += _to_mpf(mass) * _h_dist([r / mass for r in row], q)
        out.append(h)
    return out


def _class_yield(protocol: str, params: ChannelParams, precision: int,
                 class_limit: int) -> YieldResult:
    start = time.perf_counter()
    q, m, n = params.q, params.m, params.n
    top = _TopK()
    count = 0
    with mpmath.workprec(precision):
        total = mpmath.mpf(0)
        for cls in enumerate_multiset_classes(q, m, n, limit=class_limit):
            if not syndrome_prob(cls, params):
                continue
            table = conditional_table(cls, params)
            gamma_dist = table.gamma_distribution()
            h_delta = _h_dist(table.delta_marginal(), q)
            if protocol == "ms":
                bit = max(_h_dist(_coordinate_marginal(gamma_dist, i, q), q)
                          for i in range(m - 1))
                inner = bit + h_delta
            else:
                bit = max(_chained_entropies(gamma_dist, q, m))
                h_gamma = _h_dist(gamma_dist.values(), q)
                h_joint = _h(table.groups(), q)
                inner = bit + h_delta - (h_delta + h_gamma - h_joint)
            term = _to_mpf(cls.cardinality * table.syndrome_probability) * inner
            total += term
            top.push(term, str(dict(cls.entries)))
            count += 1
        value = (1 - total) / n
    return YieldResult(protocol, value, _params_dict(protocol, q, m, n, params.F),
                       precision, {"class_count": count, "granularity": "multiset",
                                   "elapsed_s": time.perf_counter() - start,
                                   "top_contributions": top.items()})


def yield_ms(params: ChannelParams, precision: int = DEFAULT_PRECISION,
             class_limit: int = DEFAULT_CLASS_LIMIT) -> YieldResult:
    """Yield with separate bit-flip and phase hashing as the outer code.

    ``(1/n)(1 - sum_s Pr(s) {max_i H(gamma_i|s) + H(delta|s)})``
    """
    return _class_yield("ms", params, precision, class_limit)


def yield_cl(params: ChannelParams, precision: int = DEFAULT_PRECISION,
             class_limit: int = DEFAULT_CLASS_LIMIT) -> YieldResult:
    """Yield with chained bit-flip hashing that reuses earlier players' results.

    ``(1/n)(1 - sum_s Pr(s) {max_i H(gamma_i|gamma_<i, s) + H(delta|s)
    - I(delta; gamma|s)})`` with the players taken in the fixed order 1..m-1.
    """
    return _class_yield("cl", params, precision, class_limit)


def werner_distribution(q: int, m: int, F) -> dict[tuple[int, ...], Fraction]:
    """Single-copy label distribution keyed by ``(beta, alpha_1, ..., alpha_{m-1})``."""
    p = ChannelParams(q, m, 2, F)
    return {lab: (p.F if not any(lab) else p.x)
            for lab in itertools.product(range(q), repeat=m)}


def _baseline(protocol: str, m: int, q: int, F, precision: int) -> YieldResult:
    start = time.perf_counter()
    dist = werner_distribution(q, m, F)
    alpha_dist: dict = {}
    beta_marg = [Fraction(0)] * q
    for lab, p in dist.items():
        beta_marg[lab[0]] += p
        alpha_dist[lab[1:]] = alpha_dist.get(lab[1:], Fraction(0)) + p
    with mpmath.workprec(precision):
        h_beta = _h_dist(beta_marg, q)
        if protocol == "d1":
            bit = max(_h_dist(_coordinate_marginal(alpha_dist, i, q), q)
                      for i in range(m - 1))
            value = 1 - bit - h_beta
        else:
            bit = max(_chained_entropies(alpha_dist, q, m))
            mutual = h_beta + _h_dist(alpha_dist.values(), q) - _h_dist(dist.values(), q)
            value = 1 - bit - h_beta + mutual
    params = _params_dict(protocol, q, m, None, Fraction(dist[(0,) * m]))
    return YieldResult(protocol, value, params, precision,
                       {"elapsed_s": time.perf_counter() - start})


def baseline_d1(m: int, q: int, F, precision: int = DEFAULT_PRECISION) -> YieldResult:
    """``1 - max_i H(b_i) - H(b_0)`` on single Werner copies."""
    return _baseline("d1", m, q, F, precision)


def baseline_d2(m: int, q: int, F, precision: int = DEFAULT_PRECISION) -> YieldResult:
    """``1 - max_i H(b_i | b_<i) - H(b_0) + I(b_0; b_1..b_{m-1})`` on single Werner copies."""
    return _baseline("d2", m, q, F, precision)


def compute_yield(protocol: str, q: int, m: int, n: int | None, F,
                  precision: int = DEFAULT_PRECISION,
                  class_limit: int = DEFAULT_CLASS_LIMIT) -> YieldResult:
    """Dispatch on the protocol tag; ``n`` is ignored for the baselines."""
    protocol = protocol.lower()
    if protocol == "d1":
        return baseline_d1(m, q, F, precision)
    if protocol == "d2":
        return baseline_d2(m, q, F, precision)
    if protocol not in CONCATENATED:
        raise ValueError(f"unknown protocol {protocol!r}; choose from {PROTOCOLS}")
    params = ChannelParams(q, m, n, F)
    fn = {"ss": yield_ss, "ms": yield_ms, "cl": yield_cl}[protocol]
    return fn(params, precision=precision, class_limit=class_limit)
