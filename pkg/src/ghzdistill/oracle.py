"""Brute-force references for the closed forms.

Nothing here reuses the class regrouping or the weight enumerator for the
quantity it checks: :func:`exhaustive_joint` enumerates every label tuple,
:func:`mxor_decode` runs the actual gate sequence, and
:func:`simulate_protocol` samples the channel.

Monte Carlo seeding: ``numpy.random.SeedSequence(seed).spawn(n_chunks)``
gives one PCG64 stream per fixed-size chunk of samples, so the tallies do
not depend on how many workers process the chunks.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .channel import ChannelParams
from .labels import ErrorLabel, check_tuple, decode_repetition, mxor
from .probability import joint_prob

DEFAULT_TUPLE_CAP = 2**20
DEFAULT_SYNDROME_CAP = 2**16
CHUNK_SIZE = 2**16


class OracleCapError(RuntimeError):
    """Exhaustive enumeration would exceed the configured cap."""


def mxor_decode(labels):
    """Decode by applying MXOR(source, target_j) for j = 1..n-1.

    Returns ``(syndrome, residual)`` in the same layout as
    :func:`ghzdistill.labels.decode_repetition`.
    """
    q, _ = check_tuple(labels)
    source = labels[0]
    syndrome = []
    for target in labels[1:]:
        source, measured = mxor(source, target)
        # the target now holds alpha_0 - alpha_j
        syndrome.append(tuple((-a) % q for a in measured.alpha))
    return tuple(syndrome), source


def _k_direct(syndrome, gamma, q) -> int:
    count = 1 if any(gamma) else 0
    for s in syndrome:
        if any((a + g) % q for a, g in zip(s, gamma)):
            count += 1
    return count


def exhaustive_joint(params: ChannelParams, cap: int = DEFAULT_TUPLE_CAP) -> dict:
    """``Pr((delta, gamma) and s)`` by summing over all ``q^(mn)`` label tuples.

    Keys are ``(delta, gamma, s)`` with ``gamma`` a tuple and ``s`` a tuple of
    ``n - 1`` tuples.  Only outcomes of nonzero probability are stored.
    """
    q, m, n = params.q, params.m, params.n
    size = q ** (m * n)
    if size > cap:
        raise OracleCapError(f"{size} label tuples exceed cap {cap}")
    x, y = params.x, params.F
    xp = [x**i for i in range(n + 1)]
    yp = [y**i for i in range(n + 1)]
    labels = [ErrorLabel(q, b, a) for b in range(q)
              for a in itertools.product(range(q), repeat=m - 1)]
    table: dict = {}
    for combo in itertools.product(labels, repeat=n):
        wt = sum(1 for lab in combo if not lab.is_identity())
        weight = xp[wt] * yp[n - wt]
        if not weight:
            continue
        s, res = decode_repetition(combo)
        key = (res.beta, res.alpha, s)
        table[key] = table.get(key, Fraction(0)) + weight
    return table


def syndrome_marginal(table: dict) -> dict:
    out: dict = {}
    for (_, _, s), p in table.items():
        out[s] = out.get(s, Fraction(0)) + p
    return out


def raw_syndromes(q: int, m: int, n: int):
    vals = list(itertools.product(range(q), repeat=m - 1))
    return itertools.product(vals, repeat=n - 1)


def _h(probs, base) -> mpmath.mpf:
    out = mpmath.mpf(0)
    for p in probs:
        if p:
            pf = mpmath.mpf(p.numerator) / p.denominator
            out -= pf * mpmath.log(pf)
    return out / mpmath.log(base)


def exhaustive_sx(params: ChannelParams, precision: int = 192,
                  cap: int = DEFAULT_SYNDROME_CAP) -> mpmath.mpf:
    """Average conditional entropy summed over every raw syndrome, no regrouping."""
    q, m, n = params.q, params.m, params.n
    count = q ** ((m - 1) * (n - 1))
    if count > cap:
        raise OracleCapError(f"{count} raw syndromes exceed cap {cap}")
    gammas = list(itertools.product(range(q), repeat=m - 1))
    with mpmath.workprec(precision):
        total = mpmath.mpf(0)
        for s in raw_syndromes(q, m, n):
            joint = [joint_prob(d, _k_direct(s, g, q), params)
                     for g in gammas for d in range(q)]
            ps = sum(joint)
            if ps:
                total += (mpmath.mpf(ps.numerator) / ps.denominator) * _h(
                    [p / ps for p in joint], q)
        return +total


def exhaustive_yield(protocol: str, params: ChannelParams, precision: int = 192,
                     cap: int = DEFAULT_TUPLE_CAP) -> mpmath.mpf:
    """SS/MS/CL yield straight from the enumerated joint table, per raw syndrome."""
    q, m, n = params.q, params.m, params.n
    table = exhaustive_joint(params, cap)
    by_s: dict = {}
    for (d, g, s), p in table.items():
        by_s.setdefault(s, {})[(d, g)] = p
    with mpmath.workprec(precision):
        total = mpmath.mpf(0)
        for s, cells in by_s.items():
            ps = sum(cells.values())
            cond = {key: p / ps for key, p in cells.items()}

            def marg(keyfn):
                out: dict = {}
                for key, p in cond.items():
                    kk = keyfn(key)
                    out[kk] = out.get(kk, Fraction(0)) + p
                return out

            h_joint = _h(cond.values(), q)
            h_delta = _h(marg(lambda k: k[0]).values(), q)
            h_gamma = _h(marg(lambda k: k[1]).values(), q)
            if protocol == "ss":
                inner = h_joint
            elif protocol == "ms":
                inner = max(_h(marg(lambda k, i=i: k[1][i]).values(), q)
                            for i in range(m - 1)) + h_delta
            elif protocol == "cl":
                # chain rule: H(g_i | g_<i) = H(g_1..g_i) - H(g_1..g_{i-1})
                prefix_h = [_h(marg(lambda k, i=i: k[1][:i]).values(), q)
                            for i in range(m)]
                bit = max(prefix_h[i + 1] - prefix_h[i] for i in range(m - 1))
                inner = bit + h_delta - (h_delta + h_gamma - h_joint)
            else:
                raise ValueError(f"unknown protocol {protocol!r}")
            total += (mpmath.mpf(ps.numerator) / ps.denominator) * inner
        return (1 - total) / n


# ---------------------------------------------------------------- Monte Carlo

def _label_digits(q: int, m: int) -> np.ndarray:
    """Row L holds (beta, alpha_1..alpha_{m-1}) of label index L; row 0 is the identity."""
    return np.array(list(itertools.product(range(q), repeat=m)), dtype=np.int64)


def mxor_decode_batch(beta: np.ndarray, alpha: np.ndarray, q: int):
    """Vectorized MXOR decoding.

    ``beta`` has shape (N, n); ``alpha`` has shape (N, n, m-1).  Returns
    ``(delta, gamma, syndrome)`` with shapes (N,), (N, m-1), (N, n-1, m-1).
    """
    src_beta = beta[:, 0].copy()
    src_alpha = alpha[:, 0, :]
    synd = np.empty((alpha.shape[0], alpha.shape[1] - 1, alpha.shape[2]), dtype=np.int64)
    for j in range(1, beta.shape[1]):
        src_beta = (src_beta + beta[:, j]) % q
        target_alpha = (src_alpha - alpha[:, j, :]) % q
        synd[:, j - 1, :] = (-target_alpha) % q
    return src_beta, src_alpha.copy(), synd


def _cell_index(delta, gamma, synd, q):
    """Mixed-radix index of (delta, gamma, s); delta is the fastest digit."""
    idx = delta.copy()
    scale = q
    for col in range(gamma.shape[1]):
        idx += gamma[:, col] * scale
        scale *= q
    flat = synd.reshape(synd.shape[0], -1)
    for col in range(flat.shape[1]):
        idx += flat[:, col] * scale
        scale *= q
    return idx


def _decode_cell(index: int, q: int, m: int, n: int):
    digits = []
    for _ in range(1 + (m - 1) + (m - 1) * (n - 1)):
        digits.append(index % q)
        index //= q
    delta = digits[0]
    gamma = tuple(digits[1:m])
    rest = digits[m:]
    s = tuple(tuple(rest[j * (m - 1):(j + 1) * (m - 1)]) for j in range(n - 1))
    return delta, gamma, s


def sample_labels(params: ChannelParams, size: int, rng: np.random.Generator):
    """Draw ``size`` blocks of n iid labels; returns (beta, alpha) integer arrays."""
    q, m, n = params.q, params.m, params.n
    probs = np.full(q**m, float(params.x))
    probs[0] = float(params.F)
    probs /= probs.sum()
    idx = rng.choice(q**m, size=(size, n), p=probs)
    digits = _label_digits(q, m)[idx]
    return digits[..., 0], digits[..., 1:]


@dataclass
class SimulationResult:
    params: ChannelParams
    samples: int
    seed: int
    counts: np.ndarray

    @property
    def num_cells(self) -> int:
        return self.counts.shape[0]

    def frequencies(self) -> np.ndarray:
        return self.counts / self.samples

    def stderr(self) -> np.ndarray:
        f = self.frequencies()
        return np.sqrt(f * (1 - f) / self.samples)

    def cells(self):
        """Yield ``((delta, gamma, s), count)`` for every cell with nonzero count."""
        q, m, n = self.params.q, self.params.m, self.params.n
        for i in np.flatnonzero(self.counts):
            yield _decode_cell(int(i), q, m, n), int(self.counts[i])

    def compare(self, sigmas: float = 3.0) -> list[dict]:
        """z-scores of every cell against the closed-form probabilities.

        The standard error uses the expected probability so that cells never
        observed still get a finite z-score.
        """
        q, m, n = self.params.q, self.params.m, self.params.n
        out = []
        for i in range(self.num_cells):
            delta, gamma, s = _decode_cell(i, q, m, n)
            p = joint_prob(delta, _k_direct(s, gamma, q), self.params)
            pf = float(p)
            obs = self.counts[i] / self.samples
            sd = math.sqrt(pf * (1 - pf) / self.samples)
            z = (obs - pf) / sd if sd > 0 else (0.0 if obs == pf else math.inf)
            out.append({"cell": (delta, gamma, s), "expected": p, "observed": obs,
                        "z": z, "ok": abs(z) <= sigmas})
        return out


def simulate_protocol(params: ChannelParams, samples: int, seed: int,
                      threads: int = 1, chunk_size: int = CHUNK_SIZE) -> SimulationResult:
    """Sample noisy blocks, decode them with MXOR gates, tally (delta, gamma, s)."""
    if samples < 1:
        raise ValueError("need at least one sample")
    if not 0 <= seed < 2**64:
        raise ValueError("seed must fit in 64 bits")
    q, m, n = params.q, params.m, params.n
    num_cells = q ** (1 + (m - 1) * n)
    n_chunks = -(-samples // chunk_size)
    children = np.random.SeedSequence(seed).spawn(n_chunks)

    def run(i):
        size = min(chunk_size, samples - i * chunk_size)
        rng = np.random.Generator(np.random.PCG64(children[i]))
        beta, alpha = sample_labels(params, size, rng)
        delta, gamma, synd = mxor_decode_batch(beta, alpha, q)
        return np.bincount(_cell_index(delta, gamma, synd, q), minlength=num_cells)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, range(n_chunks)))
    else:
        parts = [run(i) for i in range(n_chunks)]
    counts = np.sum(parts, axis=0)
    return SimulationResult(params, samples, seed, counts)


# ---------------------------------------------------------------- verification

EXACT_GRID = ((2, 2, 2), (2, 2, 3), (2, 2, 4), (2, 3, 2), (2, 3, 3), (3, 2, 2), (5, 2, 2))


def exact_fidelities(q: int, m: int) -> tuple[Fraction, ...]:
    return (Fraction(1), Fraction(1, q**m), Fraction(4, 5), Fraction(17, 20))


def check_exact(params: ChannelParams, cap: int = DEFAULT_TUPLE_CAP) -> dict:
    """Compare enumerated probabilities with the closed forms, exactly.

    Covers the joint ``Pr((delta, gamma) and s)``, ``Pr(s)`` and the
    conditional ``Pr((delta, gamma) | s)`` for every raw syndrome and every
    outcome, including the zero-probability ones.
    """
    from .classes import classify
    from .probability import conditional_table, syndrome_prob

    q, m, n = params.q, params.m, params.n
    table = exhaustive_joint(params, cap)
    marg = syndrome_marginal(table)
    gammas = list(itertools.product(range(q), repeat=m - 1))
    mismatches = []
    checked = 0
    for s in raw_syndromes(q, m, n):
        cls = classify(q, m, s)
        ps = marg.get(s, Fraction(0))
        if syndrome_prob(cls, params) != ps:
            mismatches.append(("Pr(s)", s))
        cond = conditional_table(cls, params) if ps else None
        for g in gammas:
            k = _k_direct(s, g, q)
            for d in range(q):
                p = table.get((d, g, s), Fraction(0))
                checked += 1
                if joint_prob(d, k, params) != p:
                    mismatches.append(("joint", (d, g, s)))
                if cond is not None and cond.prob(d, k) != p / ps:
                    mismatches.append(("conditional", (d, g, s)))
    total = sum(table.values(), Fraction(0))
    return {"q": q, "m": m, "n": n, "F": str(params.F), "outcomes": checked,
            "total_mass": str(total), "mismatches": mismatches,
            "ok": not mismatches and total == 1}


def check_decoders(params: ChannelParams, count: int, seed: int) -> dict:
    """Vectorized MXOR decoding versus :func:`decode_repetition` on sampled tuples."""
    q, m = params.q, params.m
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    beta, alpha = sample_labels(params, count, rng)
    delta, gamma, synd = mxor_decode_batch(beta, alpha, q)
    bad = 0
    for i in range(count):
        labels = [ErrorLabel(q, int(b), tuple(int(a) for a in al))
                  for b, al in zip(beta[i], alpha[i])]
        s_ref, res_ref = decode_repetition(labels)
        s_gate, res_gate = mxor_decode(labels)
        batch_s = tuple(tuple(int(a) for a in row) for row in synd[i])
        if not (s_ref == s_gate == batch_s and res_ref == res_gate
                and res_ref.beta == delta[i] and res_ref.alpha == tuple(int(a) for a in gamma[i])):
            bad += 1
    return {"samples": count, "disagreements": bad, "ok": bad == 0}
