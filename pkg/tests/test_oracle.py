from fractions import Fraction

import mpmath
import numpy as np
import pytest

from ghzdistill.channel import ChannelParams
from ghzdistill.labels import ErrorLabel, decode_repetition
from ghzdistill.oracle import (OracleCapError, check_decoders, exhaustive_joint,
                               exhaustive_sx, exhaustive_yield, mxor_decode,
                               simulate_protocol)
from ghzdistill.yields import compute_yield, s_x


def test_joint_unit_fidelity():
    table = exhaustive_joint(ChannelParams(2, 3, 3, 1))
    assert table == {(0, (0, 0), ((0, 0), (0, 0))): 1}


def test_joint_maximally_mixed():
    table = exhaustive_joint(ChannelParams(2, 2, 2, Fraction(1, 4)))
    assert len(table) == 8 and set(table.values()) == {Fraction(1, 8)}


def test_joint_cap():
    with pytest.raises(OracleCapError):
        exhaustive_joint(ChannelParams(2, 4, 6, 1))
    with pytest.raises(OracleCapError):
        exhaustive_sx(ChannelParams(2, 5, 6, 1))


def test_mxor_decode_matches_repetition():
    labs = [ErrorLabel(3, 1, (2, 0)), ErrorLabel(3, 2, (1, 1)), ErrorLabel(3, 0, (0, 2))]
    assert mxor_decode(labs) == decode_repetition(labs)


def test_sx_endpoint():
    assert exhaustive_sx(ChannelParams(2, 3, 3, 1)) == 0


@pytest.mark.parametrize("qmn", [(2, 3, 3), (3, 2, 3), (2, 4, 2)])
def test_sx_matches_class_sum(qmn):
    p = ChannelParams(*qmn, Fraction(17, 20))
    assert abs(exhaustive_sx(p) - s_x(p)) < mpmath.mpf(2) ** -64


def test_sx_published_root():
    p = ChannelParams(2, 2, 5, Fraction(8097, 10000))
    assert abs(exhaustive_sx(p) - 1) < 5e-4


@pytest.mark.parametrize("protocol", ["ss", "ms", "cl"])
@pytest.mark.parametrize("qmn", [(2, 2, 3), (2, 3, 3), (3, 2, 2), (3, 3, 2), (2, 4, 2)])
def test_yields_match_per_syndrome_evaluation(protocol, qmn):
    """Class-wise yields equal a direct per-raw-syndrome evaluation of the same formulas."""
    q, m, n = qmn
    for F in (Fraction(4, 5), Fraction(7, 10)):
        a = compute_yield(protocol, q, m, n, F).value
        b = exhaustive_yield(protocol, ChannelParams(q, m, n, F))
        assert abs(a - b) < mpmath.mpf(2) ** -100


def test_simulation_unit_fidelity():
    sim = simulate_protocol(ChannelParams(2, 3, 3, 1), 5000, seed=7)
    assert list(sim.cells()) == [((0, (0, 0), ((0, 0), (0, 0))), 5000)]


def test_simulation_mixed_point_uniform_syndromes():
    samples = 200_000
    sim = simulate_protocol(ChannelParams(2, 3, 3, Fraction(1, 8)), samples, seed=3)
    by_s = {}
    for (_, _, s), count in sim.cells():
        by_s[s] = by_s.get(s, 0) + count
    assert len(by_s) == 16
    expected = samples / 16
    chi2 = sum((c - expected) ** 2 / expected for c in by_s.values())
    # upper 0.1% point of chi-square with 15 degrees of freedom
    assert chi2 < 37.70


def test_simulation_independent_of_workers():
    p = ChannelParams(3, 2, 3, Fraction(7, 10))
    a = simulate_protocol(p, 50_000, seed=11, threads=1, chunk_size=4096)
    b = simulate_protocol(p, 50_000, seed=11, threads=3, chunk_size=4096)
    assert np.array_equal(a.counts, b.counts)
    c = simulate_protocol(p, 50_000, seed=12, chunk_size=4096)
    assert not np.array_equal(a.counts, c.counts)


def test_simulation_stderr_shape():
    sim = simulate_protocol(ChannelParams(2, 2, 2, Fraction(4, 5)), 1000, seed=1)
    assert sim.stderr().shape == sim.counts.shape
    assert sim.counts.sum() == 1000


def test_simulation_arguments():
    with pytest.raises(ValueError):
        simulate_protocol(ChannelParams(2, 2, 2, 1), 0, seed=1)
    with pytest.raises(ValueError):
        simulate_protocol(ChannelParams(2, 2, 2, 1), 10, seed=-1)


@pytest.mark.parametrize("qmn", [(2, 3, 3), (3, 3, 4), (5, 2, 3)])
def test_batch_decoder_agrees(qmn):
    assert check_decoders(ChannelParams(*qmn, Fraction(1, 2)), 500, seed=5)["ok"]
