from fractions import Fraction

import mpmath
import pytest

from ghzdistill.channel import ChannelParams
from ghzdistill.classes import ClassLimitError
from ghzdistill.yields import (NormalizationError, baseline_d1, baseline_d2,
                               compute_yield, entropy, s_x, werner_distribution,
                               yield_cl, yield_ms, yield_ss)


def test_entropy_examples():
    assert entropy([1]) == 0
    assert entropy([Fraction(1, 2)] * 2) == 1
    with mpmath.workprec(256):
        assert abs(entropy([Fraction(1, 27)] * 27, base=3) - 3) < mpmath.mpf(2) ** -160
    assert entropy([Fraction(1, 2), Fraction(1, 2), 0]) == 1


def test_entropy_rejects_unnormalized():
    with pytest.raises(NormalizationError):
        entropy([Fraction(1, 2), Fraction(1, 3)])
    with pytest.raises(NormalizationError):
        entropy([Fraction(3, 2), Fraction(-1, 2)])


@pytest.mark.parametrize("q, m", [(2, 2), (2, 3), (3, 3)])
def test_sx_endpoints(q, m):
    assert s_x(ChannelParams(q, m, 3, 1)) == 0
    with mpmath.workprec(256):
        assert abs(s_x(ChannelParams(q, m, 3, Fraction(1, q**m))) - m) < mpmath.mpf(2) ** -150


def test_sx_near_published_root():
    assert abs(s_x(ChannelParams(2, 2, 5, Fraction(8097, 10000))) - 1) < 5e-4


def test_ss_at_mixed_point():
    r = yield_ss(ChannelParams(2, 3, 4, Fraction(1, 8)))
    with mpmath.workprec(256):
        assert abs(r.value - mpmath.mpf(1 - 3) / 4) < mpmath.mpf(2) ** -150


def test_yield_result_fields():
    r = yield_ms(ChannelParams(2, 3, 3, Fraction(4, 5)))
    d = r.as_dict()
    assert d["protocol"] == "ms" and d["n"] == 3 and d["F"] == "4/5"
    assert r.diagnostics["class_count"] == 10
    assert len(r.diagnostics["top_contributions"]) == 5
    assert r.precision_bits == 192


@pytest.mark.parametrize("F", [Fraction(7, 10), Fraction(3, 4), Fraction(4, 5), Fraction(9, 10)])
@pytest.mark.parametrize("qmn", [(2, 3, 3), (2, 4, 3), (3, 3, 2)])
def test_yield_ordering(qmn, F):
    q, m, n = qmn
    p = ChannelParams(q, m, n, F)
    ss, ms, cl = (f(p).value for f in (yield_ss, yield_ms, yield_cl))
    assert cl >= ms >= ss


@pytest.mark.parametrize("n", [2, 3, 5])
def test_two_player_cl_is_full_table(n):
    # with one bit coordinate the chained term and side information recombine into H(delta, gamma | s)
    p = ChannelParams(2, 2, n, Fraction(4, 5))
    assert abs(yield_cl(p).value - yield_ss(p).value) < mpmath.mpf(2) ** -150


@pytest.mark.parametrize("protocol", ["ss", "ms", "cl"])
def test_yield_bounded_by_inverse_n(protocol):
    for F in (Fraction(9, 10), Fraction(99, 100)):
        assert compute_yield(protocol, 2, 3, 4, F).value <= mpmath.mpf(1) / 4


def test_werner_distribution():
    dist = werner_distribution(2, 3, Fraction(4, 5))
    assert sum(dist.values()) == 1 and dist[(0, 0, 0)] == Fraction(4, 5)


@pytest.mark.parametrize("q, m", [(2, 2), (2, 3), (3, 3)])
def test_baseline_endpoints(q, m):
    assert baseline_d1(m, q, 1).value == 1
    assert baseline_d2(m, q, 1).value == 1
    with mpmath.workprec(256):
        assert abs(baseline_d1(m, q, Fraction(1, q**m)).value + 1) < mpmath.mpf(2) ** -150


@pytest.mark.parametrize("m", [2, 3, 4])
def test_d2_dominates_d1(m):
    for i in range(9):
        F = Fraction(6, 10) + Fraction(i, 20)
        assert baseline_d2(m, 2, F).value >= baseline_d1(m, 2, F).value


def test_compute_yield_dispatch():
    assert compute_yield("D1", 2, 3, None, 1).protocol == "d1"
    with pytest.raises(ValueError):
        compute_yield("xx", 2, 3, 3, 1)
    with pytest.raises(ClassLimitError):
        compute_yield("cl", 2, 4, 7, Fraction(4, 5), class_limit=10)
