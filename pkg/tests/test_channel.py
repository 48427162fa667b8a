from decimal import Decimal
from fractions import Fraction

import pytest

from ghzdistill.channel import ChannelParams, label_probability, parse_fidelity, xy_params
from ghzdistill.labels import DimensionError, ErrorLabel


@pytest.mark.parametrize("raw, expected", [
    ("0.8097", Fraction(8097, 10000)),
    ("17/20", Fraction(17, 20)),
    (" 3/4 ", Fraction(3, 4)),
    (1, Fraction(1)),
    (Fraction(2, 3), Fraction(2, 3)),
    (Decimal("0.85"), Fraction(17, 20)),
])
def test_parse_fidelity(raw, expected):
    assert parse_fidelity(raw) == expected


@pytest.mark.parametrize("raw", [0.85, True])
def test_parse_fidelity_rejects_inexact(raw):
    with pytest.raises(TypeError):
        parse_fidelity(raw)


@pytest.mark.parametrize("raw", ["abc", "1/0", "nan", "inf"])
def test_parse_fidelity_bad_strings(raw):
    with pytest.raises(ValueError):
        parse_fidelity(raw)


@pytest.mark.parametrize("kw", [dict(q=1, m=2, n=2, F=1), dict(q=2, m=1, n=2, F=1),
                                dict(q=2, m=2, n=1, F=1), dict(q=2, m=2, n=2, F=0),
                                dict(q=2, m=2, n=2, F="11/10")])
def test_params_validation(kw):
    with pytest.raises(ValueError):
        ChannelParams(**kw)


@pytest.mark.parametrize("q, m, F, x, y", [
    (2, 2, 1, Fraction(0), Fraction(1)),
    (2, 3, Fraction(4, 5), Fraction(1, 35), Fraction(4, 5)),
    (3, 2, Fraction(1, 2), Fraction(1, 16), Fraction(1, 2)),
])
def test_xy_params(q, m, F, x, y):
    assert xy_params(ChannelParams(q, m, 2, F)) == (x, y)


def test_label_probability():
    assert label_probability(ErrorLabel(2, 0, (0,)), ChannelParams(2, 2, 2, 1)) == 1
    assert label_probability(ErrorLabel(2, 1, (0,)), ChannelParams(2, 2, 2, "1/4")) == Fraction(1, 4)
    assert label_probability(ErrorLabel(2, 1, (1, 1)), ChannelParams(2, 3, 2, "4/5")) == Fraction(1, 35)
    with pytest.raises(DimensionError):
        label_probability(ErrorLabel(2, 1, (1,)), ChannelParams(2, 3, 2, 1))


@pytest.mark.parametrize("q, m", [(2, 2), (2, 4), (3, 3), (5, 2)])
def test_label_distribution_normalized(q, m):
    p = ChannelParams(q, m, 2, "0.7")
    assert p.F + (p.num_labels - 1) * p.x == 1
    assert p.with_fidelity("1/2").F == Fraction(1, 2)
    assert p.as_dict() == {"q": q, "m": m, "n": 2, "F": "7/10"}
