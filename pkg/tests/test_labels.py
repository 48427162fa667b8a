import pytest

from ghzdistill.labels import (DimensionError, ErrorLabel, RingK, all_labels,
                               check_tuple, decode_repetition,
                               depolarization_weight, mxor)


def L(q, beta, *alpha):
    return ErrorLabel(q, beta, alpha)


def test_ring_arithmetic():
    k = RingK(3)
    assert k.add(2, 2) == 1
    assert k.sub(0, 1) == 2
    assert k.neg(1) == 2
    assert list(k.vectors(2))[:3] == [(0, 0), (0, 1), (0, 2)]
    with pytest.raises(ValueError):
        RingK(1)


def test_label_validation():
    with pytest.raises(ValueError):
        L(2, 2, 0)
    with pytest.raises(ValueError):
        L(3, 0, 3)
    with pytest.raises(ValueError):
        ErrorLabel(2, 0, ())
    assert L(2, 0, 0, 0).is_identity()
    assert ErrorLabel.identity(3, 4) == L(3, 0, 0, 0, 0)
    assert L(2, 1, 1, 0).m == 3


def test_all_labels_identity_first():
    labs = list(all_labels(2, 3))
    assert len(labs) == 8 and labs[0].is_identity()
    assert len(set(labs)) == 8


@pytest.mark.parametrize("src, tgt, out", [
    (L(2, 0, 0), L(2, 0, 0), (L(2, 0, 0), L(2, 0, 0))),
    (L(2, 1, 1, 0), L(2, 0, 0, 1), (L(2, 1, 1, 0), L(2, 0, 1, 1))),
    (L(3, 1, 2), L(3, 2, 1), (L(3, 0, 2), L(3, 2, 1))),
])
def test_mxor_examples(src, tgt, out):
    assert mxor(src, tgt) == out


def test_mxor_dimension_mismatch():
    with pytest.raises(DimensionError):
        mxor(L(2, 0, 0), L(2, 0, 0, 0))
    with pytest.raises(DimensionError):
        mxor(L(2, 0, 0), L(3, 0, 0))


def test_decode_all_zero():
    labs = [ErrorLabel.identity(3, 3)] * 4
    s, res = decode_repetition(labs)
    assert s == ((0, 0),) * 3 and res.is_identity()


def test_decode_two_copies():
    s, res = decode_repetition([L(2, 1, 1), L(2, 1, 0)])
    assert s == ((1,),)
    assert res == L(2, 0, 1)


def test_decode_needs_two_copies():
    with pytest.raises(ValueError):
        decode_repetition([L(2, 0, 0)])
    with pytest.raises(DimensionError):
        check_tuple([])


def test_depolarization_weight():
    assert depolarization_weight([L(2, 0, 0)] * 3) == 0
    assert depolarization_weight([L(2, 0, 0), L(2, 1, 0), L(2, 0, 1)]) == 2
    assert depolarization_weight([L(3, 0, 2), L(3, 0, 0)]) == 1
