import cmath

import pytest

from detsum.cyclotomic import CycInt


def test_zeta_relation_collapses_to_zero():
    # 1 + z + ... + z^(p-1) = 0
    total = sum((CycInt.zeta_pow(5, k) for k in range(5)), CycInt.zero(5))
    assert total == 0
    assert total.is_zero()


def test_integers_embed():
    a = CycInt.integer(7, 42)
    assert a == 42
    assert a.as_integer() == 42
    assert (a - a).is_zero()


def test_ring_ops():
    p = 7
    z = CycInt.zeta_pow(p, 1)
    x = z * z * z
    assert x == CycInt.zeta_pow(p, 3)
    assert x * CycInt.zeta_pow(p, 4) == 1  # z^7 = 1
    assert (x + x.conj()).is_real()
    assert x.conj() == CycInt.zeta_pow(p, p - 3)


def test_norm_and_eval_agree():
    p = 5
    x = CycInt.from_hist(p, [3, 1, 4, 1, 5])
    v = x.eval()
    ns = x.norm_sq()
    assert ns.is_real()
    assert ns.eval().real == pytest.approx(abs(v) ** 2, rel=1e-12)
    expect = sum(c * cmath.exp(2j * cmath.pi * k / p)
                 for k, c in enumerate([3, 1, 4, 1, 5]))
    assert v == pytest.approx(expect)


def test_canonical_form_uniqueness():
    # two histograms differing by a constant shift name the same element
    a = CycInt.from_hist(3, [2, 5, 1])
    b = CycInt.from_hist(3, [1, 4, 0])
    assert a == b
    assert a.coeffs[-1] == 0


def test_json_roundtrip():
    x = CycInt.from_hist(11, list(range(11)))
    assert CycInt.from_json(x.to_json()) == x


def test_mixed_characteristic_rejected():
    with pytest.raises(ValueError):
        CycInt.zeta_pow(3, 1) + CycInt.zeta_pow(5, 1)
