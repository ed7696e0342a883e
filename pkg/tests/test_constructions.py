import numpy as np
import pytest

from detsum.constructions import (
    all_rows,
    build_sharpness,
    prime_subfield_matrices,
    product_set,
    random_subset,
    seeded_sample,
    sl2_prime_subfield,
    smallest_nonsquare,
    verify_unique_solution,
)
from detsum.field import field_for_q
from detsum.matrices import MatSet, det_set, sumset, variety


def test_smallest_nonsquare():
    assert smallest_nonsquare(field_for_q(5)) == 2
    assert smallest_nonsquare(field_for_q(7)) == 3
    k = field_for_q(9)
    assert k.quad_char(smallest_nonsquare(k)) == -1


def test_sharpness_sets():
    for q in (3, 5, 7):
        k = field_for_q(q)
        for i in range(1, q):
            if k.quad_char(i) == 1:
                with pytest.raises(ValueError):
                    build_sharpness(k, i)
                continue
            sh = build_sharpness(k, i)
            assert sh.h.size == q * (q - 1)
            assert sh.e.size == q * (q - 1) // 2
            assert sh.e.intersect(sh.e.negate()).size == 0
            assert sh.e.union(sh.e.negate()) == sh.h
            assert sh.h.intersect(variety(k, i)) == sh.h
            assert 0 not in det_set(sumset(sh.e, sh.e))
            sol = verify_unique_solution(sh)
            assert sol["unique_in_h"] and sol["solutions_within_e"] == 0


def test_product_set_sizes():
    k = field_for_q(5)
    rows = all_rows(k)
    assert len(rows) == 25
    s = product_set(k, rows[:4], rows[:7])
    assert s.size == 28
    assert product_set(k, rows, rows) == MatSet.full(k)


def test_prime_subfield_matrices_and_sl2():
    k = field_for_q(9)
    m = prime_subfield_matrices(k)
    assert m.size == 3**4
    sl2 = sl2_prime_subfield(k)
    assert sl2.size == 3 * (3 * 3 - 1)  # |SL2(F_3)| = 24
    assert det_set(sl2) == {1}
    assert sl2.intersect(m) == sl2


def test_seeded_sampling_is_reproducible():
    pool = np.arange(1000)
    a = seeded_sample(pool, 50, seed=123)
    b = seeded_sample(pool, 50, seed=123)
    c = seeded_sample(pool, 50, seed=124)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert len(np.unique(a)) == 50


def test_random_subset():
    k = field_for_q(5)
    d1 = variety(k, 1)
    s = random_subset(d1, 30, seed=5)
    assert s.size == 30 and s.intersect(d1) == s
