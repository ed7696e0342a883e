import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from detsum.field import field_for_q
from detsum.matrices import (
    Mat2,
    MatSet,
    det,
    det_set,
    iterate_sumset,
    mat_add,
    mat_space,
    odot,
    sum_counts,
    sumset,
    variety,
)


@pytest.fixture(scope="module")
def k5():
    return field_for_q(5)


@pytest.fixture(scope="module")
def k9():
    return field_for_q(9)


def test_index_bijection(k5):
    sp = mat_space(k5)
    for idx in range(0, sp.size, 13):
        assert Mat2.from_index(k5, idx).index(k5) == idx


def test_parse_and_format(k5, k9):
    m = Mat2.parse(k5, "[1,2;3,4]")
    assert (m.x1, m.x2, m.x3, m.x4) == (1, 2, 3, 4)
    assert Mat2.parse(k5, m.format(k5)) == m
    # extension field entries use coefficient lists
    m9 = Mat2.parse(k9, "[2,1,0,0;1,1,2,2]")
    assert Mat2.parse(k9, m9.format(k9)) == m9
    with pytest.raises(ValueError):
        Mat2.parse(k5, "[1,2,3;4,5,6]")


mat_idx = st.integers(min_value=0, max_value=5**4 - 1)


@given(a=mat_idx, b=mat_idx)
@settings(max_examples=80, deadline=None)
def test_odot_polarizes_det(a, b):
    k = field_for_q(5)
    x, y = Mat2.from_index(k, a), Mat2.from_index(k, b)
    lhs = det(k, mat_add(k, x, y))
    rhs = k.add(k.add(det(k, x), det(k, y)), odot(k, x, y))
    assert lhs == rhs


def test_variety_sizes(k5, k9):
    for k in (k5, k9):
        q = k.q
        for i in range(1, q):
            assert variety(k, i).size == q**3 - q
        assert variety(k, 0).size == q**4 - (q - 1) * (q**3 - q)


def test_sumset_matches_pairwise_enumeration(k5):
    rng = np.random.Generator(np.random.PCG64(3))
    sp = mat_space(k5)
    a = MatSet.from_indices(k5, rng.integers(0, sp.size, 20))
    b = MatSet.from_indices(k5, rng.integers(0, sp.size, 20))
    brute = {
        mat_add(k5, Mat2.from_index(k5, int(x)), Mat2.from_index(k5, int(y)))
        .index(k5)
        for x in a.indices()
        for y in b.indices()
    }
    assert set(int(v) for v in sumset(a, b).indices()) == brute


def test_sumset_thread_invariance(k5):
    a = variety(k5, 1)
    b = variety(k5, 2)
    assert sumset(a, b, threads=1) == sumset(a, b, threads=4)


def test_sum_counts_total_and_support(k5):
    rng = np.random.Generator(np.random.PCG64(11))
    sp = mat_space(k5)
    a = MatSet.from_indices(k5, rng.integers(0, sp.size, 15))
    b = MatSet.from_indices(k5, rng.integers(0, sp.size, 17))
    counts = sum_counts(a, b)
    assert counts.sum() == a.size * b.size
    assert np.array_equal(counts > 0, sumset(a, b).mask)


def test_iterate_sumset_matches_repeated_addition(k5):
    e = MatSet.from_indices(k5, [1, 7, 30])
    step = e
    for k in range(2, 6):
        step = sumset(step, e)
        assert iterate_sumset(e, k) == step


def test_set_algebra(k5):
    d1 = variety(k5, 1)
    assert d1.complement().size == mat_space(k5).size - d1.size
    assert d1.negate() == d1  # det(-x) = det(x) in 2x2
    assert d1.scale(2) == variety(k5, 4)  # det(cx) = c^2 det(x)
    assert det_set(d1) == {1}


def test_ctx_mismatch_rejected(k5, k9):
    with pytest.raises(ValueError):
        variety(k5, 1).union(variety(k9, 1))
