import itertools

import numpy as np
import pytest

from detsum.counting import (
    SizingError,
    check_main1,
    check_mainthm_bound,
    check_prop71,
    check_w0_bound,
    count_profile,
    deviation_bound,
    energy_and_sumset_report,
    spectral_count,
)
from detsum.field import field_for_q
from detsum.matrices import Mat2, MatSet, mat_add, mat_space, variety


def _seeded_sets(k, sizes, seed):
    rng = np.random.Generator(np.random.PCG64(seed))
    sp = mat_space(k)
    out = []
    for s in sizes:
        out.append(MatSet.from_indices(k, rng.permutation(sp.size)[:s]))
    return out


def test_profile_totals_and_shift_identity():
    k = field_for_q(5)
    e = variety(k, 1)
    f = variety(k, 3)
    prof = count_profile(e, f)
    assert int(prof.n_t.sum()) == e.size * f.size
    assert int(prof.w_l.sum()) == e.size * f.size
    # W_l counts pairs with odot = l; N over det(x+y) = l + i + j
    for ell in range(5):
        assert prof.n_t[k.add(ell, k.add(1, 3))] == prof.w_l[ell]
    # R_l = (q W_l - |E||F|) / q must be an exact integer relationship
    assert np.array_equal(prof.r_num, 5 * prof.w_l - e.size * f.size)


def test_energy_by_quadruple_enumeration():
    k = field_for_q(3)
    e, f = _seeded_sets(k, [6, 5], seed=2)
    prof = count_profile(e, f)
    quad = 0
    pairs = [
        mat_add(k, Mat2.from_index(k, int(x)), Mat2.from_index(k, int(y))).index(k)
        for x in e.indices()
        for y in f.indices()
    ]
    for s1, s2 in itertools.product(pairs, repeat=2):
        quad += s1 == s2
    assert prof.energy == quad


def test_spectral_equals_brute():
    k = field_for_q(3)
    e = variety(k, 1)
    f = variety(k, 2)
    prof = count_profile(e, f)
    for t in range(3):
        assert spectral_count(e, f, t) == int(prof.n_t[t])


def test_mainthm_bound_on_varieties():
    k = field_for_q(5)
    res = check_mainthm_bound(variety(k, 1), variety(k, 1))
    assert res["pass"]
    assert res["bound"] == pytest.approx(deviation_bound(5, 120, 120))


def test_main1_threshold_branches():
    k = field_for_q(3)
    d1 = variety(k, 1)
    res = check_main1(d1, d1)
    # 24 * 24 < 225 * 81: informational branch
    assert not res["threshold_met"] and res["pass"]
    tiny = MatSet.from_indices(k, [0])
    assert not check_main1(tiny, tiny)["threshold_met"]


def test_w0_and_cauchy_schwarz():
    k = field_for_q(3)
    e, f = _seeded_sets(k, [30, 40], seed=9)
    assert check_w0_bound(e, f)["pass"]
    res = energy_and_sumset_report(e, f)
    assert res["pass"]
    assert set(res["ratios"]) >= {"lambda_vs_proposition", "sumset_vs_mainthm2"}


def test_prop71_deviation_always_checked():
    k = field_for_q(3)
    e, f = _seeded_sets(k, [40, 40], seed=4)
    res = check_prop71(e, f)
    assert res["pass"]  # deviation bound holds; surjectivity not claimed here


def test_pair_budget_guard():
    k = field_for_q(13)
    full = MatSet.full(k)
    with pytest.raises(SizingError):
        count_profile(full, full)
