import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from detsum.field import FieldCtx, field_for_q, make_field

QS = [3, 5, 7, 9, 25, 27]


@pytest.fixture(scope="module", params=QS)
def ctx(request):
    return field_for_q(request.param)


def test_known_moduli():
    # lex-smallest monic irreducible, constant term first
    assert make_field(3, 2).modulus == [1, 0, 1]          # x^2 + 1
    assert make_field(3, 3).modulus == [1, 0, 2, 1]
    assert make_field(5, 2).modulus == [1, 1, 1]          # x^2 + x + 1
    assert make_field(7, 1).modulus == [0, 1]


def test_rejects_bad_parameters():
    with pytest.raises(ValueError):
        make_field(2, 3)
    with pytest.raises(ValueError):
        make_field(9, 1)
    with pytest.raises(ValueError):
        make_field(3, 12)  # 3^12 > 2^16


elem = st.integers(min_value=0, max_value=10**6)


@given(a=elem, b=elem, c=elem)
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    k = field_for_q(25)
    a, b, c = a % k.q, b % k.q, c % k.q
    assert k.add(a, b) == k.add(b, a)
    assert k.add(k.add(a, b), c) == k.add(a, k.add(b, c))
    assert k.mul(a, b) == k.mul(b, a)
    assert k.mul(a, k.add(b, c)) == k.add(k.mul(a, b), k.mul(a, c))
    assert k.add(a, k.neg(a)) == 0


def test_inverses(ctx):
    for a in range(1, ctx.q):
        assert ctx.mul(a, ctx.inv(a)) == 1
    with pytest.raises(ZeroDivisionError):
        ctx.inv(0)


def test_trace_is_additive_onto_prime_subfield(ctx):
    tr = ctx.trace_table
    assert tr.max() < ctx.p and tr.min() >= 0
    # additivity, and every fiber has size q/p
    for a in range(0, ctx.q, max(1, ctx.q // 7)):
        for b in range(0, ctx.q, max(1, ctx.q // 5)):
            assert tr[ctx.add(a, b)] == (tr[a] + tr[b]) % ctx.p
    assert all(np.count_nonzero(tr == r) == ctx.q // ctx.p for r in range(ctx.p))


def test_quad_char_multiplicative(ctx):
    eta = ctx.quad_char
    assert eta(0) == 0
    assert eta(1) == 1
    squares = sum(eta(a) == 1 for a in range(1, ctx.q))
    assert squares == (ctx.q - 1) // 2
    for a in range(1, ctx.q):
        for b in range(1, ctx.q, max(1, ctx.q // 6)):
            assert eta(ctx.mul(a, b)) == eta(a) * eta(b)


def test_vector_ops_match_scalars(ctx):
    rng = np.random.Generator(np.random.PCG64(7))
    a = rng.integers(0, ctx.q, size=50)
    b = rng.integers(0, ctx.q, size=50)
    assert all(ctx.add_vec(a, b)[i] == ctx.add(int(a[i]), int(b[i]))
               for i in range(50))
    assert all(ctx.mul_vec(a, b)[i] == ctx.mul(int(a[i]), int(b[i]))
               for i in range(50))


def test_vector_ops_do_not_mutate_inputs(ctx):
    a = np.arange(ctx.q, dtype=np.int64)
    b = np.arange(ctx.q, dtype=np.int64)
    ctx.add_vec(a, b)
    ctx.mul_vec(a, b)
    assert np.array_equal(a, np.arange(ctx.q))
    assert np.array_equal(b, np.arange(ctx.q))


def test_element_parse_format_roundtrip(ctx):
    for a in range(ctx.q):
        assert ctx.parse_elem(ctx.format_elem(a)) == a


def test_descriptor_and_cache():
    k = field_for_q(9)
    assert k.descriptor() == "3^2:" + k.modulus_str()
    assert field_for_q(9) is k
