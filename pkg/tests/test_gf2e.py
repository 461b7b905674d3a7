import numpy as np
import pytest
from conftest import clmul_mod
from hypothesis import given, settings
from hypothesis import strategies as st

from kasamicr import poly
from kasamicr.errors import DivisionByZero, NoFactorization, NotInSubfield, NotIrreducible, NotPrimitive, OrderUnavailable
from kasamicr.gf2e import (
    DEFAULT_MODULI,
    arith,
    basis_over,
    bit_codes,
    build_field,
    coordinate_table,
    factor_dzeta,
    is_irreducible_f2,
    minimal_polynomial,
    subfield,
    trace_rel,
    unity_root,
)


def test_default_moduli_match_table():
    assert DEFAULT_MODULI[2] == 0b111
    assert DEFAULT_MODULI[3] == 0b1011
    assert DEFAULT_MODULI[4] == 0b10011
    assert DEFAULT_MODULI[6] == 0b1000011
    assert DEFAULT_MODULI[8] == 0b100011101
    assert DEFAULT_MODULI[12] == (1 << 12) | (1 << 6) | (1 << 4) | 0b11


@pytest.mark.parametrize("e", range(1, 17))
def test_default_moduli_are_primitive(e):
    ctx = build_field(e)
    assert is_irreducible_f2(ctx.modulus)
    assert ctx.order_of(ctx.alpha) == 2**e - 1


def _order_by_multiplication(x, modulus, n):
    y, k = x, 1
    while y != 1:
        y = clmul_mod(y, x, modulus)
        k += 1
        assert k <= n
    return k


def test_build_field_small_cases():
    F4 = build_field(2)
    assert F4.modulus == 0b111 and F4.order_of(F4.alpha) == 3
    F16 = build_field(4)
    assert _order_by_multiplication(F16.alpha, F16.modulus, 15) == 15
    assert F16.pow(F16.alpha, 3) != 1 and F16.pow(F16.alpha, 5) != 1


def test_non_primitive_and_reducible_moduli():
    assert _order_by_multiplication(2, 0b11111, 15) == 5
    with pytest.raises(NotPrimitive):
        build_field(4, 0b11111)
    with pytest.raises(NotIrreducible):
        build_field(4, 0b10101)  # (x^2+x+1)^2


def test_log_antilog_roundtrip():
    ctx = build_field(8)
    xs = np.arange(1, 256)
    assert np.array_equal(ctx.exp[ctx.log[xs]], xs)
    assert np.array_equal(ctx.log[ctx.exp[np.arange(255)]], np.arange(255))


def test_arith_examples():
    F4 = build_field(2)
    w = F4.alpha
    assert arith(F4, "mul", w, w) == w ^ 1
    assert arith(F4, "add", w, w) == 0
    F16 = build_field(4)
    assert arith(F16, "pow", F16.alpha, 15) == 1
    with pytest.raises(DivisionByZero):
        arith(F16, "inv", 0, None)
    with pytest.raises(ZeroDivisionError):
        F16.div(3, 0)


@settings(max_examples=300, deadline=None)
@given(st.sampled_from([3, 4, 6, 8, 10]), st.data())
def test_mul_matches_table_free_oracle(e, data):
    ctx = build_field(e)
    x = data.draw(st.integers(0, ctx.n))
    y = data.draw(st.integers(0, ctx.n))
    z = data.draw(st.integers(0, ctx.n))
    assert ctx.mul(x, y) == clmul_mod(x, y, ctx.modulus)
    assert ctx.mul(x, y) == ctx.mul(y, x)
    assert ctx.mul(ctx.mul(x, y), z) == ctx.mul(x, ctx.mul(y, z))
    assert ctx.mul(x, y ^ z) == ctx.mul(x, y) ^ ctx.mul(x, z)
    if x:
        assert ctx.pow(x, ctx.n) == 1
        assert ctx.mul(x, ctx.inv(x)) == 1


def test_array_ops_agree_with_scalar(rng):
    ctx = build_field(6)
    x = rng.integers(0, 64, 500)
    y = rng.integers(0, 64, 500)
    assert np.array_equal(ctx.mul_array(x, y), [ctx.mul(int(a), int(b)) for a, b in zip(x, y)])
    assert np.array_equal(ctx.pow_array(x, 5), [ctx.pow(int(a), 5) for a in x])
    nz = x[x > 0]
    assert np.array_equal(ctx.inv_array(nz), [ctx.inv(int(a)) for a in nz])


def test_subfields():
    ctx = build_field(4)
    F4 = subfield(ctx, 2)
    assert F4.size == 4 and len(F4.elements) == 4
    assert all(ctx.pow(int(z), 4) == z for z in F4.elements)
    assert F4.gamma == ctx.alpha_pow(5)
    with pytest.raises(Exception):
        subfield(ctx, 3)


def test_trace_examples():
    F4 = build_field(2)
    F2, F4s = subfield(F4, 1), subfield(F4, 2)
    assert trace_rel(0, F2, F4s) == 0
    assert trace_rel(F4.alpha, F2, F4s) == 1
    ctx = build_field(4)
    a = ctx.alpha
    conj = a ^ ctx.pow(a, 2) ^ ctx.pow(a, 4) ^ ctx.pow(a, 8)
    assert trace_rel(a, subfield(ctx, 1), subfield(ctx, 4)) == conj == 0
    with pytest.raises(NotInSubfield):
        trace_rel(a, subfield(ctx, 1), subfield(ctx, 2))


@pytest.mark.parametrize("e", [2, 4, 6, 8])
def test_trace_transitivity_exhaustive(e):
    ctx = build_field(e)
    divs = [d for d in range(1, e + 1) if e % d == 0]
    z = np.arange(ctx.size)
    top = subfield(ctx, e)
    for a in divs:
        for b in divs:
            if b % a:
                continue
            lo, mid = subfield(ctx, a), subfield(ctx, b)
            assert np.array_equal(trace_rel(z, lo, top), trace_rel(trace_rel(z, mid, top), lo, mid))


def test_trace_linearity(rng):
    ctx = build_field(8)
    F4, top = subfield(ctx, 2), subfield(ctx, 8)
    z = rng.integers(0, 256, 200)
    w = rng.integers(0, 256, 200)
    a = F4.elements[rng.integers(0, 4, 200)]
    b = F4.elements[rng.integers(0, 4, 200)]
    lhs = trace_rel(ctx.mul_array(a, z) ^ ctx.mul_array(b, w), F4, top)
    rhs = ctx.mul_array(a, trace_rel(z, F4, top)) ^ ctx.mul_array(b, trace_rel(w, F4, top))
    assert np.array_equal(lhs, rhs)


def test_unity_root():
    ctx = build_field(4)
    assert unity_root(ctx, 5) == ctx.alpha_pow(3)
    assert unity_root(ctx, 3) == ctx.alpha_pow(5)
    assert unity_root(ctx, 1) == 1
    with pytest.raises(OrderUnavailable):
        unity_root(ctx, 7)


def test_factor_dzeta_examples():
    ctx = build_field(4)
    F4 = subfield(ctx, 2)
    zeta = ctx.alpha_pow(3)
    assert factor_dzeta(ctx.pow(zeta, 2), F4, zeta, 5) == (1, 2)
    assert factor_dzeta(ctx.alpha, F4, zeta, 5) == (ctx.alpha_pow(10), 2)
    assert factor_dzeta(ctx.alpha_pow(5), F4, zeta, 5) == (ctx.alpha_pow(5), 5)
    with pytest.raises(NoFactorization):
        factor_dzeta(ctx.alpha, subfield(ctx, 1), ctx.alpha_pow(5), 3)


@pytest.mark.parametrize("e", [2, 4, 6, 8])
def test_factor_dzeta_roundtrip_exhaustive(e):
    ctx = build_field(e)
    h = e // 2
    sub = subfield(ctx, h)
    q = 2**h
    zeta = ctx.alpha_pow(q - 1)
    seen = set()
    for x in range(1, ctx.size):
        d, l = factor_dzeta(x, sub, zeta, q + 1)
        assert sub.contains(d) and d != 0 and 1 <= l <= q + 1
        assert ctx.mul(d, ctx.pow(zeta, l)) == x
        seen.add((d, l))
    assert len(seen) == ctx.n


def test_minimal_polynomials():
    ctx = build_field(4)
    F2, F4 = subfield(ctx, 1), subfield(ctx, 2)
    assert minimal_polynomial(0, F2) == [0, 1]
    assert minimal_polynomial(ctx.alpha, F2) == [1, 1, 0, 0, 1]
    zeta = ctx.alpha_pow(3)
    tr = trace_rel(zeta, F4, subfield(ctx, 4))
    mp = minimal_polynomial(zeta, F4)
    assert mp == [1, tr, 1]
    assert mp == poly.from_roots(ctx, [zeta, ctx.pow(zeta, 4)])


def test_coordinates_and_bit_codes():
    ctx = build_field(8)
    F4, F16 = subfield(ctx, 2), subfield(ctx, 4)
    basis = basis_over(F4, F16)
    tab = coordinate_table(F4, F16)
    for z in F16.elements:
        c = tab[z]
        acc = 0
        for ci, b in zip(c, basis):
            acc ^= ctx.mul(int(ci), b)
        assert acc == z
    enc, dec = bit_codes(F16)
    assert sorted(enc[F16.elements].tolist()) == list(range(16))
    assert np.array_equal(dec[enc[F16.elements]], F16.elements)
    a, b = F16.elements[3], F16.elements[9]
    assert enc[a ^ b] == enc[a] ^ enc[b]
