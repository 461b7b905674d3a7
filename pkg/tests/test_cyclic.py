import numpy as np
import pytest

from kasamicr import poly
from kasamicr.cyclic import (
    CyclicSpec,
    beta,
    check_poly_of,
    cyclotomic_orbit,
    from_check_poly,
    from_nonzeros_trace,
    generator_poly,
    is_shift_invariant,
)
from kasamicr.errors import DegenerateOrbit, NotCyclic, NotDivisor
from kasamicr.gf2e import build_field, minimal_polynomial, subfield
from kasamicr.kasami import build_kasami_dual, build_mds, crt_reindex
from kasamicr.linear import LinearCode, canonical_form, dual, is_mds, weight_distribution


def F(e, d):
    return subfield(build_field(e), d)


def test_check_poly_examples():
    F2 = F(4, 1)
    full = from_check_poly(7, subfield(build_field(3), 1), poly.x_n_minus_1(7))
    assert full.k == 7
    rep = from_check_poly(3, subfield(build_field(2), 1), [1, 1])
    assert rep.gen.tolist() == [[1, 1, 1]]
    ctx = build_field(4)
    zeta = ctx.alpha_pow(3)
    h = poly.from_roots(ctx, [1, zeta, ctx.pow(zeta, 4)])
    M = from_check_poly(5, subfield(ctx, 2), h)
    assert (M.n, M.k) == (5, 3) and is_mds(M)
    assert M == build_mds(4)
    with pytest.raises(NotDivisor):
        from_check_poly(5, F2, [1, 1, 1])


def test_trace_examples():
    F2 = F(4, 1)
    r = from_nonzeros_trace(CyclicSpec(15, F2, (0,)))
    assert r.k == 1 and r.gen.tolist() == [[1] * 15]
    K = from_nonzeros_trace(CyclicSpec(15, F2, (1, 5)))
    assert (K.n, K.k) == (15, 6)
    assert canonical_form(K) == canonical_form(crt_reindex(build_kasami_dual(4), 4))
    K8 = from_nonzeros_trace(CyclicSpec(63, F(6, 1), (1, 9)))
    assert (K8.n, K8.k) == (63, 9)
    assert K8 == crt_reindex(build_kasami_dual(8), 8)
    with pytest.raises(DegenerateOrbit):
        CyclicSpec(15, F2, (1, 2)).orbits()


def test_orbits():
    assert cyclotomic_orbit(1, 15, 2) == [1, 2, 4, 8]
    assert cyclotomic_orbit(5, 15, 2) == [5, 10]
    assert beta(F(4, 1), 5) == build_field(4).alpha_pow(3)


def test_shift_invariance():
    F2 = F(4, 1)
    assert is_shift_invariant(LinearCode(F2, [[1, 1, 1]]))
    K = build_kasami_dual(4)
    assert not is_shift_invariant(K)
    assert is_shift_invariant(crt_reindex(K, 4))


def test_generator_poly_examples():
    F2 = subfield(build_field(2), 1)
    assert generator_poly(LinearCode(F2, np.eye(3, dtype=int))) == [1]
    assert generator_poly(LinearCode(F2, [[1, 1, 1]])) == [1, 1, 1]
    with pytest.raises(NotCyclic):
        generator_poly(build_kasami_dual(4))


@pytest.mark.parametrize("q", [4, 8])
def test_generator_poly_of_reindexed_kasami(q):
    # oracle: product of minimal polynomials of beta^r over every orbit
    # outside the reciprocal nonzero orbits {-1, -(q+1)}
    C = crt_reindex(build_kasami_dual(q), q)
    n = q * q - 1
    sub = subfield(build_field(2 * (q.bit_length() - 1)), 1)
    ctx = sub.ctx
    b = beta(sub, n)
    excluded = set(cyclotomic_orbit(-1, n, 2)) | set(cyclotomic_orbit(-(q + 1), n, 2))
    g, seen = [1], set(excluded)
    for r in range(n):
        if r not in seen:
            orb = cyclotomic_orbit(r, n, 2)
            seen.update(orb)
            g = poly.mul(ctx, g, minimal_polynomial(ctx.pow(b, r), sub))
    assert generator_poly(C) == g


@pytest.mark.parametrize(
    "n,e,d,S",
    [(5, 4, 2, (0, 1)), (9, 6, 3, (0, 1)), (15, 4, 1, (1, 5)), (15, 4, 1, (0, 3, 7)), (15, 4, 2, (1, 2))],
)
def test_trace_and_check_poly_agree(n, e, d, S):
    sub = F(e, d)
    spec = CyclicSpec(n, sub, S)
    A = from_nonzeros_trace(spec)
    B = from_check_poly(n, sub, check_poly_of(spec))
    assert A == B
    assert is_shift_invariant(A)
    # dual has nonzeros = complement of the negated orbits
    neg = set()
    for orb in spec.orbits():
        neg.update(cyclotomic_orbit(-orb[0], n, sub.size))
    rest, seen = [], set(neg)
    for r in range(n):
        if r not in seen:
            seen.update(cyclotomic_orbit(r, n, sub.size))
            rest.append(r)
    assert dual(A) == from_nonzeros_trace(CyclicSpec(n, sub, tuple(rest)))


def test_dimension_equals_degree_of_check_poly():
    sub = F(4, 1)
    for S in [(0,), (1,), (3,), (5,), (1, 3), (0, 1, 5, 7)]:
        h = check_poly_of(CyclicSpec(15, sub, S))
        assert from_check_poly(15, sub, h).k == len(h) - 1


def test_mds_trace_weights():
    # trace construction of M_8^perp has the closed-form weights
    M = from_nonzeros_trace(CyclicSpec(9, F(6, 3), (0, 1)))
    assert weight_distribution(M).pairs() == [(0, 1), (7, 252), (8, 63), (9, 196)]
