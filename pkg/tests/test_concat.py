import numpy as np
import pytest

from kasamicr.concat import phi, phi_matrix, simplex_matrix, simplex_params
from kasamicr.errors import AlphabetMismatch, CoprimalityViolated
from kasamicr.kasami import build_mds, kasami_config
from kasamicr.linear import WeightDistribution, weight_distribution

CONFIGS = [(4, 2), (8, 2), (16, 2), (16, 4)]


def test_simplex_2_2():
    S = simplex_matrix(2, 2)
    assert (S.n, S.k) == (3, 2)
    sp = simplex_params(2, 2)
    w = sp.xi
    assert w == sp.ctx.alpha_pow(5)  # omega inside GF(16)
    assert phi([1], sp).tolist() == [1, 1, 0]
    assert phi([w], sp).tolist() == [1, 0, 1]
    assert phi([sp.ctx.mul(w, w)], sp).tolist() == [0, 1, 1]
    assert phi([1, w], sp).tolist() == [1, 1, 0, 1, 0, 1]
    assert phi([0, 0], sp).tolist() == [0] * 6


def test_simplex_parameters():
    S8 = simplex_matrix(2, 3)
    assert (S8.n, S8.k) == (7, 3)
    assert weight_distribution(S8).pairs() == [(0, 1), (4, 7)]
    S42 = simplex_matrix(4, 2)
    assert (S42.n, S42.k, S42.q) == (5, 2, 4)
    assert weight_distribution(S42).pairs() == [(0, 1), (4, 15)]
    with pytest.raises(CoprimalityViolated):
        simplex_params(4, 3)


@pytest.mark.parametrize("p,k", [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (4, 1), (4, 2), (8, 2)])
def test_one_weight_exhaustive(p, k):
    S = simplex_matrix(p, k)
    q = p**k
    assert weight_distribution(S).pairs() == [(0, 1), (q // p, q - 1)]


def test_phi_matrix_of_unit_is_simplex():
    sp = simplex_params(2, 2)
    assert np.array_equal(phi_matrix([[1]], sp).gen, simplex_matrix(2, 2).gen)
    K = phi_matrix(build_mds(4), kasami_config(4).simplex)
    assert K.gen.shape == (6, 15)


def test_alphabet_mismatch():
    sp = kasami_config(4).simplex
    with pytest.raises(AlphabetMismatch):
        phi([2], sp)  # alpha of GF(16) is not in GF(4)
    with pytest.raises(AlphabetMismatch):
        phi_matrix([[2]], sp)


@pytest.mark.parametrize("q,p", CONFIGS)
def test_scaled_isometry(q, p, rng):
    cfg = kasami_config(q, p)
    sp = cfg.simplex
    elems = cfg.F_q.elements
    X = elems[rng.integers(0, q, (1000, q + 1))]
    Y = elems[rng.integers(0, q, (1000, q + 1))]
    # force some equal coordinates so small distances occur
    mask = rng.random((1000, q + 1)) < 0.5
    Y = np.where(mask, X, Y)
    d = (X != Y).sum(axis=1)
    D = (phi(X, sp) != phi(Y, sp)).sum(axis=1)
    assert np.array_equal(D * p, d * q)


@pytest.mark.parametrize("q,p", CONFIGS)
def test_image_is_row_space(q, p):
    M = build_mds(q)
    sp = kasami_config(q, p).simplex
    img = phi(M.codewords(), sp)
    span = phi_matrix(M, sp).codewords()
    assert {tuple(r) for r in img.tolist()} == {tuple(r) for r in span.tolist()}


@pytest.mark.parametrize("q,p", CONFIGS)
def test_weight_transport(q, p):
    M = build_mds(q)
    K = phi_matrix(M, kasami_config(q, p).simplex)
    scaled = WeightDistribution.from_pairs(K.n, [(w * q // p, a) for w, a in weight_distribution(M).pairs()])
    assert weight_distribution(K) == scaled
