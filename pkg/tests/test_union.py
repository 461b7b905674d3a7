import itertools

import numpy as np
import pytest
from conftest import naive_cr_array

from kasamicr.errors import KOutOfRange, WrongArray
from kasamicr.graphs import unpack
from kasamicr.kasami import build_kasami_dual, build_mds
from kasamicr.linear import LinearCode, dual
from kasamicr.union import (
    VertexSet,
    build_Bk,
    check_block_partition,
    check_refined_partition,
    cr_array,
    distance3_coset_reps,
    expected_block_quotient,
    expected_refined_quotient,
    is_additive,
    lex_key,
    quotient_matches,
    random_selection,
)

BASES = {"K4": lambda: dual(build_kasami_dual(4)), "M4": lambda: dual(build_mds(4))}


@pytest.fixture(scope="module", params=sorted(BASES))
def family(request):
    return distance3_coset_reps(BASES[request.param]())


def test_leaders(family):
    assert (family.P, family.q, family.r) == (16, 4, 4)
    assert len(family.leaders) == 3
    S = family.base
    for v in family.leaders:
        assert family.labels[v] == 3
    # each leader is the lex-least member of its coset
    for v in family.leaders:
        coset = S.words ^ v
        assert lex_key([v], S.n, S.sub.d)[0] == lex_key(coset, S.n, S.sub.d).min()
    allc = np.concatenate([family.coset(i) for i in range(4)])
    assert len(np.unique(allc)) == 4 * len(S)


def test_hamming_code_is_rejected():
    F2 = build_kasami_dual(4).sub
    H = [[1, 0, 1, 0, 1, 0, 1], [0, 1, 1, 0, 0, 1, 1], [0, 0, 0, 1, 1, 1, 1]]
    with pytest.raises(WrongArray):
        distance3_coset_reps(dual(LinearCode(F2, H)))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_Bk_arrays(family, k):
    B = build_Bk(family, k)
    assert len(B) == k * len(family.base)
    assert cr_array(B).as_tuple() == ((15, 16 - 4 * k, 1), (1, 4 * k, 15))
    Q = check_block_partition(family, range(k))
    assert quotient_matches(Q, expected_block_quotient(16, 4, k))


def test_Bk_against_naive_oracle():
    fam = distance3_coset_reps(BASES["M4"]())
    B = build_Bk(fam, 3)
    words = [tuple(w) for w in unpack(B.words, 5, B.sub).tolist()]
    elems = [int(x) for x in B.sub.elements]
    assert naive_cr_array(words, 5, elems) == ((15, 4, 1), (1, 12, 15))


def test_k1_is_base(family):
    assert np.array_equal(build_Bk(family, 1).words, family.base.words)


def test_additivity(family):
    assert is_additive(family.base)
    assert is_additive(build_Bk(family, 2))
    # no additivity claim for k = 3; |B_3| = 3|C| is not a power of 2
    assert not is_additive(build_Bk(family, 3))
    tower = build_Bk(family, 2, "additive_tower")
    assert is_additive(tower)
    assert cr_array(tower).as_tuple() == ((15, 8, 1), (1, 8, 15))


def test_is_additive_small():
    F2 = build_kasami_dual(4).sub
    S = VertexSet(np.array([0, 1, 2, 3]), 2, F2)
    assert is_additive(S)
    assert not is_additive(VertexSet(np.array([0, 1, 2]), 2, F2))
    assert not is_additive(VertexSet(np.array([1, 2, 3]), 2, F2))


def test_refined_partition(family):
    Q = check_refined_partition(family)
    assert quotient_matches(Q, expected_refined_quotient(16, 4))
    assert Q.shape == (8, 8)


def test_each_coset_is_cr(family):
    for i in range(family.r):
        S = VertexSet(np.sort(family.coset(i)), family.base.n, family.base.sub)
        assert cr_array(S).as_tuple() == ((15, 12, 1), (1, 4, 15))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_every_selection(family, k):
    # every k-subset of the r cosets gives I_k: the choice does not matter here
    for sel in itertools.combinations(range(family.r), k):
        B = build_Bk(family, k, selection=sel)
        assert cr_array(B).as_tuple() == ((15, 16 - 4 * k, 1), (1, 4 * k, 15))
        assert quotient_matches(check_block_partition(family, sel), expected_block_quotient(16, 4, k))


def test_random_selection_reproducible(family):
    a = random_selection(family, 2, np.random.default_rng(7))
    b = random_selection(family, 2, np.random.default_rng(7))
    assert a == b and len(set(a)) == 2


def test_k_out_of_range(family):
    for k in (0, 4):
        with pytest.raises(KOutOfRange):
            build_Bk(family, k)
    with pytest.raises(KOutOfRange):
        build_Bk(family, 3, "additive_tower")
    with pytest.raises(KOutOfRange):
        build_Bk(family, 2, selection=[0, 0])


def test_export(family, tmp_path):
    B = build_Bk(family, 2)
    path = tmp_path / "b2.txt"
    B.export(path)
    vals = [int(x) for x in path.read_text().split()]
    assert vals == sorted(vals) and len(vals) == len(B)
