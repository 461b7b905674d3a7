"""Unions of distance-3 cosets of a completely regular code.

Vertex sets live in H(n, p) as packed integers (see :mod:`graphs`).  A code C
with array {P-1, P-q, 1; 1, q, P-1} has its distance-3 layer split into
r - 1 cosets, r = P/q; merging any k of the r cosets C_0 = C, C_1, ...
gives a candidate with array {P-1, P-kq, 1; 1, kq, P-1}.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import KOutOfRange, WrongArray
from .gf2e import SubfieldHandle
from .graphs import CosetGraph, NotEquitable, completely_regular_array, pack, quotient_matrix
from .linear import LinearCode


@dataclass(frozen=True, eq=False)
class VertexSet:
    """Sorted packed words of H(n, p) over ``sub``."""

    words: np.ndarray
    n: int
    sub: SubfieldHandle = field(repr=False)

    def __len__(self):
        return len(self.words)

    def __contains__(self, w):
        i = np.searchsorted(self.words, w)
        return bool(i < len(self.words) and self.words[i] == w)

    def hamming(self) -> CosetGraph:
        return CosetGraph.hamming(self.n, self.sub)

    def export(self, path) -> None:
        np.savetxt(path, self.words, fmt="%d")


def as_vertex_set(C) -> VertexSet:
    if isinstance(C, VertexSet):
        return C
    if isinstance(C, LinearCode):
        return VertexSet(np.sort(pack(C.codewords(), C.sub)), C.n, C.sub)
    raise TypeError("expected a LinearCode or VertexSet")


def lex_key(words, n: int, d: int) -> np.ndarray:
    """Sort key putting coordinate 1 most significant (symbols by bit code)."""
    w = np.asarray(words, dtype=np.int64)
    out = np.zeros_like(w)
    mask = (1 << d) - 1
    for i in range(n):
        out = (out << d) | ((w >> (i * d)) & mask)
    return out


def _array_parameters(arr, p: int):
    """(P, q) when arr = {P-1, P-q, 1; 1, q, P-1} with P an even power of p."""
    if not arr or arr.covering_radius != 3:
        return None
    (b0, b1, b2), (c1, c2, c3) = arr.b, arr.c
    P = b0 + 1
    q = c2
    e, x = 0, 1
    while x < P:
        x *= p
        e += 1
    if x != P or e % 2 or b2 != 1 or c1 != 1 or c3 != b0 or b1 != P - q:
        return None
    if q < 1 or q & (q - 1) or P % q:
        return None
    return P, q


@dataclass(frozen=True, eq=False)
class CosetFamily:
    """C together with lex-least leaders of the cosets partitioning C^(3)."""

    base: VertexSet
    leaders: tuple
    P: int
    q: int
    labels: np.ndarray = field(repr=False)  # distance of every vertex to C

    @property
    def r(self) -> int:
        return self.P // self.q

    def coset(self, i: int) -> np.ndarray:
        """C_i for i in 0..r-1 (C_0 = C), sorted."""
        if i == 0:
            return self.base.words
        return np.sort(self.base.words ^ self.leaders[i - 1])


def distance3_coset_reps(C) -> CosetFamily:
    S = as_vertex_set(C)
    G = S.hamming()
    arr = completely_regular_array(G, S.words)
    params = _array_parameters(arr, S.sub.size)
    if params is None:
        raise WrongArray(f"array {arr} is not of the form {{P-1, P-q, 1; 1, q, P-1}}")
    P, q = params
    labels = G.bfs(S.words)
    far = np.nonzero(labels == 3)[0]
    far = far[np.argsort(lex_key(far, S.n, S.sub.d), kind="stable")]
    taken = np.zeros(G.order, dtype=bool)
    leaders = []
    for v in far:
        if taken[v]:
            continue
        leaders.append(int(v))
        coset = S.words ^ v
        if np.any(labels[coset] != 3):
            raise WrongArray("distance-3 layer is not a union of cosets; C is not additive")
        taken[coset] = True
    if len(leaders) != P // q - 1:
        raise WrongArray(f"found {len(leaders)} distance-3 cosets, expected {P // q - 1}")
    return CosetFamily(S, tuple(leaders), P, q, labels)


def _union(fam: CosetFamily, selection) -> VertexSet:
    words = np.concatenate([fam.coset(i) for i in selection])
    return VertexSet(np.sort(words), fam.base.n, fam.base.sub)


def build_Bk(C, k: int, mode: str = "direct", selection=None) -> VertexSet:
    """B_k as a union of k cosets.

    ``direct`` takes C_0..C_{k-1} (or the explicit ``selection`` of k indices
    in 0..r-1); ``additive_tower`` doubles log2(k) times, each time adding the
    lex-least distance-3 coset of the current additive code.
    """
    fam = C if isinstance(C, CosetFamily) else distance3_coset_reps(C)
    if not 1 <= k <= fam.r - 1:
        raise KOutOfRange(f"k={k} outside 1..{fam.r - 1}")
    if mode == "direct":
        if selection is None:
            selection = range(k)
        selection = sorted(set(int(i) for i in selection))
        if len(selection) != k or selection[0] < 0 or selection[-1] >= fam.r:
            raise KOutOfRange(f"selection must be {k} distinct indices in 0..{fam.r - 1}")
        return _union(fam, selection)
    if mode == "additive_tower":
        if k & (k - 1):
            raise KOutOfRange(f"additive_tower needs k a power of 2, got {k}")
        B = fam.base
        while len(B) < k * len(fam.base):
            step = distance3_coset_reps(B)
            B = _union(step, [0, 1])
        return B
    raise ValueError(f"unknown mode {mode!r}")


def random_selection(fam: CosetFamily, k: int, rng: np.random.Generator) -> list[int]:
    return sorted(rng.choice(fam.r, size=k, replace=False).tolist())


def _f2_rank(words: np.ndarray, bits: int) -> int:
    W = np.unique(np.asarray(words, dtype=np.int64))
    r = 0
    for b in range(bits - 1, -1, -1):
        hit = (W >> b) & 1 == 1
        if not hit.any():
            continue
        piv = W[np.argmax(hit)]
        W = np.where(hit, W ^ piv, W)
        r += 1
    return r


def is_additive(S) -> bool:
    """0 in S and S + S in S, tested as |S| = |span_F2(S)|."""
    S = as_vertex_set(S)
    words = np.unique(S.words)
    if len(words) == 0 or words[0] != 0:
        return False
    r = _f2_rank(words, S.n * S.sub.d)
    return len(words) == 1 << r


def cr_array(S):
    """Intersection array (or falsy verdict) of a vertex set in H(n, p)."""
    S = as_vertex_set(S)
    return completely_regular_array(S.hamming(), S.words)


def refined_partition(fam: CosetFamily):
    """Cells C_0..C_{r-1} and C_r..C_{2r-1} (neighbours of each C_i).

    Returns None when the neighbourhoods overlap (not a partition).
    """
    G = fam.base.hamming()
    r = fam.r
    cells = [fam.coset(i) for i in range(r)]
    owner = np.full(G.order, -1, dtype=np.int64)
    for i, c in enumerate(cells):
        owner[c] = i
    for i in range(r):
        _, nb = G._expand(cells[i])
        nb = np.unique(nb)
        if np.any((owner[nb] >= 0) & (owner[nb] != r + i)):
            return None
        owner[nb] = r + i
        cells.append(nb)
    if np.any(owner < 0):
        return None
    return cells


def expected_refined_quotient(P: int, q: int) -> np.ndarray:
    r = P // q
    I = np.eye(r, dtype=np.int64)
    top = np.hstack([0 * I, (P - 1) * I])
    bottom = np.hstack([I, q * np.ones((r, r), dtype=np.int64) - 2 * I])
    return np.vstack([top, bottom])


def expected_block_quotient(P: int, q: int, k: int) -> np.ndarray:
    kq = k * q
    return np.array(
        [[0, P - 1, 0, 0], [1, kq - 2, P - kq, 0], [0, kq, P - kq - 2, 1], [0, 0, P - 1, 0]],
        dtype=np.int64,
    )


def check_refined_partition(fam: CosetFamily):
    """Quotient of the 2r-cell partition, or a falsy verdict."""
    cells = refined_partition(fam)
    if cells is None:
        return False
    return quotient_matrix(fam.base.hamming(), cells)


def check_block_partition(fam: CosetFamily, selection):
    """Quotient of (B^(0), B^(1), B^(2), B^(3)) for the chosen cosets."""
    cells = refined_partition(fam)
    if cells is None:
        return False
    r = fam.r
    inside = sorted(set(int(i) for i in selection))
    outside = [i for i in range(r) if i not in inside]

    def cat(idx):
        return np.concatenate([cells[i] for i in idx])

    blocks = [cat(inside), cat([r + i for i in inside]), cat([r + i for i in outside]), cat(outside)]
    return quotient_matrix(fam.base.hamming(), blocks)


def quotient_matches(Q, expected) -> bool:
    if isinstance(Q, NotEquitable) or Q is False:
        return False
    return Q.shape == expected.shape and bool(np.array_equal(Q, expected))
