"""Coset graphs, Hamming spaces, distance partitions and equitability.

Syndromes and Hamming-space words are packed integers: symbol ``i`` of a
vector over GF(p = 2^d) occupies bits ``[i d, (i+1) d)`` and holds the GF(2)
coordinate code of the symbol (see :func:`gf2e.bit_codes`), so vector
addition is XOR.  Adjacency is generated on the fly from the connector set;
no adjacency matrix is ever stored.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import Disconnected, ShapeMismatch, TooLarge, ZeroColumn
from .gf2e import SubfieldHandle, bit_codes, coordinate_table
from .linear import LinearCode, dual

GRAPH_LIMIT = 1 << 20
_CHUNK = 1 << 15


def pack(vectors, sub: SubfieldHandle) -> np.ndarray:
    """Pack rows of field elements (last axis = symbols) into ints."""
    enc, _ = bit_codes(sub)
    V = np.asarray(vectors, dtype=np.int64)
    shifts = np.arange(V.shape[-1], dtype=np.int64) * sub.d
    return (enc[V] << shifts).sum(axis=-1)


def unpack(words, n: int, sub: SubfieldHandle) -> np.ndarray:
    _, dec = bit_codes(sub)
    w = np.asarray(words, dtype=np.int64)
    shifts = np.arange(n, dtype=np.int64) * sub.d
    return dec[(w[..., None] >> shifts) & (sub.size - 1)]


def packed_weight(x, n: int, d: int) -> np.ndarray:
    """Number of nonzero d-bit symbols in each packed word."""
    x = np.asarray(x, dtype=np.int64).astype(np.uint64)
    if d == 1:
        return np.bitwise_count(x).astype(np.int64)
    y = x.copy()
    for s in range(1, d):
        y |= x >> np.uint64(s)
    mask = np.uint64(sum(1 << (i * d) for i in range(n)))
    return np.bitwise_count(y & mask).astype(np.int64)


class Graph:
    """Shared BFS / neighbour-count machinery; subclasses supply ``_expand``."""

    order: int

    def _expand(self, vs: np.ndarray, multiset: bool = False):
        """Return ``(src, nbr)``: positions into ``vs`` and neighbour ids."""
        raise NotImplementedError

    def bfs(self, start) -> np.ndarray:
        dist = np.full(self.order, -1, dtype=np.int64)
        frontier = np.unique(np.asarray(start, dtype=np.int64))
        dist[frontier] = 0
        level = 0
        while len(frontier):
            _, nb = self._expand(frontier)
            nb = np.unique(nb)
            nb = nb[dist[nb] < 0]
            level += 1
            dist[nb] = level
            frontier = nb
        return dist

    def neighbor_counts(self, labels: np.ndarray, ncells: int, multiset=False) -> np.ndarray:
        """``out[v, j]`` = number of neighbours of v carrying label j."""
        out = np.zeros((self.order, ncells), dtype=np.int64)
        for lo in range(0, self.order, _CHUNK):
            vs = np.arange(lo, min(lo + _CHUNK, self.order), dtype=np.int64)
            src, nb = self._expand(vs, multiset)
            flat = np.bincount(src * ncells + labels[nb], minlength=len(vs) * ncells)
            out[lo : lo + len(vs)] = flat.reshape(len(vs), ncells)
        return out


class AdjacencyGraph(Graph):
    """Small explicit graph on vertices 0..n-1 (for generic tests)."""

    def __init__(self, n: int, edges):
        self.order = n
        adj = [[] for _ in range(n)]
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)
        self.indptr = np.cumsum([0] + [len(a) for a in adj])
        self.indices = np.array(list(itertools.chain.from_iterable(adj)), dtype=np.int64)

    @classmethod
    def complete(cls, n: int):
        return cls(n, itertools.combinations(range(n), 2))

    @classmethod
    def path(cls, n: int):
        return cls(n, [(i, i + 1) for i in range(n - 1)])

    def _expand(self, vs, multiset=False):
        deg = self.indptr[vs + 1] - self.indptr[vs]
        src = np.repeat(np.arange(len(vs)), deg)
        starts = np.repeat(self.indptr[vs], deg)
        offs = np.arange(deg.sum()) - np.repeat(np.cumsum(deg) - deg, deg)
        return src, self.indices[starts + offs]


class CosetGraph(Graph):
    """Cayley graph on the syndrome space of a check matrix over GF(p).

    ``connectors`` is the collapsed set S of nonzero syndromes of weight-1
    words; ``connector_multiset`` keeps one entry per (column, scalar), which
    reproduces neighbour counts of the Hamming graph exactly.
    """

    def __init__(self, sub: SubfieldHandle, check, allow_zero_columns: bool = False):
        H = np.atleast_2d(np.asarray(check, dtype=np.int64))
        k, n = H.shape
        self.sub = sub
        self.dim = k
        self.n = n
        self.bits = k * sub.d
        if sub.size**k > GRAPH_LIMIT:
            raise TooLarge(f"{sub.size}^{k} syndromes exceed 2^20")
        self.order = 1 << self.bits
        zero_cols = np.nonzero(~H.any(axis=0))[0]
        if len(zero_cols) and not allow_zero_columns:
            raise ZeroColumn(f"check matrix column {int(zero_cols[0])} is zero")
        ctx = sub.ctx
        scaled = ctx.mul_array(sub.nonzero()[:, None, None], H.T[None, :, :])
        multi = pack(scaled.reshape(-1, k), sub)
        self.connector_multiset = np.sort(multi)
        S = np.unique(multi)
        self.connectors = S[S != 0]

    @classmethod
    def of_code(cls, C: LinearCode, **kw) -> "CosetGraph":
        """Coset graph of C itself: syndromes under gen(C^perp)."""
        return cls(C.sub, dual(C).gen, **kw)

    @classmethod
    def hamming(cls, n: int, sub: SubfieldHandle) -> "CosetGraph":
        """H(n, p): the coset graph of the zero code."""
        return cls(sub, np.eye(n, dtype=np.int64))

    @property
    def degree(self) -> int:
        return len(self.connectors)

    def _expand(self, vs, multiset=False):
        S = self.connector_multiset if multiset else self.connectors
        nb = (vs[:, None] ^ S[None, :]).ravel()
        src = np.repeat(np.arange(len(vs)), len(S))
        return src, nb

    def edges(self):
        """Undirected edges (u, v), u < v, in increasing order."""
        for u in range(self.order):
            for v in np.sort(u ^ self.connectors):
                if u < v:
                    yield u, int(v)

    def export_edges(self, path) -> int:
        count = 0
        with open(path, "w") as fh:
            for u, v in self.edges():
                fh.write(f"{u} {v}\n")
                count += 1
        return count


def coset_graph(M_check, sub: SubfieldHandle | None = None) -> CosetGraph:
    """Coset graph of the code with check matrix ``M_check``."""
    if isinstance(M_check, LinearCode):
        return CosetGraph(M_check.sub, M_check.gen)
    return CosetGraph(sub, M_check)


def distance_partition(G: Graph, start) -> list[np.ndarray]:
    """BFS layers Gamma_0, ..., Gamma_rho from the vertex set ``start``."""
    dist = G.bfs(start)
    if np.any(dist < 0):
        raise Disconnected(f"vertex {int(np.argmin(dist))} is unreachable")
    return [np.nonzero(dist == i)[0] for i in range(int(dist.max()) + 1)]


@dataclass(frozen=True)
class NotEquitable:
    """Negative verdict: ``vertex`` in ``cell`` has neighbour counts
    ``observed`` instead of the cell's first row ``expected``."""

    vertex: int
    cell: int
    expected: tuple
    observed: tuple

    def __bool__(self):
        return False

    def __str__(self):
        return (
            f"NotEquitable: vertex {self.vertex} in cell {self.cell} has counts "
            f"{list(self.observed)}, cell row is {list(self.expected)}"
        )


def _labels(order: int, cells) -> np.ndarray:
    labels = np.full(order, -1, dtype=np.int64)
    for i, c in enumerate(cells):
        c = np.asarray(c, dtype=np.int64)
        if np.any(labels[c] >= 0):
            raise ValueError("cells overlap")
        labels[c] = i
    if np.any(labels < 0):
        raise ValueError("cells do not cover the vertex set")
    return labels


def quotient_matrix(G: Graph, cells, multiset: bool = False):
    """Quotient matrix of an equitable partition, else :class:`NotEquitable`
    naming the first offending vertex in vertex order."""
    labels = _labels(G.order, cells)
    nc = len(cells)
    counts = G.neighbor_counts(labels, nc, multiset)
    first = np.array([np.min(np.asarray(c)) for c in cells])
    ref = counts[first[labels]]
    bad = np.nonzero((counts != ref).any(axis=1))[0]
    if len(bad):
        v = int(bad[0])
        return NotEquitable(v, int(labels[v]), tuple(ref[v].tolist()), tuple(counts[v].tolist()))
    return counts[first]


@dataclass(frozen=True)
class IntersectionArray:
    b: tuple
    c: tuple

    @property
    def covering_radius(self) -> int:
        return len(self.b)

    def __str__(self):
        return "{" + ", ".join(map(str, self.b)) + "; " + ", ".join(map(str, self.c)) + "}"

    def as_tuple(self):
        return (self.b, self.c)


def _array_from_quotient(S: np.ndarray):
    rho = S.shape[0] - 1
    for i in range(rho + 1):
        for j in range(rho + 1):
            if abs(i - j) > 1 and S[i, j]:
                return None
    b = tuple(int(S[i, i + 1]) for i in range(rho))
    c = tuple(int(S[i, i - 1]) for i in range(1, rho + 1))
    if any(x <= 0 for x in b + c):
        return None
    return IntersectionArray(b, c)


def completely_regular_array(G: Graph, start, multiset: bool = False):
    """Intersection array of ``start`` if its distance partition is equitable
    (tridiagonal quotient), else a falsy verdict."""
    cells = distance_partition(G, start)
    S = quotient_matrix(G, cells, multiset)
    if isinstance(S, NotEquitable):
        return S
    arr = _array_from_quotient(S)
    return arr if arr is not None else False


def is_completely_regular(C: LinearCode):
    """Array of C via the distance partition of syndrome 0 in its coset graph.

    Neighbour counts use the (column, scalar) multiset, so the quotient equals
    that of C's distance partition in H(n, p) for every linear C.
    """
    G = CosetGraph.of_code(C, allow_zero_columns=True)
    return completely_regular_array(G, [0], multiset=True)


def is_distance_regular(G: Graph, exhaustive: bool | None = None):
    """Intersection numbers if b_i, c_i depend only on i, else False.

    Coset graphs are Cayley graphs, so all pairs (u, v) reduce to (0, u ^ v);
    ``exhaustive=True`` runs a BFS from every vertex regardless.
    """
    if exhaustive is None:
        exhaustive = not isinstance(G, CosetGraph)
    if G.order > GRAPH_LIMIT:
        raise TooLarge("graph exceeds 2^20 vertices")
    sources = range(G.order) if exhaustive else [0]
    b: dict[int, int] = {}
    c: dict[int, int] = {}
    for u in sources:
        dist = G.bfs([u])
        if np.any(dist < 0):
            return False
        D = int(dist.max())
        counts = G.neighbor_counts(dist, D + 1)
        idx = np.arange(G.order)
        bi = np.where(dist < D, counts[idx, np.minimum(dist + 1, D)], 0)
        ci = np.where(dist > 0, counts[idx, np.maximum(dist - 1, 0)], 0)
        for i in range(D + 1):
            sel = dist == i
            for store, vals, ok in ((b, bi, i < D), (c, ci, i > 0)):
                if not ok:
                    continue
                u_vals = np.unique(vals[sel])
                if len(u_vals) != 1 or store.setdefault(i, int(u_vals[0])) != int(u_vals[0]):
                    return False
        if len(b) != D and not exhaustive:
            return False
    D = len(b)
    if len(c) != D:
        return False
    return IntersectionArray(tuple(b[i] for i in range(D)), tuple(c[i] for i in range(1, D + 1)))


def delsarte_check(codewords, n: int, sub: SubfieldHandle, details: bool = False):
    """Outer distance distribution depends only on d(v, C), over all of H(n, p).

    ``codewords`` is a LinearCode or an array of packed words.
    """
    if isinstance(codewords, LinearCode):
        packed = pack(codewords.codewords(), sub)
    else:
        packed = np.asarray(codewords, dtype=np.int64)
    if sub.size**n > GRAPH_LIMIT:
        raise TooLarge(f"{sub.size}^{n} vectors exceed 2^20")
    total = sub.size**n
    groups: dict[int, np.ndarray] = {}
    ok = True
    for lo in range(0, total, 2048):
        vs = np.arange(lo, min(lo + 2048, total), dtype=np.int64)
        D = packed_weight(vs[:, None] ^ packed[None, :], n, sub.d)
        rows = np.arange(len(vs))[:, None]
        dist = np.bincount((rows * (n + 1) + D).ravel(), minlength=len(vs) * (n + 1))
        dist = dist.reshape(len(vs), n + 1)
        cov = D.min(axis=1)
        for r in np.unique(cov):
            sel = dist[cov == r]
            ref = groups.setdefault(int(r), sel[0])
            if np.any(sel != ref):
                ok = False
    if details:
        return ok, {r: tuple(v.tolist()) for r, v in sorted(groups.items())}
    return ok


def connector_set_qary(MA: LinearCode, p_sub: SubfieldHandle) -> np.ndarray:
    """Connecting syndromes a * column_j of MA (over GF(q)), expanded into
    GF(p) coordinates in the polynomial basis and packed."""
    ctx = MA.ctx
    k, n = MA.gen.shape
    m = MA.sub.d // p_sub.d
    scaled = ctx.mul_array(MA.sub.nonzero()[:, None, None], MA.gen.T[None, :, :])
    coords = coordinate_table(p_sub, MA.sub)[scaled.reshape(-1, k)]  # N x k x m
    return np.unique(pack(coords.reshape(-1, k * m), p_sub))


def connector_set(MB: LinearCode) -> np.ndarray:
    """All syndromes b * column of MB (zero columns included)."""
    ctx = MB.ctx
    scaled = ctx.mul_array(MB.sub.nonzero()[:, None, None], MB.gen.T[None, :, :])
    return np.unique(pack(scaled.reshape(-1, MB.k), MB.sub))


def graphs_equal_by_syndrome(MA: LinearCode, MB: LinearCode) -> bool:
    """Connector sets of MA (over GF(q)) and MB (over GF(p)) coincide under
    the polynomial-basis identification GF(q)^k = GF(p)^(km)."""
    if MA.ctx != MB.ctx or MA.sub.d % MB.sub.d:
        raise ShapeMismatch("MB must be over a subfield of MA's alphabet")
    m = MA.sub.d // MB.sub.d
    if MB.k != MA.k * m:
        raise ShapeMismatch(f"MB has {MB.k} rows, expected {MA.k * m}")
    SA = connector_set_qary(MA, MB.sub)
    SB = connector_set(MB)
    return len(SA) == len(SB) and bool(np.array_equal(SA, SB))
