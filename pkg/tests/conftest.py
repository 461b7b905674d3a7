import itertools

import numpy as np
import pytest


def clmul_mod(a: int, b: int, modulus: int) -> int:
    """Carry-less product reduced mod the field polynomial (table-free)."""
    deg = modulus.bit_length() - 1
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> deg & 1:
            a ^= modulus
    return r


def naive_weights(C):
    """Weight counts by plain iteration over all messages."""
    ctx = C.ctx
    counts = [0] * (C.n + 1)
    elems = [int(x) for x in C.sub.elements]
    for msg in itertools.product(elems, repeat=C.k):
        w = [0] * C.n
        for coef, row in zip(msg, C.gen):
            if coef:
                for j, v in enumerate(row):
                    w[j] ^= clmul_mod(coef, int(v), ctx.modulus)
        counts[sum(1 for v in w if v)] += 1
    return tuple(counts)


def naive_cr_array(words, n, p_elems):
    """Pure-python BFS distance partition in H(n, p) and its quotient.

    ``words`` are tuples of field elements.  Returns (b, c) or None.
    """
    import collections

    vecs = list(itertools.product(p_elems, repeat=n))
    index = {v: i for i, v in enumerate(vecs)}
    dist = [-1] * len(vecs)
    dq = collections.deque()
    for w in words:
        dist[index[tuple(w)]] = 0
        dq.append(index[tuple(w)])

    def nbrs(v):
        for i in range(n):
            for a in p_elems:
                if a != v[i]:
                    yield v[:i] + (a,) + v[i + 1 :]

    while dq:
        u = dq.popleft()
        for v in nbrs(vecs[u]):
            j = index[v]
            if dist[j] < 0:
                dist[j] = dist[u] + 1
                dq.append(j)
    rho = max(dist)
    rows = {}
    for u, v in enumerate(vecs):
        cnt = [0] * (rho + 1)
        for w in nbrs(v):
            cnt[dist[index[w]]] += 1
        if rows.setdefault(dist[u], cnt) != cnt:
            return None
    b = tuple(rows[i][i + 1] for i in range(rho))
    c = tuple(rows[i][i - 1] for i in range(1, rho + 1))
    return b, c


@pytest.fixture
def rng():
    return np.random.default_rng(0x4B41534D)
