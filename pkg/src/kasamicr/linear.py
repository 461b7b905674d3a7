"""Linear codes over a subfield of the ambient field.

A :class:`LinearCode` stores a generator matrix whose entries are ambient
field elements lying in the alphabet subfield.  Weight enumeration is
exhaustive; over GF(2) codewords are packed into 64-bit words and weighed
with a population count.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .errors import FormatError, NonIntegerResult, RankDeficient, TooLarge
from .gf2e import FieldCtx, SubfieldHandle, build_field, subfield
from .parallel import pmap

ENUM_LIMIT = 1 << 24
_BLOCK = 1 << 14  # codewords per enumeration block


def rref(ctx: FieldCtx, M):
    """Reduced row-echelon form over the field.

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows.
    """
    A = np.array(M, dtype=np.int64, copy=True)
    if A.ndim != 2:
        raise ValueError("matrix must be 2-dimensional")
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if len(nz) == 0:
            continue
        p = r + nz[0]
        if p != r:
            A[[r, p]] = A[[p, r]]
        A[r] = ctx.mul_array(A[r], ctx.inv(int(A[r, c])))
        col = A[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if len(hit):
            A[hit] ^= ctx.mul_array(col[hit, None], A[r][None, :])
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(ctx: FieldCtx, M) -> int:
    return len(rref(ctx, M)[1])


def nullspace(ctx: FieldCtx, M, n: int | None = None) -> np.ndarray:
    """Basis (as rows) of {x : M x^T = 0}."""
    M = np.asarray(M, dtype=np.int64)
    if n is None:
        n = M.shape[1]
    if M.size == 0:
        return np.eye(n, dtype=np.int64)
    R, pivots = rref(ctx, M)
    free = [c for c in range(n) if c not in set(pivots)]
    out = np.zeros((len(free), n), dtype=np.int64)
    for row, f in enumerate(free):
        out[row, f] = 1
        for i, p in enumerate(pivots):
            out[row, p] = R[i, f]  # -R[i, f] in characteristic 2
    return out


class LinearCode:
    """Linear [n, k] code over ``sub`` given by a k x n generator matrix."""

    def __init__(self, sub: SubfieldHandle, gen, name: str | None = None):
        gen = np.array(gen, dtype=np.int64, copy=True)
        if gen.ndim == 1:
            gen = gen.reshape(1, -1)
        if gen.ndim != 2:
            raise ValueError("generator must be a matrix")
        if gen.size and not np.all(sub.contains_array(gen)):
            raise FormatError("generator entries must lie in the alphabet subfield")
        gen.setflags(write=False)
        self.sub = sub
        self.gen = gen
        self.name = name

    @classmethod
    def zero(cls, sub: SubfieldHandle, n: int, name=None) -> "LinearCode":
        return cls(sub, np.zeros((0, n), dtype=np.int64), name)

    @property
    def ctx(self) -> FieldCtx:
        return self.sub.ctx

    @property
    def n(self) -> int:
        return self.gen.shape[1]

    @property
    def k(self) -> int:
        return self.gen.shape[0]

    @property
    def q(self) -> int:
        return self.sub.size

    @property
    def size(self) -> int:
        return self.q**self.k

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<LinearCode{tag} [{self.n}, {self.k}] over GF({self.q})>"

    @functools.cached_property
    def _rref(self):
        return rref(self.ctx, self.gen)

    def rank(self) -> int:
        return len(self._rref[1])

    def contains(self, words) -> np.ndarray:
        """Membership of each row of ``words`` (2-d) or of a single word (1-d)."""
        W = np.asarray(words, dtype=np.int64)
        single = W.ndim == 1
        W = np.atleast_2d(W)
        R, pivots = self._rref
        resid = W.copy()
        for i, p in enumerate(pivots):
            resid ^= self.ctx.mul_array(W[:, p][:, None], R[i][None, :])
        ok = ~resid.any(axis=1)
        return bool(ok[0]) if single else ok

    def encode(self, msg) -> np.ndarray:
        """Codeword(s) for message row(s) over the subfield."""
        m = np.atleast_2d(np.asarray(msg, dtype=np.int64))
        out = np.zeros((m.shape[0], self.n), dtype=np.int64)
        for i in range(self.k):
            out ^= self.ctx.mul_array(m[:, i][:, None], self.gen[i][None, :])
        return out

    def with_columns(self, perm, name=None) -> "LinearCode":
        """Code whose column ``perm[j]`` is column ``j`` of this one."""
        perm = np.asarray(perm)
        gen = np.empty_like(self.gen)
        gen[:, perm] = self.gen
        return LinearCode(self.sub, gen, name or self.name)

    def codewords(self) -> np.ndarray:
        """All codewords, messages ranked lexicographically (first symbol most
        significant, symbols ordered by their bits value)."""
        _guard(self)
        return _span_table(self.ctx, self.sub.elements, self.gen)

    def __eq__(self, other):
        if not isinstance(other, LinearCode):
            return NotImplemented
        if other.sub != self.sub or other.n != self.n:
            return False
        a, b = self._rref[0], other._rref[0]
        return a.shape == b.shape and bool(np.array_equal(a, b))

    __hash__ = None


def _guard(C: LinearCode):
    if C.size > ENUM_LIMIT:
        raise TooLarge(f"{C.q}^{C.k} codewords exceed the enumeration limit 2^24")


def _span_table(ctx, elems, rows) -> np.ndarray:
    rows = np.asarray(rows, dtype=np.int64)
    n = rows.shape[1]
    words = np.zeros((1, n), dtype=np.int64)
    for row in rows[::-1]:
        scaled = ctx.mul_array(elems[:, None], row[None, :])
        words = (scaled[:, None, :] ^ words[None, :, :]).reshape(-1, n)
    return words


def canonical_form(C: LinearCode) -> LinearCode:
    R, pivots = C._rref
    if len(pivots) < C.k:
        raise RankDeficient(f"generator has rank {len(pivots)} < {C.k}")
    return LinearCode(C.sub, R, C.name)


def dual(C: LinearCode) -> LinearCode:
    name = f"dual({C.name})" if C.name else None
    return LinearCode(C.sub, nullspace(C.ctx, C.gen, C.n), name)


@dataclass(frozen=True)
class WeightDistribution:
    """Counts ``A_0 .. A_n``; :meth:`pairs` gives the nonzero ``(w, A_w)``."""

    counts: tuple

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "WeightDistribution":
        counts = [0] * (n + 1)
        for w, a in pairs:
            counts[w] += a
        return cls(tuple(counts))

    @property
    def n(self) -> int:
        return len(self.counts) - 1

    def pairs(self) -> list[tuple[int, int]]:
        return [(w, a) for w, a in enumerate(self.counts) if a]

    def total(self) -> int:
        return sum(self.counts)

    def min_weight(self) -> int | None:
        ws = [w for w, a in self.pairs() if w > 0]
        return min(ws) if ws else None

    def __str__(self):
        return "[" + ", ".join(f"<{w},{a}>" for w, a in self.pairs()) + "]"


def _pack_bits(words: np.ndarray) -> np.ndarray:
    """Binary rows -> (N, ceil(n/64)) uint64."""
    bits = np.packbits(words.astype(np.uint8), axis=1, bitorder="little")
    pad = (-bits.shape[1]) % 8
    if pad:
        bits = np.pad(bits, ((0, 0), (0, pad)))
    return bits.view(np.uint64)


def weight_distribution(C: LinearCode) -> WeightDistribution:
    """Exact distribution by enumerating every codeword."""
    _guard(C)
    n, k = C.n, C.k
    if k == 0:
        return WeightDistribution.from_pairs(n, [(0, 1)])
    elems = C.sub.elements
    # split the generator into a low block enumerated once and high prefixes
    low = k
    while C.q ** low > _BLOCK and low > 1:
        low -= 1
    hi_rows, lo_rows = C.gen[: k - low], C.gen[k - low :]
    lo_table = _span_table(C.ctx, elems, lo_rows)
    hi_table = _span_table(C.ctx, elems, hi_rows) if len(hi_rows) else np.zeros((1, n), np.int64)
    binary = C.q == 2
    if binary:
        lo_packed = _pack_bits(lo_table)
        hi_packed = _pack_bits(hi_table)

    def block(i):
        if binary:
            w = np.bitwise_count(lo_packed ^ hi_packed[i]).sum(axis=1)
        else:
            w = np.count_nonzero(lo_table ^ hi_table[i], axis=1)
        return np.bincount(w, minlength=n + 1)

    parts = pmap(block, range(len(hi_table)))
    total = np.sum(parts, axis=0)
    return WeightDistribution(tuple(int(a) for a in total))


def minimum_distance(C: LinearCode) -> int:
    d = weight_distribution(C).min_weight()
    return 0 if d is None else d


def is_mds(C: LinearCode) -> bool:
    return minimum_distance(C) == C.n - C.k + 1


def krawtchouk(j: int, i: int, n: int, q: int) -> int:
    return sum(
        (-1) ** s * (q - 1) ** (j - s) * math.comb(i, s) * math.comb(n - i, j - s)
        for s in range(j + 1)
    )


def macwilliams(W: WeightDistribution, n: int, k: int, q: int) -> WeightDistribution:
    """Dual distribution via the Krawtchouk transform, in exact integers."""
    A = list(W.counts) + [0] * (n + 1 - len(W.counts))
    size = q**k
    out = []
    for j in range(n + 1):
        num = sum(A[i] * krawtchouk(j, i, n, q) for i in range(n + 1) if A[i])
        b, rem = divmod(num, size)
        if rem or b < 0:
            raise NonIntegerResult(f"B_{j} = {num}/{size} is not a nonnegative integer")
        out.append(b)
    return WeightDistribution(tuple(out))


# GFC v1 text format


def write_gfc(C: LinearCode) -> str:
    lines = [
        f"field e={C.ctx.e} poly={C.ctx.modulus:#x}",
        f"code n={C.n} k={C.k} sub={C.sub.d}",
    ]
    for row in C.gen:
        lines.append(" ".join(str(int(v)) for v in row))
    return "\n".join(lines) + "\n"


def _kv(token: str, key: str) -> str:
    k, sep, v = token.partition("=")
    if not sep or k != key:
        raise FormatError(f"expected {key}=..., got {token!r}")
    return v


def read_gfc(text: str, name: str | None = None) -> LinearCode:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) < 2:
        raise FormatError("GFC file needs a field line and a code line")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "field":
        raise FormatError(f"bad field line: {lines[0]!r}")
    e = int(_kv(head[1], "e"))
    modulus = int(_kv(head[2], "poly"), 16)
    spec = lines[1].split()
    if len(spec) != 4 or spec[0] != "code":
        raise FormatError(f"bad code line: {lines[1]!r}")
    n = int(_kv(spec[1], "n"))
    k = int(_kv(spec[2], "k"))
    d = int(_kv(spec[3], "sub"))
    rows = [[int(t) for t in ln.split()] for ln in lines[2:]]
    if len(rows) != k or any(len(r) != n for r in rows):
        raise FormatError(f"expected {k} rows of {n} entries")
    ctx = build_field(e, modulus)
    gen = np.array(rows, dtype=np.int64).reshape(k, n)
    if gen.size and (gen.min() < 0 or gen.max() >= ctx.size):
        raise FormatError("entry outside the field")
    return LinearCode(subfield(ctx, d), gen, name)
