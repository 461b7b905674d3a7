"""Monomial and semilinear transforms, the GammaL(2, q) action on M_q, the
block lift into the concatenated code, and exhaustive group counting.

Convention for a transform T = (perm, diag, t) on words of length n:
``T(w)[perm[i]] = diag[perm[i]] * w[i]^t``.  The composite ``T1 * T2``
means "apply T2 first".
"""

from __future__ import annotations

import functools
import itertools
import time
from dataclasses import dataclass

import numpy as np

from .concat import log2_exact, simplex_params
from .errors import BasisDegenerate, NotPLinear, TooLarge
from .gf2e import SubfieldHandle, factor_dzeta
from .kasami import kasami_config
from .linear import LinearCode, dual

BRUTE_LIMIT = 10**8


@dataclass(frozen=True, eq=False)
class MonomialTransform:
    perm: np.ndarray
    diag: np.ndarray

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int):
        return cls(np.arange(n), np.ones(n, dtype=np.int64))


@dataclass(frozen=True, eq=False)
class SemilinearTransform:
    mono: MonomialTransform
    t: int = 1
    sub: SubfieldHandle | None = None

    @property
    def perm(self):
        return self.mono.perm

    @property
    def diag(self):
        return self.mono.diag

    @property
    def n(self) -> int:
        return self.mono.n

    def key(self) -> tuple:
        return (tuple(self.perm.tolist()), tuple(self.diag.tolist()), self.t)

    def __eq__(self, other):
        return isinstance(other, SemilinearTransform) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def apply(self, words) -> np.ndarray:
        """Image of a word (1-d) or of each row of a 2-d array."""
        ctx = self.sub.ctx
        W = np.asarray(words, dtype=np.int64)
        out = np.empty_like(W)
        out[..., self.perm] = ctx.pow_array(W, self.t) if self.t != 1 else W
        return ctx.mul_array(out, self.diag)

    def __mul__(self, other: "SemilinearTransform") -> "SemilinearTransform":
        """``self * other``: apply ``other`` first."""
        ctx = self.sub.ctx
        perm = self.perm[other.perm]
        diag = np.empty_like(self.diag)
        diag[perm] = ctx.mul_array(self.diag[perm], ctx.pow_array(other.diag[other.perm], self.t))
        s = (log2_exact(self.t) + log2_exact(other.t)) % self.sub.d
        t = 1 << s
        return SemilinearTransform(MonomialTransform(perm, diag), t, self.sub)

    def dual(self) -> "SemilinearTransform":
        """The transform with inverted scalars; it preserves C^perp whenever
        this one preserves C."""
        return SemilinearTransform(
            MonomialTransform(self.perm, self.sub.ctx.inv_array(self.diag)), self.t, self.sub
        )


def identity_transform(sub: SubfieldHandle, n: int) -> SemilinearTransform:
    return SemilinearTransform(MonomialTransform.identity(n), 1, sub)


def preserves(T: SemilinearTransform, C: LinearCode) -> bool:
    """T maps every generator row into C (enough by semilinearity)."""
    if C.k == 0:
        return True
    return bool(np.all(C.contains(T.apply(C.gen))))


# GammaL(2, q) acting on GF(q^2) = GF(q) + GF(q) alpha


@dataclass(frozen=True)
class GammaLElement:
    """x = g0 + g1 alpha  ->  ((a g0 + a' g1) + (b g0 + b' g1) alpha)^t."""

    a: int
    a_: int
    b: int
    b_: int
    t: int = 1


class GammaLContext:
    """Cached data for the action at a given q (ambient GF(q^2))."""

    def __init__(self, q: int):
        cfg = kasami_config(q, 2)
        self.q = q
        self.m = cfg.m
        self.cfg = cfg
        self.ctx = cfg.ctx
        self.F_q = cfg.F_q
        self.zeta = cfg.zeta
        ctx = self.ctx
        al = ctx.alpha
        self.denom = al ^ ctx.pow(al, q)
        if self.denom == 0:
            raise BasisDegenerate("alpha + alpha^q = 0")
        # x = d zeta^l, l in 1..q+1
        self.factor = {}
        zl = ctx.exp[(int(ctx.log[self.zeta]) * np.arange(1, q + 2)) % ctx.n]
        for d in self.F_q.nonzero():
            for l, z in enumerate(zl, start=1):
                self.factor[ctx.mul(int(d), int(z))] = (int(d), l)

    def coords(self, y: int) -> tuple[int, int]:
        """(g0, g1) in GF(q)^2 with y = g0 + g1 alpha."""
        ctx = self.ctx
        g1 = ctx.div(y ^ ctx.pow(y, self.q), self.denom)
        g0 = y ^ ctx.mul(g1, ctx.alpha)
        return g0, g1

    def zeta_coords(self, i: int) -> tuple[int, int]:
        return self.coords(self.ctx.pow(self.zeta, i))

    def apply(self, g: GammaLElement, x: int) -> int:
        ctx = self.ctx
        g0, g1 = self.coords(x)
        u = ctx.mul(g.a, g0) ^ ctx.mul(g.a_, g1)
        v = ctx.mul(g.b, g0) ^ ctx.mul(g.b_, g1)
        return ctx.pow(u ^ ctx.mul(v, ctx.alpha), g.t)

    def compose(self, g1: GammaLElement, g2: GammaLElement) -> GammaLElement:
        """g1 after g2, rewritten in the (a, a', b, b', t) form with t < q."""
        ctx = self.ctx
        qq = self.q * self.q
        t = g1.t * g2.t
        conj = t >= self.q
        if conj:
            t //= self.q
        inv_t = qq // t  # undo y -> y^t; the conjugation stays inside lin

        def lin(x):
            return ctx.pow(self.apply(g1, self.apply(g2, x)), inv_t)

        a, b = self.coords(lin(1))
        a_, b_ = self.coords(lin(ctx.alpha))
        return GammaLElement(a, a_, b, b_, t)

    def elements(self):
        """All of GammaL(2, q): invertible (a, a', b, b') times t = 2^s, s < m."""
        F = [int(x) for x in self.F_q.elements]
        ctx = self.ctx
        for s in range(self.m):
            for a, a_, b, b_ in itertools.product(F, repeat=4):
                if ctx.mul(a, b_) != ctx.mul(a_, b):
                    yield GammaLElement(a, a_, b, b_, 1 << s)

    def psi_of(self, g: GammaLElement) -> SemilinearTransform:
        """e_i -> d_i e_{j_i} where Psi(zeta^i) = d_i zeta^{j_i}."""
        q = self.q
        perm = np.empty(q + 1, dtype=np.int64)
        diag = np.empty(q + 1, dtype=np.int64)
        zi = 1
        for i in range(q + 1):
            zi = self.ctx.mul(zi, self.zeta)
            d, j = self.factor[self.apply(g, zi)]
            perm[i] = j - 1
            diag[j - 1] = d
        return SemilinearTransform(MonomialTransform(perm, diag), g.t, self.F_q)


@functools.lru_cache(maxsize=None)
def gammal_context(q: int) -> GammaLContext:
    return GammaLContext(q)


def zeta_coords(i: int, q: int) -> tuple[int, int]:
    return gammal_context(q).zeta_coords(i)


def psi_of(g: GammaLElement, q: int) -> SemilinearTransform:
    return gammal_context(q).psi_of(g)


def expected_group_orders(q: int) -> tuple[int, int]:
    m = log2_exact(q)
    gl = (q * q - 1) * (q * q - q)
    return gl, m * gl


def count_invertible_2x2(q: int) -> int:
    """Brute-force |GL(2, q)| over the field GF(q)."""
    ctx = kasami_config(q, 2).ctx
    F = np.asarray(kasami_config(q, 2).F_q.elements)
    A, B, C, D = np.meshgrid(F, F, F, F, indexing="ij")
    det = ctx.mul_array(A, D) ^ ctx.mul_array(B, C)
    return int(np.count_nonzero(det))


# lift to the concatenated code


def lift_to_concat(T: SemilinearTransform, q: int, p: int = 2) -> SemilinearTransform:
    """Monomial transform of the concatenated coordinates with
    phi(T(w)) = lift(T)(phi(w)).

    Block i of phi(w) holds Tr(w_i xi^l).  In the image block perm[i],
    Tr(d w^t xi^l) = Tr((d xi^l)^(1/t) w) for t fixing GF(p), and
    (d xi^l)^(1/t) = b xi^l' with b in GF(p); so coordinate l of the new
    block is b times coordinate l' of the old one.
    """
    cfg = kasami_config(q, p)
    ctx = cfg.ctx
    sp = simplex_params(p, cfg.m, ctx)
    a = log2_exact(p)
    s = log2_exact(T.t)
    if s % a:
        raise NotPLinear(f"z -> z^{T.t} does not fix GF({p})")
    M = sp.length
    n = T.n
    inv_t = q // T.t if T.t > 1 else 1
    xi_pows = ctx.exp[(int(ctx.log[sp.xi]) * np.arange(1, M + 1)) % ctx.n]
    perm = np.empty(n * M, dtype=np.int64)
    diag = np.empty(n * M, dtype=np.int64)
    for i in range(n):
        j = int(T.perm[i])
        d = int(T.diag[j])
        for l in range(M):
            x = ctx.pow(ctx.mul(d, int(xi_pows[l])), inv_t)
            b, l2 = factor_dzeta(x, sp.p_sub, sp.xi, M)
            perm[i * M + (l2 - 1)] = j * M + l
            diag[j * M + l] = b
    return SemilinearTransform(MonomialTransform(perm, diag), 1, sp.p_sub)


# exhaustive counting


def brute_force_aut(C: LinearCode, level: str = "monomial") -> int:
    """Number of monomial (or semilinear) transforms preserving C."""
    if level not in ("monomial", "semilinear"):
        raise ValueError(f"unknown level {level!r}")
    sub = C.sub
    ctx = C.ctx
    n = C.n
    frobs = [1 << s for s in range(sub.d)] if level == "semilinear" else [1]
    nz = sub.nonzero()
    cost = 1
    for i in range(2, n + 1):
        cost *= i
    cost *= len(nz) ** n * len(frobs)
    if cost > BRUTE_LIMIT:
        raise TooLarge(f"{cost} candidate transforms exceed {BRUTE_LIMIT}")
    if C.k == 0 or C.k == n:
        return cost
    H = dual(C).gen  # T preserves C iff H (T g)^T = 0 for every row g
    diags = np.array(list(itertools.product(nz, repeat=n)), dtype=np.int64)  # D x n
    count = 0
    for t in frobs:
        G = ctx.pow_array(C.gen, t) if t != 1 else C.gen
        for perm in itertools.permutations(range(n)):
            Gp = np.empty_like(G)
            Gp[:, list(perm)] = G
            X = ctx.mul_array(Gp[:, None, :], H[None, :, :])  # k x r x n
            acc = np.zeros((len(diags), X.shape[0], X.shape[1]), dtype=np.int64)
            for j in range(n):
                acc ^= ctx.mul_array(diags[:, j, None, None], X[None, :, :, j])
            count += int(np.count_nonzero(~acc.reshape(len(diags), -1).any(axis=1)))
    return count


# certificate report


@dataclass
class CertificateLine:
    check: str
    verdict: bool
    expected: object
    observed: object
    millis: float


def gammal_certificate(q: int, lift: bool | None = None) -> list[CertificateLine]:
    """Every GammaL(2, q) element gives psi preserving M_q, injectively; at
    q = 4 also the exact counts and the lifts into K_4^perp."""
    from .kasami import build_kasami_dual, build_mds

    if lift is None:
        lift = q == 4
    gc = gammal_context(q)
    gl, ggl = expected_group_orders(q)
    lines = []

    t0 = time.perf_counter()
    Mperp = build_mds(q)
    Mq = dual(Mperp)
    seen = set()
    bad = None
    lift_bad = None
    K = build_kasami_dual(q, 2) if lift else None
    total = 0
    for g in gc.elements():
        total += 1
        T = gc.psi_of(g)
        if bad is None and not preserves(T, Mq):
            bad = g
        seen.add(T.key())
        if lift and lift_bad is None:
            L = lift_to_concat(T.dual(), q, 2)
            if not preserves(L, K):
                lift_bad = g
    ms = (time.perf_counter() - t0) * 1000
    lines.append(CertificateLine(f"|GammaL(2,{q})| enumerated", total == ggl, ggl, total, ms))
    lines.append(
        CertificateLine(
            f"psi preserves M_{q} for all elements", bad is None, "all", "all" if bad is None else repr(bad), ms
        )
    )
    lines.append(CertificateLine("psi injective", len(seen) == total, total, len(seen), ms))
    if lift:
        lines.append(
            CertificateLine(
                f"lifts preserve K_{q}^perp",
                lift_bad is None,
                "all",
                "all" if lift_bad is None else repr(lift_bad),
                ms,
            )
        )
    if q == 4:
        for level, want in (("monomial", gl), ("semilinear", ggl)):
            t0 = time.perf_counter()
            got = brute_force_aut(Mperp, level)
            ms = (time.perf_counter() - t0) * 1000
            lines.append(CertificateLine(f"brute-force {level} order of M_4^perp", got == want, want, got, ms))
    return lines


def format_certificate(q: int, level: str, lines: list[CertificateLine], timing: bool = True) -> str:
    gl, ggl = expected_group_orders(q)
    order = gl if level == "monomial" else ggl
    exact = q == 4
    head = [
        f"group level: {level}",
        f"q = {q}",
        f"{'certified order' if exact else 'lower bound'}: {order}",
    ]
    if not exact:
        head.append("upper bound: unverified at this size")
    body = []
    for ln in lines:
        tag = "PASS" if ln.verdict else "FAIL"
        extra = f" ({ln.millis:.1f} ms)" if timing else ""
        body.append(f"{tag} {ln.check}: expected {ln.expected}, observed {ln.observed}{extra}")
    return "\n".join(head + body) + "\n"
