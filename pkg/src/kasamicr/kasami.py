"""Constructors for the MDS code M_q^perp, the Kasami duals K_q^perp and
their generalisations over GF(p), the CRT reindexing to cyclic order, and the
closed-form weight distributions.

All objects for a pair (q, p) live in the ambient field GF(q^2).
"""

from __future__ import annotations

import functools
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import poly
from .concat import SimplexParams, log2_exact, phi_matrix, simplex_params
from .cyclic import CyclicSpec, from_check_poly, from_nonzeros_trace
from .errors import CoprimalityViolated, FieldError, IndexCollision
from .gf2e import FieldCtx, SubfieldHandle, build_field, subfield
from .linear import LinearCode, WeightDistribution


@dataclass(frozen=True, eq=False)
class KasamiConfig:
    p: int
    q: int
    m: int  # q = p^m
    ctx: FieldCtx = field(repr=False)
    zeta: int = field(repr=False)  # alpha^(q-1), order q+1
    theta: int = field(repr=False)  # alpha^((q+1)(p-1)), order (q-1)/(p-1)

    @property
    def alpha(self) -> int:
        return self.ctx.alpha

    @property
    def F_p(self) -> SubfieldHandle:
        return subfield(self.ctx, log2_exact(self.p))

    @property
    def F_q(self) -> SubfieldHandle:
        return subfield(self.ctx, log2_exact(self.q))

    @property
    def inner_length(self) -> int:
        return (self.q - 1) // (self.p - 1)

    @property
    def length(self) -> int:
        """Length of the concatenated code, (q^2 - 1)/(p - 1)."""
        return (self.q * self.q - 1) // (self.p - 1)

    @property
    def simplex(self) -> SimplexParams:
        return simplex_params(self.p, self.m, self.ctx)


@functools.lru_cache(maxsize=None)
def kasami_config(q: int, p: int = 2, strict: bool = True) -> KasamiConfig:
    a = log2_exact(p)
    b = log2_exact(q)
    if b % a or b // a < 1:
        raise FieldError(f"q={q} is not a power of p={p}")
    m = b // a
    if q < 2:
        raise FieldError("q must be at least 2")
    if math.gcd(m, p - 1) != 1:
        msg = f"gcd(m={m}, p-1={p - 1}) != 1"
        if strict:
            raise CoprimalityViolated(msg)
        warnings.warn(msg + ": the concatenated code is not cyclic", stacklevel=2)
    ctx = build_field(2 * b)
    zeta = ctx.alpha_pow(q - 1)
    theta = ctx.alpha_pow((q + 1) * (p - 1))
    return KasamiConfig(p, q, m, ctx, zeta, theta)


def build_mds(q: int) -> LinearCode:
    """M_q^perp: cyclic [q+1, 3, q-1]_q code with check polynomial
    (x - 1)(x - zeta)(x - zeta^q)."""
    cfg = kasami_config(q, 2)
    ctx = cfg.ctx
    h = poly.from_roots(ctx, [1, cfg.zeta, ctx.pow(cfg.zeta, q)])
    return from_check_poly(q + 1, cfg.F_q, h, name=f"M_{q}^perp")


def build_mds_trace(q: int) -> LinearCode:
    """M_q^perp from its trace form {(c + Tr_{q^2/q}(delta zeta^j))_j}."""
    cfg = kasami_config(q, 2)
    return from_nonzeros_trace(CyclicSpec(q + 1, cfg.F_q, (0, 1)), name=f"M_{q}^perp")


def build_kasami_dual(q: int, p: int = 2) -> LinearCode:
    """Phi(gen(M_q^perp)) over GF(p), block coordinate order."""
    cfg = kasami_config(q, p)
    M = build_mds(q)
    tag = f"K_{q}^perp" if p == 2 else f"K_{q}^{p},perp"
    return phi_matrix(M.gen, cfg.simplex, name=tag)


def crt_permutation(q: int, p: int = 2) -> np.ndarray:
    """``perm[b]`` = cyclic index of block index b = (j-1)M + (l-1).

    Cyclic position t solves (p-1) t = l(q+1)(p-1) + j(q-1) mod q^2 - 1 and is
    stored at index t - 1 (t = N maps to the last index).
    """
    cfg = kasami_config(q, p)
    M = cfg.inner_length
    N = cfg.length
    j = np.repeat(np.arange(1, q + 2), M)
    l = np.tile(np.arange(1, M + 1), q + 1)
    E = (l * (q + 1) * (p - 1) + j * (q - 1)) % (q * q - 1)
    if np.any(E % (p - 1)):
        raise IndexCollision("exponent not divisible by p - 1")
    t = (E // (p - 1)) % N
    idx = (t - 1) % N
    if len(np.unique(idx)) != N:
        raise IndexCollision("CRT reindexing is not a bijection")
    return idx


def crt_reindex(C: LinearCode, q: int, p: int = 2) -> LinearCode:
    perm = crt_permutation(q, p)
    if C.n != len(perm):
        raise IndexCollision(f"code length {C.n} does not match {len(perm)}")
    name = f"{C.name} (cyclic order)" if C.name else None
    return C.with_columns(perm, name)


def trace_exponents(q: int, p: int = 2) -> tuple[int, int]:
    """Exponents (in powers of beta = alpha^(p-1)) of the trace form that the
    reindexed code actually has: 1 and (q+1) * (q+1)^(-1 mod M).

    For p = 2 the second exponent lies in the binary cyclotomic orbit of q+1.
    """
    cfg = kasami_config(q, p)
    M = cfg.inner_length
    N = cfg.length
    x = pow((q + 1) % M, -1, M) if M > 1 else 0
    return 1, ((q + 1) * x) % N


def build_kasami_trace(q: int, p: int = 2, exponents=None) -> LinearCode:
    """Trace-built cyclic code of length (q^2-1)/(p-1) over GF(p)."""
    cfg = kasami_config(q, p)
    if exponents is None:
        exponents = trace_exponents(q, p)
    return from_nonzeros_trace(CyclicSpec(cfg.length, cfg.F_p, tuple(exponents)))


def expected_mds_weights(q: int) -> WeightDistribution:
    return WeightDistribution.from_pairs(
        q + 1,
        [
            (0, 1),
            (q - 1, (q**3 - q) // 2),
            (q, q * q - 1),
            (q + 1, (q**3 - 2 * q * q + q) // 2),
        ],
    )


def expected_weights(q: int, p: int = 2) -> WeightDistribution:
    """Closed-form distribution of the concatenated code over GF(p)."""
    n = (q * q - 1) // (p - 1)
    return WeightDistribution.from_pairs(
        n,
        [
            (0, 1),
            ((q * q - q) // p, q * (q * q - 1) // 2),
            (q * q // p, q * q - 1),
            ((q * q + q) // p, (q**3 - 2 * q * q + q) // 2),
        ],
    )


def expected_array(q: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    return (q * q - 1, q * (q - 1), 1), (1, q, q * q - 1)
