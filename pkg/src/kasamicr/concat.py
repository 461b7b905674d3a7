"""Simplex inner code, the symbol encoder phi and the matrix map Phi.

``phi(z) = (Tr_{q/p}(z xi^1), ..., Tr_{q/p}(z xi^M))`` with ``M = (q-1)/(p-1)``
and ``xi`` the fixed order-M root of the ambient field.  ``Phi(M)`` replaces
every entry ``M_ij`` by the column block ``(M_ij xi^l)_l`` written out in
coordinates over GF(p) (polynomial basis of GF(q) over GF(p)).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AlphabetMismatch, CoprimalityViolated, FieldError
from .gf2e import (
    FieldCtx,
    SubfieldHandle,
    build_field,
    coordinate_table,
    subfield,
    trace_rel,
    unity_root,
)
from .linear import LinearCode


def log2_exact(x: int) -> int:
    if x < 1 or x & (x - 1):
        raise FieldError(f"{x} is not a power of 2")
    return x.bit_length() - 1


@dataclass(frozen=True, eq=False)
class SimplexParams:
    """Inner-code data for alphabet p = 2^a and outer alphabet q = p^k."""

    ctx: FieldCtx
    p: int
    k: int
    xi: int
    p_sub: SubfieldHandle = field(repr=False)
    q_sub: SubfieldHandle = field(repr=False)
    table: np.ndarray = field(repr=False)  # table[z] = phi(z), -1 rows off GF(q)

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def length(self) -> int:
        return (self.q - 1) // (self.p - 1)

    @property
    def weight(self) -> int:
        return self.q // self.p


@functools.lru_cache(maxsize=None)
def simplex_params(p: int, k: int, ctx: FieldCtx | None = None) -> SimplexParams:
    """Build the inner-code data; ambient field defaults to GF(q^2)."""
    a = log2_exact(p)
    if k < 1:
        raise FieldError("k must be positive")
    if math.gcd(k, p - 1) != 1:
        raise CoprimalityViolated(f"gcd(k={k}, p-1={p - 1}) != 1")
    q = p**k
    if ctx is None:
        ctx = build_field(2 * a * k)
    p_sub = subfield(ctx, a)
    q_sub = subfield(ctx, a * k)
    M = (q - 1) // (p - 1)
    xi = unity_root(ctx, M)
    ls = np.arange(1, M + 1)
    xi_pows = ctx.exp[(int(ctx.log[xi]) * ls) % ctx.n]
    table = np.full((ctx.size, M), -1, dtype=np.int64)
    zs = q_sub.elements
    table[zs] = trace_rel(ctx.mul_array(zs[:, None], xi_pows[None, :]), p_sub, q_sub)
    table.setflags(write=False)
    return SimplexParams(ctx, p, k, xi, p_sub, q_sub, table)


def phi(word, params: SimplexParams) -> np.ndarray:
    """Concatenated image of a word (or array of words along the last axis)."""
    w = np.asarray(word, dtype=np.int64)
    if w.size and (w.min() < 0 or w.max() >= params.ctx.size or np.any(params.table[w, 0] < 0)):
        raise AlphabetMismatch("symbols must lie in GF(q)")
    out = params.table[w]
    return out.reshape(*w.shape[:-1], w.shape[-1] * params.length)


def phi_matrix(M, params: SimplexParams, name=None) -> LinearCode:
    """Phi(M): the km x nM generator over GF(p) of phi(rowspace M)."""
    if isinstance(M, LinearCode):
        name = name or (f"Phi({M.name})" if M.name else None)
        M = M.gen
    M = np.atleast_2d(np.asarray(M, dtype=np.int64))
    ctx = params.ctx
    if M.size and not np.all(params.q_sub.contains_array(M)):
        raise AlphabetMismatch("matrix entries must lie in GF(q)")
    rows, n = M.shape
    L = params.length
    ls = np.arange(1, L + 1)
    xi_pows = ctx.exp[(int(ctx.log[params.xi]) * ls) % ctx.n]
    blocks = ctx.mul_array(M[:, :, None], xi_pows[None, None, :]).reshape(rows, n * L)
    coords = coordinate_table(params.p_sub, params.q_sub)[blocks]  # rows x nL x k
    gen = coords.transpose(0, 2, 1).reshape(rows * params.k, n * L)
    return LinearCode(params.p_sub, gen, name)


def simplex_matrix(p: int, k: int, ctx: FieldCtx | None = None) -> LinearCode:
    """Generator of the [(q-1)/(p-1), k] simplex code: Phi of the 1x1 matrix (1)."""
    params = simplex_params(p, k, ctx)
    return phi_matrix([[1]], params, name=f"S_{params.q}")

