"""Cyclic codes: from a check polynomial, from a trace representation, and
shift-invariance tests.

Coordinates are stored 0-based; array index ``j - 1`` holds position ``j``
of the trace form ``(sum_i Tr(a_i beta^(s_i j)))_{j=1..n}``.  For the
polynomial view, array index ``i`` is the coefficient of ``x^i``.  The two
views differ by a cyclic shift, which leaves every cyclic code unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import poly
from .errors import DegenerateOrbit, NotCyclic, NotDivisor
from .gf2e import SubfieldHandle, basis_over, minimal_polynomial, subfield, trace_rel
from .linear import LinearCode, rref


def beta(sub: SubfieldHandle, n: int) -> int:
    """The fixed order-n root alpha^((2^e - 1)/n)."""
    ctx = sub.ctx
    if ctx.n % n:
        raise NotDivisor(f"{n} does not divide {ctx.n}")
    return ctx.alpha_pow(ctx.n // n)


def cyclotomic_orbit(s: int, n: int, Q: int) -> list[int]:
    """Orbit of s under multiplication by Q modulo n, starting at s."""
    s %= n
    out = [s]
    t = (s * Q) % n
    while t != s:
        out.append(t)
        t = (t * Q) % n
    return out


@dataclass(frozen=True)
class CyclicSpec:
    n: int
    sub: SubfieldHandle
    nonzero_exponents: tuple

    def orbits(self) -> list[list[int]]:
        seen = {}
        out = []
        for s in self.nonzero_exponents:
            orb = cyclotomic_orbit(s, self.n, self.sub.size)
            for t in orb:
                if t in seen:
                    raise DegenerateOrbit(
                        f"exponents {seen[t]} and {s % self.n} share a Frobenius orbit"
                    )
                seen[t] = s % self.n
            out.append(orb)
        return out


def from_check_poly(n: int, sub: SubfieldHandle, h, name=None) -> LinearCode:
    """Cyclic code with check polynomial h: multiples of g = (x^n - 1)/h."""
    ctx = sub.ctx
    h = poly.trim(h)
    if not all(sub.contains(c) for c in h):
        raise NotDivisor("check polynomial has coefficients outside the alphabet")
    g, rem = poly.divmod_(ctx, poly.x_n_minus_1(n), h)
    if rem:
        raise NotDivisor("h does not divide x^n - 1")
    k = len(h) - 1
    gen = np.zeros((k, n), dtype=np.int64)
    for i in range(k):
        gen[i, i : i + len(g)] = g
    code = LinearCode(sub, gen, name)
    assert code.rank() == k
    return code


def from_nonzeros_trace(spec: CyclicSpec, name=None) -> LinearCode:
    """The code {(sum_i Tr(a_i beta^(s_i j)))_j} over all a_i in GF(Q^k_i)."""
    sub = spec.sub
    ctx = sub.ctx
    b = beta(sub, spec.n)
    j = np.arange(1, spec.n + 1)
    rows = []
    for orb in spec.orbits():
        s = orb[0]
        big = subfield(ctx, sub.d * len(orb))
        powers = ctx.exp[(int(ctx.log[b]) * s * j) % ctx.n]
        for a in basis_over(sub, big):
            rows.append(trace_rel(ctx.mul_array(a, powers), sub, big))
    code = LinearCode(sub, np.array(rows, dtype=np.int64).reshape(-1, spec.n), name)
    if code.rank() != code.k:
        raise DegenerateOrbit("trace rows are linearly dependent")
    return code


def check_poly_of(spec: CyclicSpec) -> list[int]:
    """Check polynomial of the trace-built code: prod of minimal polynomials
    of beta^(-s) over the orbit representatives."""
    sub = spec.sub
    ctx = sub.ctx
    b = beta(sub, spec.n)
    h = [1]
    for orb in spec.orbits():
        h = poly.mul(ctx, h, minimal_polynomial(ctx.pow(b, -orb[0]), sub))
    return h


def is_shift_invariant(C: LinearCode) -> bool:
    if C.k == 0:
        return True
    return bool(np.all(C.contains(np.roll(C.gen, 1, axis=1))))


def generator_poly(C: LinearCode) -> list[int]:
    """Monic generator polynomial of a cyclic code (degree n - k)."""
    if not is_shift_invariant(C):
        raise NotCyclic("code is not invariant under the cyclic shift")
    n, k = C.n, C.k
    if k == 0:
        return poly.x_n_minus_1(n)
    # the last k positions form an information set; pivot on them first
    order = list(range(n - 1, n - k - 1, -1)) + list(range(n - k))
    R, pivots = rref(C.ctx, C.gen[:, order])
    if pivots != list(range(k)):
        raise NotCyclic("trailing positions are not an information set")
    row = R[k - 1]
    g = np.empty(n, dtype=np.int64)
    g[order] = row
    g = poly.trim(g.tolist())
    if len(g) - 1 != n - k or g[-1] != 1:
        raise NotCyclic("no monic codeword of degree n - k")
    _, rem = poly.divmod_(C.ctx, poly.x_n_minus_1(n), g)
    if rem:
        raise NotCyclic("generator candidate does not divide x^n - 1")
    return g
