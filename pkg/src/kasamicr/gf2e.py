"""Arithmetic in GF(2^e) with log/antilog tables, plus subfield handles.

Elements are plain ints in ``[0, 2^e)``: the coefficient bitmask of the
residue polynomial in the basis ``1, x, ..., x^(e-1)``.  Every construction
for a given alphabet tower lives in one ambient field; subfields are handles
onto Frobenius-stable subsets of it, never separate representations.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np

from . import poly
from .errors import (
    DivisionByZero,
    FieldError,
    NoFactorization,
    NotInSubfield,
    NotIrreducible,
    NotPrimitive,
    OrderUnavailable,
)

# Primitive polynomials as coefficient bitmasks; bit i is the x^i coefficient.
DEFAULT_MODULI = {
    1: 0b11,
    2: 0b111,            # x^2 + x + 1
    3: 0b1011,           # x^3 + x + 1
    4: 0b10011,          # x^4 + x + 1
    5: 0b100101,         # x^5 + x^2 + 1
    6: 0b1000011,        # x^6 + x + 1
    7: 0b10000011,       # x^7 + x + 1
    8: 0x11D,            # x^8 + x^4 + x^3 + x^2 + 1
    9: 0x211,            # x^9 + x^4 + 1
    10: 0x409,           # x^10 + x^3 + 1
    11: 0x805,           # x^11 + x^2 + 1
    12: 0x1053,          # x^12 + x^6 + x^4 + x + 1
    13: 0x201B,          # x^13 + x^4 + x^3 + x + 1
    14: 0x4443,          # x^14 + x^10 + x^6 + x + 1
    15: 0x8003,          # x^15 + x + 1
    16: 0x1100B,         # x^16 + x^12 + x^3 + x + 1
}

MAX_DEGREE = 16


def _clmod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a and a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def is_irreducible_f2(m: int) -> bool:
    """Trial division by every polynomial of degree <= deg(m) / 2."""
    d = m.bit_length() - 1
    if d < 1:
        return False
    for f in range(2, 1 << (d // 2 + 1)):
        if _clmod(m, f) == 0:
            return False
    return True


@functools.lru_cache(maxsize=None)
def build_field(e: int, modulus: int | None = None) -> "FieldCtx":
    """Build GF(2^e); ``modulus`` defaults to the fixed table above.

    Raises NotIrreducible for a reducible modulus and NotPrimitive when the
    class of x has multiplicative order below 2^e - 1.
    """
    if not 1 <= e <= MAX_DEGREE:
        raise FieldError(f"extension degree must be in [1, {MAX_DEGREE}], got {e}")
    if modulus is None:
        modulus = DEFAULT_MODULI[e]
    modulus = int(modulus)
    if modulus.bit_length() - 1 != e:
        raise FieldError(f"modulus {modulus:#x} does not have degree {e}")
    if not is_irreducible_f2(modulus):
        raise NotIrreducible(f"modulus {modulus:#x} is reducible over GF(2)")
    return FieldCtx(e, modulus)


class FieldCtx:
    """GF(2^e) with alpha = class of x.  Immutable once built."""

    def __init__(self, e: int, modulus: int):
        self.e = e
        self.modulus = modulus
        self.size = 1 << e
        self.n = self.size - 1  # multiplicative order
        exp = np.zeros(2 * self.n + 1, dtype=np.int64)
        log = np.zeros(self.size, dtype=np.int64)
        x = 1
        order = None
        for i in range(self.n):
            exp[i] = x
            x <<= 1
            if x & self.size:
                x ^= modulus
            if x == 1 and order is None:
                order = i + 1
        if order != self.n:
            raise NotPrimitive(
                f"root of {modulus:#x} has order {order}, expected {self.n}"
            )
        for i in range(self.n):
            log[exp[i]] = i
        exp[self.n : 2 * self.n] = exp[: self.n]
        exp[2 * self.n] = exp[0]
        exp.setflags(write=False)
        log.setflags(write=False)
        self.exp = exp
        self.log = log
        self.alpha = int(exp[1])

    def __repr__(self):
        return f"FieldCtx(e={self.e}, modulus={self.modulus:#x})"

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and other.e == self.e
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash((self.e, self.modulus))

    # scalar arithmetic on ints
    def add(self, x: int, y: int) -> int:
        return x ^ y

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return int(self.exp[self.log[x] + self.log[y]])

    def inv(self, x: int) -> int:
        if x == 0:
            raise DivisionByZero("inverse of zero")
        return int(self.exp[(self.n - self.log[x]) % self.n])

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, k: int) -> int:
        if x == 0:
            if k == 0:
                return 1
            if k < 0:
                raise DivisionByZero("negative power of zero")
            return 0
        return int(self.exp[(int(self.log[x]) * k) % self.n])

    def alpha_pow(self, k: int) -> int:
        return int(self.exp[k % self.n])

    def order_of(self, x: int) -> int:
        if x == 0:
            raise DivisionByZero("zero has no multiplicative order")
        return self.n // math.gcd(self.n, int(self.log[x]))

    # vectorised arithmetic on int arrays
    def mul_array(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        out = self.exp[self.log[x] + self.log[y]]
        return np.where((x == 0) | (y == 0), 0, out)

    def pow_array(self, x, k: int):
        x = np.asarray(x, dtype=np.int64)
        out = self.exp[(self.log[x] * k) % self.n]
        if k == 0:
            return np.ones_like(x)
        return np.where(x == 0, 0, out)

    def inv_array(self, x):
        x = np.asarray(x, dtype=np.int64)
        if np.any(x == 0):
            raise DivisionByZero("inverse of zero")
        return self.exp[(self.n - self.log[x]) % self.n]

    def subfield(self, d: int) -> "SubfieldHandle":
        return subfield(self, d)


def arith(ctx: FieldCtx, kind: str, x: int, y: int) -> int:
    """Dispatch ``add``, ``mul``, ``inv`` (y ignored) or ``pow`` (y = exponent)."""
    if kind == "add":
        return ctx.add(x, y)
    if kind == "mul":
        return ctx.mul(x, y)
    if kind == "inv":
        return ctx.inv(x)
    if kind == "pow":
        return ctx.pow(x, y)
    raise ValueError(f"unknown operation {kind!r}")


@dataclass(frozen=True, eq=False)
class SubfieldHandle:
    """The subfield GF(2^d) = {z : z^(2^d) = z} inside ``ctx``."""

    ctx: FieldCtx
    d: int
    elements: np.ndarray = field(repr=False)
    gamma: int = field(repr=False)  # primitive element of the subfield

    @property
    def size(self) -> int:
        return 1 << self.d

    @property
    def cofactor(self) -> int:
        """(2^e - 1) / (2^d - 1): nonzero members are alpha^(multiples of this)."""
        return self.ctx.n // (self.size - 1)

    def __eq__(self, other):
        return (
            isinstance(other, SubfieldHandle)
            and other.ctx == self.ctx
            and other.d == self.d
        )

    def __hash__(self):
        return hash((self.ctx, self.d))

    def contains(self, z: int) -> bool:
        return self.ctx.pow(z, self.size) == z

    def contains_array(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=np.int64)
        return self.ctx.pow_array(z, self.size) == z

    def nonzero(self) -> np.ndarray:
        return self.elements[1:]


@functools.lru_cache(maxsize=None)
def subfield(ctx: FieldCtx, d: int) -> SubfieldHandle:
    if d < 1 or ctx.e % d:
        raise FieldError(f"{d} does not divide the extension degree {ctx.e}")
    cof = ctx.n // ((1 << d) - 1)
    nz = ctx.exp[np.arange((1 << d) - 1) * cof]
    elements = np.sort(np.concatenate([[0], nz])).astype(np.int64)
    elements.setflags(write=False)
    gamma = int(ctx.exp[cof % ctx.n])
    return SubfieldHandle(ctx, d, elements, gamma)


def trace_rel(z, sub: SubfieldHandle, sup: SubfieldHandle):
    """Relative trace from ``sup`` down to ``sub``: sum of z^(Q^i), Q = |sub|.

    Accepts a scalar or an int array.
    """
    ctx = sub.ctx
    if sup.d % sub.d:
        raise FieldError(f"GF(2^{sub.d}) is not a subfield of GF(2^{sup.d})")
    r = sup.d // sub.d
    if np.ndim(z) == 0:
        z = int(z)
        if not sup.contains(z):
            raise NotInSubfield(f"{z} is not in GF(2^{sup.d})")
        acc, w = 0, z
        for _ in range(r):
            acc ^= w
            w = ctx.pow(w, sub.size)
        return acc
    z = np.asarray(z, dtype=np.int64)
    if not np.all(sup.contains_array(z)):
        raise NotInSubfield(f"array has entries outside GF(2^{sup.d})")
    acc = np.zeros_like(z)
    w = z
    for _ in range(r):
        acc = acc ^ w
        w = ctx.pow_array(w, sub.size)
    return acc


def unity_root(ctx: FieldCtx, r: int) -> int:
    """alpha^((2^e - 1)/r), an element of order exactly r."""
    if r < 1 or ctx.n % r:
        raise OrderUnavailable(f"{r} does not divide {ctx.n}")
    return ctx.alpha_pow(ctx.n // r)


def factor_dzeta(x: int, scalar_sub: SubfieldHandle, zeta: int, period: int):
    """Write nonzero ``x`` as ``d * zeta^l`` with d in the scalar subfield.

    Returns ``(d, l)`` with ``l`` in ``1..period``; unique when the scalar
    group order and ``period`` are coprime.
    """
    ctx = scalar_sub.ctx
    if x == 0:
        raise NoFactorization("zero has no factorization")
    s_order = scalar_sub.size - 1
    if math.gcd(s_order, period) != 1 or ctx.order_of(zeta) != period:
        raise NoFactorization(
            f"scalar order {s_order} and period {period} are not coprime "
            "or zeta has the wrong order"
        )
    cof = scalar_sub.cofactor
    a = int(ctx.log[x])
    z = int(ctx.log[zeta])
    for l in range(1, period + 1):
        rem = (a - l * z) % ctx.n
        if rem % cof == 0:
            return int(ctx.exp[rem]), l
    raise NoFactorization(f"{x} is outside the group generated by the scalars and zeta")


def conjugates(z: int, sub: SubfieldHandle) -> list[int]:
    """Distinct images of z under the Frobenius z -> z^|sub|."""
    ctx = sub.ctx
    out = [z]
    w = ctx.pow(z, sub.size)
    while w != z:
        out.append(w)
        w = ctx.pow(w, sub.size)
    return out


def minimal_polynomial(z: int, sub: SubfieldHandle) -> list[int]:
    """Monic minimal polynomial of z over ``sub`` (coefficients low degree first)."""
    return poly.from_roots(sub.ctx, conjugates(z, sub))


def basis_over(sub: SubfieldHandle, sup: SubfieldHandle) -> list[int]:
    """Polynomial basis 1, g, ..., g^(r-1) of ``sup`` over ``sub``; g = sup.gamma."""
    r = sup.d // sub.d
    ctx = sub.ctx
    return [ctx.pow(sup.gamma, i) for i in range(r)]


@functools.lru_cache(maxsize=None)
def coordinate_table(sub: SubfieldHandle, sup: SubfieldHandle) -> np.ndarray:
    """Array ``T`` with ``T[z]`` the coordinates of z (in ``sup``) over ``sub``.

    Rows for ambient elements outside ``sup`` are filled with -1.
    """
    ctx = sub.ctx
    basis = basis_over(sub, sup)
    r = len(basis)
    table = np.full((ctx.size, r), -1, dtype=np.int64)
    elems = sub.elements
    # enumerate all coefficient vectors, coordinate 0 fastest
    idx = np.indices((len(elems),) * r).reshape(r, -1)[::-1].T
    coeffs = elems[idx]
    values = np.zeros(len(coeffs), dtype=np.int64)
    for i, b in enumerate(basis):
        values ^= ctx.mul_array(coeffs[:, i], b)
    if len(np.unique(values)) != len(values):
        raise FieldError("basis is degenerate")
    table[values] = coeffs
    table.setflags(write=False)
    return table


@functools.lru_cache(maxsize=None)
def bit_codes(sub: SubfieldHandle) -> tuple[np.ndarray, np.ndarray]:
    """Additive bijection between ``sub`` and d-bit integers.

    Returns ``(encode, decode)``: ``encode[z]`` is the packed GF(2)
    coordinate vector of z (basis 1, g, g^2, ...), ``decode[c]`` inverts it.
    """
    ctx = sub.ctx
    f2 = subfield(ctx, 1)
    coords = coordinate_table(f2, sub)
    weights = 1 << np.arange(sub.d, dtype=np.int64)
    encode = np.full(ctx.size, -1, dtype=np.int64)
    members = sub.elements
    encode[members] = (coords[members] * weights).sum(axis=1)
    decode = np.zeros(sub.size, dtype=np.int64)
    decode[encode[members]] = members
    encode.setflags(write=False)
    decode.setflags(write=False)
    return encode, decode
