"""Dense polynomials over a binary extension field.

A polynomial is a list of field elements (ints), lowest degree first, with no
trailing zeros.  The zero polynomial is ``[]``.
"""

from __future__ import annotations

from .errors import DivisionByZero


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def degree(a) -> int:
    a = trim(a)
    return len(a) - 1


def add(a, b):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] ^= c
    for i, c in enumerate(b):
        out[i] ^= c
    return trim(out)


def mul(ctx, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] ^= ctx.mul(x, y)
    return trim(out)


def divmod_(ctx, a, b):
    """Long division: returns ``(quotient, remainder)``."""
    b = trim(b)
    if not b:
        raise DivisionByZero("polynomial division by zero")
    r = trim(a)
    lead_inv = ctx.inv(b[-1])
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], r
    q = [0] * (len(r) - db)
    while len(r) - 1 >= db and r:
        shift = len(r) - 1 - db
        coef = ctx.mul(r[-1], lead_inv)
        q[shift] = coef
        for i, c in enumerate(b):
            r[i + shift] ^= ctx.mul(coef, c)
        r = trim(r)
    return trim(q), r


def from_roots(ctx, roots):
    """Monic polynomial prod (x - r); in characteristic 2, x - r = x + r."""
    out = [1]
    for r in roots:
        out = mul(ctx, out, [r, 1])
    return out


def evaluate(ctx, a, x):
    acc = 0
    for c in reversed(a):
        acc = ctx.mul(acc, x) ^ c
    return acc


def x_n_minus_1(n: int):
    out = [0] * (n + 1)
    out[0] = 1
    out[n] = 1
    return out


def to_str(a, var: str = "x") -> str:
    a = trim(a)
    if not a:
        return "0"
    terms = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if c == 0:
            continue
        mono = "1" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if c == 1:
            terms.append(mono)
        elif i == 0:
            terms.append(f"[{c}]")
        else:
            terms.append(f"[{c}]{mono}")
    return " + ".join(terms)
