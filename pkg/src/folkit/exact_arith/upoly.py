"""Dense univariate polynomials as coefficient lists, lowest degree first.

Coefficients are any exact field elements (``Fraction`` or ``AlgElem``); the
functions never inspect their type, only use ``+ - * /`` and truthiness.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Sequence

Coeffs = list


def trim(p: Sequence[Any]) -> Coeffs:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def degree(p: Sequence[Any]) -> int:
    return len(trim(p)) - 1


def add(p, q) -> Coeffs:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def neg(p) -> Coeffs:
    return [-c for c in p]


def sub(p, q) -> Coeffs:
    return add(p, neg(q))


def scale(p, c) -> Coeffs:
    return trim([c * a for a in p])


def mul(p, q) -> Coeffs:
    p, q = trim(p), trim(q)
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] = out[i + j] + a * b
    return trim(out)


def divmod_(a, b) -> tuple[Coeffs, Coeffs]:
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    r = list(a)
    if len(r) - 1 < db:
        return [], r
    q = [0] * (len(r) - db)
    inv_lead = _inverse(b[-1])
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db]
        if not c:
            continue
        c = c * inv_lead
        q[k] = c
        for j in range(db + 1):
            if b[j]:
                r[k + j] = r[k + j] - c * b[j]
    return trim(q), trim(r[:db])


def _inverse(c):
    if isinstance(c, int):
        return Fraction(1, c)
    return 1 / c


def monic(p) -> Coeffs:
    p = trim(p)
    if not p:
        return []
    inv = _inverse(p[-1])
    return [c * inv for c in p[:-1]] + [Fraction(1)]


def gcd(a, b) -> Coeffs:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_(a, b)[1]
    return monic(a)


def xgcd(a, b) -> tuple[Coeffs, Coeffs, Coeffs]:
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    r0, r1 = trim(a), trim(b)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    if not r0:
        return [], [], []
    inv = _inverse(r0[-1])
    return scale(r0, inv), scale(s0, inv), scale(t0, inv)


def deriv(p) -> Coeffs:
    return trim([i * c for i, c in enumerate(p)][1:])


def evaluate(p, x):
    acc = 0
    for c in reversed(trim(p)):
        acc = acc * x + c
    return acc


def compose(p, q) -> Coeffs:
    """p(q(x))."""
    acc: Coeffs = []
    for c in reversed(trim(p)):
        acc = add(mul(acc, q), [c])
    return acc


def shift(p, s) -> Coeffs:
    """p(x + s)."""
    return compose(p, [s, Fraction(1)])


def power(p, n: int) -> Coeffs:
    out: Coeffs = [Fraction(1)]
    base = trim(p)
    while n:
        if n & 1:
            out = mul(out, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return out


def squarefree_decomposition(p) -> list[tuple[Coeffs, int]]:
    """Yun's algorithm over a field of characteristic zero; factors are monic."""
    f = monic(p)
    if len(f) <= 1:
        return []
    out = []
    df = deriv(f)
    a = gcd(f, df)
    b = divmod_(f, a)[0]
    c = divmod_(df, a)[0]
    d = sub(c, deriv(b))
    i = 1
    while len(b) > 1:
        a = gcd(b, d)
        if len(a) > 1:
            out.append((a, i))
        b = divmod_(b, a)[0]
        c = divmod_(d, a)[0]
        d = sub(c, deriv(b))
        i += 1
    return out


def is_squarefree(p) -> bool:
    p = trim(p)
    return len(gcd(p, deriv(p))) <= 1


def interpolate(xs, ys) -> Coeffs:
    """Newton divided differences; returns the unique polynomial of degree < len(xs)."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) * _inverse(xs[i] - xs[i - j])
    out: Coeffs = []
    for i in range(n - 1, -1, -1):
        out = add(mul(out, [-xs[i], Fraction(1)]), [coef[i]])
    return out
