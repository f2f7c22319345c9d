"""Univariate factorization over the rationals and over number-field towers.

Over Q the work is delegated to sympy. Over an extension K = k(a) we use
Trager's norm method: shift so that the norm down to k is squarefree, factor
the norm over k (recursively), and recover the factors over K with gcds.
Roots of irreducible factors of degree > 1 are represented by adjoining a new
generator to the tower.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

import sympy

from . import upoly
from .field import QQ, AlgElem, NumberField, common_field, element_norm, field_of_all


def _factor_over_q(p: list) -> list[list]:
    """Monic irreducible factors of a squarefree rational polynomial."""
    x = sympy.Symbol("x")
    coeffs = [sympy.Rational(c.numerator, c.denominator) for c in map(Fraction, reversed(p))]
    poly = sympy.Poly(coeffs, x, domain=sympy.QQ)
    _, facs = poly.factor_list()
    out = []
    for fac, _mult in facs:
        cs = [Fraction(int(c.p), int(c.q)) for c in reversed(fac.all_coeffs())]
        out.append(upoly.monic(cs))
    return out


def _norm_poly(g: list, field: NumberField) -> list:
    """N_{K/k}(g) in k[x] by evaluation at integer points and interpolation."""
    n = (len(g) - 1) * field.degree
    xs = list(range(n + 1))
    ys = []
    for x0 in xs:
        v = upoly.evaluate(g, x0)
        ys.append(element_norm(field.convert(v)))
    return [field.base.convert(c) for c in upoly.interpolate([Fraction(x) for x in xs], ys)]


def _factor_squarefree(p: list, field) -> list[list]:
    if len(p) <= 2:
        return [upoly.monic(p)]
    if field is QQ:
        return _factor_over_q([QQ.convert(c) for c in p])
    a = field.gen
    base = field.base
    f = [field.convert(c) for c in p]
    for k in range(0, 64):
        s = (k + 1) // 2 * (1 if k % 2 else -1)
        g = upoly.shift(f, -s * a) if s else f
        g = [field.convert(c) for c in g]
        norm = _norm_poly(g, field)
        if not upoly.is_squarefree(norm):
            continue
        out = []
        for h in _factor_squarefree(upoly.monic(norm), base):
            hk = [field.convert(c) for c in h]
            d = upoly.gcd(g, hk)
            if len(d) > 1:
                back = upoly.shift(d, s * a) if s else d
                out.append(upoly.monic([field.convert(c) for c in back]))
        return out
    raise ArithmeticError("no squarefree norm found for Trager factorization")


def factor_coeffs(p, field=None) -> list[tuple[list, int]]:
    """Factor a coefficient list (low -> high) into monic irreducibles with multiplicities.

    The result is sorted by (degree, multiplicity, printed form) so it is
    reproducible across runs.
    """
    p = upoly.trim(p)
    if not p:
        raise ValueError("cannot factor the zero polynomial")
    if field is None:
        field = field_of_all(p)
    out = []
    for part, mult in upoly.squarefree_decomposition([field.convert(c) for c in p]):
        for fac in _factor_squarefree(part, field):
            out.append(([_simplify(c, field) for c in fac], mult))
    out.sort(key=lambda fm: (len(fm[0]), fm[1], [str(c) for c in fm[0]]))
    return out


def _simplify(c, field):
    return field.convert(c) if field is not QQ else Fraction(c)


class Root(NamedTuple):
    value: object  # Fraction or AlgElem
    multiplicity: int
    conjugates: int  # number of Galois-conjugate roots this value stands for
    minpoly: tuple  # monic minimal polynomial over the field we started from


def roots(p, field=None) -> list[Root]:
    """All roots of ``p``, one representative per irreducible factor.

    Irreducible factors of degree d > 1 are represented by the generator of a
    freshly adjoined extension (``conjugates == d``).
    """
    if field is None:
        field = field_of_all(p)
    out = []
    for fac, mult in factor_coeffs(p, field):
        d = len(fac) - 1
        if d == 1:
            val = -fac[0]
            if isinstance(val, AlgElem):
                val = val.simplify()
            out.append(Root(val, mult, 1, tuple(fac)))
        else:
            ext = NumberField.extend(field, fac, check=False)
            out.append(Root(ext.gen, mult, d, tuple(fac)))
    return out


__all__ = ["factor_coeffs", "roots", "Root", "common_field"]
