from __future__ import annotations

import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from folkit.errors import ExtensionDegreeExceeded, PrecisionExhausted
from folkit.exact_arith import (
    INF,
    QQ,
    AlgElem,
    MPoly,
    NumberField,
    PuiseuxSeries,
    extension_bound,
    factor_coeffs,
    factor_univariate,
    mpoly_gcd,
    mpoly_ord,
    roots,
    series_ord,
)
from folkit.exact_arith import upoly

from conftest import to_sympy

VARS = ("x", "y")
x, y = MPoly.gens(VARS)


# -- multivariate polynomials -----------------------------------------------

def test_ord_examples():
    assert mpoly_ord(3 * x**2 + x * y**3) == 2
    assert mpoly_ord(MPoly.zero(VARS)) == math.inf
    assert mpoly_ord((x + y) ** 2 - x**2 - 2 * x * y - y**2) == math.inf


def test_gcd_examples():
    assert mpoly_gcd(x**2 * y, x * y**2) == x * y
    assert mpoly_gcd(x, y) == MPoly.one(VARS)
    g = mpoly_gcd(y**2 - x**2, y - x)
    # monic in graded-lex order with x > y, so the leading term is x
    assert str(g) == "x - y"
    assert (y**2 - x**2).divides(y**2 - x**2) and g.divides(y**2 - x**2) and g.divides(y - x)
    assert mpoly_gcd(2 * x**2 + 4 * x * y, MPoly.zero(VARS)) == x**2 + 2 * x * y


def test_canonical_printing():
    assert str(2 * x * y + y**2) == "2*x*y + y^2"
    assert str(Fraction(1, 2) * x**2 - x * y) == "1/2*x^2 - x*y"
    assert str(MPoly.zero(VARS)) == "0"
    assert str(-x - 1) == "-x - 1"


def test_divmod_and_exact_division():
    f = (x + y) * (x - 2 * y + 1)
    q, r = f.divmod(x + y)
    assert not r and q == x - 2 * y + 1
    assert f / (x + y) == x - 2 * y + 1
    with pytest.raises(ArithmeticError):
        _ = f / (x + 3)


def test_factor_univariate_examples():
    (t,) = MPoly.gens(("t",))
    assert factor_univariate(t**2 - 1) == [(t - 1, 1), (t + 1, 1)]
    assert factor_univariate(t**2) == [(t, 2)]
    assert factor_univariate(t**3 - 2) == [(t**3 - 2, 1)]


def test_x4_plus_1_splits_after_two_square_roots():
    K = NumberField.extend(QQ, [Fraction(-2), Fraction(0), Fraction(1)])  # sqrt(2)
    facs = factor_coeffs([1, 0, 0, 0, 1], K)
    assert sorted(len(f) - 1 for f, _ in facs) == [2, 2]
    L = NumberField.extend(K, [Fraction(1), Fraction(0), Fraction(1)])  # i
    facs = factor_coeffs([1, 0, 0, 0, 1], L)
    assert [len(f) - 1 for f, _ in facs] == [1, 1, 1, 1]


def test_roots_adjoin_extensions():
    rs = roots([Fraction(-2), Fraction(0), Fraction(1)])
    assert len(rs) == 1 and rs[0].conjugates == 2
    a = rs[0].value
    assert isinstance(a, AlgElem) and a * a == 2


def test_extension_bound_enforced():
    token = extension_bound.set(2)
    try:
        K = NumberField.extend(QQ, [Fraction(-2), Fraction(0), Fraction(1)])
        with pytest.raises(ExtensionDegreeExceeded):
            NumberField.extend(K, [Fraction(1), Fraction(0), Fraction(1)])
    finally:
        extension_bound.reset(token)


def test_algebraic_arithmetic_against_sympy():
    K = NumberField.extend(QQ, [Fraction(-2), Fraction(0), Fraction(1)])
    a = K.gen
    z = (3 + a) / (1 - 2 * a)
    ref = sympy.nsimplify((3 + sympy.sqrt(2)) / (1 - 2 * sympy.sqrt(2)))
    assert sympy.simplify(sympy.Rational(z.coeffs[0]) + sympy.Rational(z.coeffs[1]) * sympy.sqrt(2) - ref) == 0


small = st.integers(min_value=-4, max_value=4)


@st.composite
def polys(draw, max_terms=5, max_deg=3):
    n = draw(st.integers(min_value=0, max_value=max_terms))
    terms = {}
    for _ in range(n):
        e = (draw(st.integers(0, max_deg)), draw(st.integers(0, max_deg)))
        terms[e] = Fraction(draw(small), draw(st.integers(1, 3)))
    return MPoly(VARS, terms)


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == MPoly.zero(VARS)


@settings(max_examples=60, deadline=None)
@given(polys(), polys())
def test_ord_is_additive(a, b):
    if a and b:
        assert mpoly_ord(a * b) == mpoly_ord(a) + mpoly_ord(b)


@settings(max_examples=40, deadline=None)
@given(polys(max_terms=4, max_deg=2), polys(max_terms=4, max_deg=2), polys(max_terms=3, max_deg=2))
def test_gcd_matches_sympy(a, b, c):
    p, q = a * c, b * c
    if not p and not q:
        return
    g = mpoly_gcd(p, q)
    ratio = sympy.cancel(sympy.gcd(to_sympy(p), to_sympy(q)) / to_sympy(g))
    assert ratio.is_number and ratio != 0


@settings(max_examples=40, deadline=None)
@given(polys(), polys())
def test_printing_matches_sympy_expansion(a, b):
    assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=6).filter(lambda v: any(v)),
       st.lists(st.integers(-5, 5), min_size=1, max_size=6).filter(lambda v: any(v)))
def test_factor_remultiplies(u, v):
    p = upoly.trim(upoly.mul([Fraction(c) for c in u], [Fraction(c) for c in v]))
    prod = [Fraction(1)]
    for f, m in factor_coeffs(p):
        for _ in range(m):
            prod = upoly.mul(prod, f)
    assert prod == upoly.monic(p)


# -- truncated series --------------------------------------------------------

def test_series_ord_examples():
    s = PuiseuxSeries({3: Fraction(1), 5: Fraction(1)}, 1, 10)
    assert series_ord(s) == 3
    assert series_ord(PuiseuxSeries({})) == INF
    t = PuiseuxSeries.t()
    assert series_ord(t**2 * t**3) == 5
    with pytest.raises(PrecisionExhausted):
        series_ord(PuiseuxSeries({}, 1, 10))


def test_series_inverse_and_division():
    t = PuiseuxSeries.t()
    one_minus_t = 1 - t
    inv = 1 / one_minus_t
    assert all(inv.coefficient(k) == 1 for k in range(10))
    assert (t**3 + t**4) / t**3 == 1 + t


def test_ramified_series_order():
    s = PuiseuxSeries({3: Fraction(2)}, 2)  # 2 t^(3/2)
    assert series_ord(s) == Fraction(3, 2)


series_coeffs = st.dictionaries(st.integers(0, 8), st.integers(-3, 3).filter(bool).map(Fraction), max_size=5)


@settings(max_examples=60, deadline=None)
@given(series_coeffs, st.integers(1, 12), series_coeffs, st.integers(1, 12))
def test_product_precision_respects_cauchy_bound(ca, pa, cb, pb):
    a = PuiseuxSeries({k: v for k, v in ca.items() if k < pa}, 1, pa)
    b = PuiseuxSeries({k: v for k, v in cb.items() if k < pb}, 1, pb)
    c = a * b
    la = min(a.coeffs, default=pa)
    lb = min(b.coeffs, default=pb)
    assert c.prec >= min(pa + lb, pb + la)
    # the known coefficients are those of the polynomial product
    exact = PuiseuxSeries(a.coeffs) * PuiseuxSeries(b.coeffs)
    assert c.agrees_with(exact)
