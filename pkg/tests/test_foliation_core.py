from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from folkit.blowup_resolution import blow_up, root_germ
from folkit.errors import AllZero, DimensionUnsupported
from folkit.exact_arith import MPoly
from folkit.foliation_core import (
    algebraic_multiplicity,
    initial_part,
    intersection_number,
    is_dicritical,
    linear_part,
    milnor_number,
    normalize,
    saddle_node,
    spectrum_nonzero,
    summarize,
    tangent_cone,
    vector_field,
)

from conftest import resultant_milnor

VARS = ("x", "y")
x, y = MPoly.gens(VARS)
ZERO = MPoly.zero(VARS)


def test_normalize():
    X = normalize([x**2 * y, x * y**2])
    assert X.components == (x, y) and X.removed_gcd == x * y
    Y = normalize([2 * y, 3 * x**2])
    assert Y.components == (2 * y, 3 * x**2) and Y.removed_gcd == MPoly.one(VARS)
    with pytest.raises(AllZero):
        normalize([ZERO, ZERO])


def test_algebraic_multiplicity():
    assert algebraic_multiplicity(vector_field(2 * y, 3 * x**2)) == 1
    assert algebraic_multiplicity(vector_field(x, y)) == 1
    assert algebraic_multiplicity(vector_field(x**3, y**3 + x**4)) == 3
    assert algebraic_multiplicity(vector_field(1 + x, y)) == 0


def test_initial_part():
    assert initial_part(vector_field(2 * y, 3 * x**2)) == (2 * y, ZERO)
    assert initial_part(vector_field(x, y)) == (x, y)
    assert initial_part(vector_field(x**2 + y**3, x * y)) == (x**2, x * y)


def test_spectrum_predicates():
    sn = vector_field(x**2, y)
    assert [str(v) for v in linear_part(sn).spectrum] == ["0", "1"]
    assert saddle_node(sn) and spectrum_nonzero(sn)
    node = vector_field(x, 2 * y)
    assert not saddle_node(node) and spectrum_nonzero(node)
    nil = vector_field(y**2, x**3)
    assert not saddle_node(nil) and not spectrum_nonzero(nil)


def test_irrational_spectrum_satisfies_charpoly():
    lp = linear_part(vector_field(3 * x + y, x + y))
    assert list(lp.charpoly) == [2, -4, 1]
    for v in lp.spectrum:
        assert v * v - 4 * v + 2 == 0
    assert lp.trace == 4 and lp.det == 2


def test_dicritical():
    assert is_dicritical(vector_field(x, y))
    assert not is_dicritical(vector_field(2 * y, 3 * x**2))
    assert is_dicritical(vector_field(x**2, x * y))  # normalizes to (x, y)
    assert tangent_cone(vector_field(x, 2 * y)) == -x * y


def test_dicritical_needs_the_plane():
    a, b, c = MPoly.gens(("x", "y", "z"))
    X = normalize([a, b, c])
    with pytest.raises(DimensionUnsupported):
        is_dicritical(X)


@pytest.mark.parametrize(
    "P,Q,mu",
    [(x, y, 1), (2 * y, 3 * x**2, 2), (x**2, y, 2), (y**2, x**3, 6), (x**2, x * y + y**2, 4), (x, x + y**2, 2)],
)
def test_milnor_examples(P, Q, mu):
    assert milnor_number(vector_field(P, Q)) == mu


def test_intersection_with_common_component():
    assert intersection_number(x * (y - x), x * (y + 1)) == float("inf")
    # a common factor away from the origin does not count
    assert intersection_number((1 + x) * y, (1 + x) * x) == 1


coef = st.integers(-3, 3)


@st.composite
def plane_polys(draw, max_deg=3):
    terms = {}
    for _ in range(draw(st.integers(1, 4))):
        e = (draw(st.integers(0, max_deg)), draw(st.integers(0, max_deg)))
        if e == (0, 0):
            continue
        terms[e] = Fraction(draw(coef))
    return MPoly(("x", "y"), terms)


@settings(max_examples=80, deadline=None)
@given(plane_polys(), plane_polys())
def test_fulton_matches_resultant_oracle(P, Q):
    if not P or not Q:
        return
    ref = resultant_milnor(P, Q)
    if ref is None:
        return
    assert intersection_number(P, Q) == ref


def test_dicritical_two_routes_on_corpus(corpus):
    for case in corpus.values():
        X = normalize(case.polys, case.variables)
        if algebraic_multiplicity(X) == 0:
            continue
        for chart in ("first", "second"):
            assert is_dicritical(X) == (not blow_up(root_germ(X), chart).divisor_invariant), case.name


def test_saddle_node_chain_on_corpus(corpus):
    for case in corpus.values():
        X = normalize(case.polys, case.variables)
        s = summarize(X)
        if s.saddle_node:
            assert s.spectrum_nonzero and s.milnor > 1
        assert (s.milnor == 1) == all(bool(v) for v in s.linear.spectrum), case.name


LINEAR_MAPS = [((1, 1), (0, 1)), ((2, 0), (1, 1)), ((0, 1), (1, 0)), ((1, -3), (2, 1)), ((3, 2), (1, 1))]


@pytest.mark.parametrize("M", LINEAR_MAPS)
def test_multiplicity_invariant_under_linear_maps(corpus, M):
    from folkit.invariants import transform_by_automorphism

    (a, b), (c, d) = M
    det = Fraction(a * d - b * c)
    fw = [a * x + b * y, c * x + d * y]
    inv = [(d * x - b * y) * (1 / det), (-c * x + a * y) * (1 / det)]
    for case in corpus.values():
        X = normalize(case.polys, case.variables)
        Y = transform_by_automorphism(X, fw, inv)
        assert algebraic_multiplicity(Y) == algebraic_multiplicity(X), case.name


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), plane_polys(2), plane_polys())
def test_fulton_matches_resultant_oracle_monic(k, P, Q):
    # y^k + P has a constant leading coefficient in y whenever deg_y P < k
    P = y**k + MPoly(("x", "y"), {e: c for e, c in P.terms.items() if e[1] < k})
    if not Q:
        return
    ref = resultant_milnor(P, Q)
    if ref is None:
        return
    assert intersection_number(P, Q) == ref
