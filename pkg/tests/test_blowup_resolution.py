from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from folkit.blowup_resolution import (
    HYPERBOLIC,
    REGULAR,
    RESONANT,
    SADDLE_NODE,
    DEGENERATE,
    blow_up,
    branch_blow_up,
    branch_from_polys,
    branch_tower,
    classify,
    nu_tilde,
    ratio_in_positive_rationals,
    resolve,
    root_germ,
    singular_points_on_divisor,
)
from folkit.errors import DepthExceeded, DimensionUnsupported
from folkit.exact_arith import MPoly
from folkit.foliation_core import normalize, vector_field

from conftest import to_sympy
from test_foliation_core import plane_polys

x, y = MPoly.gens(("x", "y"))
(t,) = MPoly.gens(("t",))
sx, sy = sympy.symbols("x y")


def _sympy_pullback(P, Q, chart):
    p, q = to_sympy(P), to_sympy(Q)
    if chart == "first":
        pc, qc = p.subs(sy, sx * sy), q.subs(sy, sx * sy)
        return sympy.expand(sx * pc), sympy.expand(qc - sy * pc)
    pc, qc = p.subs(sx, sx * sy), q.subs(sx, sx * sy)
    return sympy.expand(pc - sx * qc), sympy.expand(sy * qc)


@settings(max_examples=40, deadline=None)
@given(plane_polys(), plane_polys(), st.sampled_from(["first", "second"]))
def test_pullback_matches_sympy(P, Q, chart):
    if not P and not Q:
        return
    X = normalize([P, Q])
    b = blow_up(root_germ(X), chart)
    ref = _sympy_pullback(X.P, X.Q, chart)
    assert tuple(sympy.expand(to_sympy(c)) for c in b.pulled_back) == ref
    # removed divisor power: nu_tilde + 1
    e = sx if chart == "first" else sy
    s = min(sympy.Poly(r, e).monoms()[-1][0] if r != 0 else 10**9 for r in ref)
    assert b.nu_tilde == s - 1


def test_cusp_first_chart():
    b = blow_up(root_germ(vector_field(2 * y, 3 * x**2)), "first")
    assert b.nu_tilde == 0
    assert b.germ.field.components == (2 * x * y, 3 * x - 2 * y**2)


def test_radial_blow_up_is_dicritical_in_both_charts():
    R = root_germ(vector_field(x, y))
    for chart in ("first", "second"):
        b = blow_up(R, chart)
        assert b.nu_tilde == 1 and not b.divisor_invariant


@pytest.mark.parametrize(
    "X,expected",
    [
        (vector_field(x, y), 1),
        (vector_field(2 * y, 3 * x**2), 0),
        (vector_field(x, y + x**2), 1),
        (vector_field(x**2, y**2), 1),
        (vector_field(1 + x, y), -1),
    ],
)
def test_nu_tilde(X, expected):
    assert nu_tilde(X) == expected


@pytest.mark.parametrize(
    "X,tag",
    [
        (vector_field(1 + x, y), REGULAR),
        (vector_field(x, -y), HYPERBOLIC),
        (vector_field(x, 2 * y), RESONANT),
        (vector_field(x, y), RESONANT),
        (vector_field(x**2, y), SADDLE_NODE),
        (vector_field(2 * y, 3 * x**2), DEGENERATE),
        (vector_field(3 * x + y, x + y), HYPERBOLIC),
        (vector_field(x, (-1) * y + x * y), HYPERBOLIC),
    ],
)
def test_classify(X, tag):
    assert classify(X).tag == tag


def test_ratio_test_against_eigenvalues():
    # eigenvalues a, b with ratio a/b
    for a, b in [(1, 2), (2, 3), (1, -1), (3, 3), (-1, -4)]:
        tr, det = Fraction(a + b), Fraction(a * b)
        assert ratio_in_positive_rationals(tr, det) == (Fraction(a, b) > 0)
    assert not ratio_in_positive_rationals(Fraction(4), Fraction(2))  # 2 +- sqrt 2


def test_reduced_field_has_single_node_tree():
    T = resolve(vector_field(x, -y))
    assert len(T.nodes) == 1 and T.root.is_leaf and T.second_type and T.strictly_nondicritical


def test_cusp_resolution():
    T = resolve(vector_field(2 * y, 3 * x**2))
    assert T.complete and T.second_type and T.strictly_nondicritical
    assert all(n.reduced_class.reduced for n in T.leaves())
    assert [n.nu for n in T.nodes][:2] == [1, 1]


def test_radial_resolution():
    T = resolve(vector_field(x, y))
    assert T.root.dicritical and not T.strictly_nondicritical
    assert T.root.chart_dicritical is True
    # one blow-up leaves a regular foliation transverse to the divisor
    assert len(T.nodes) == 1


def test_saddle_node_at_origin_is_second_type():
    # the weak direction is not a divisor component because nothing was blown up
    T = resolve(vector_field(x**2, -y))
    assert len(T.nodes) == 1 and T.second_type


@pytest.mark.parametrize("P,Q", [(x**2, x * y + y**2), (x, 2 * y + x**2)])
def test_weak_direction_in_divisor_is_not_second_type(P, Q):
    T = resolve(vector_field(P, Q))
    assert not T.second_type and T.weak_in_divisor
    for nid in T.weak_in_divisor:
        assert T.nodes[nid].reduced_class.tag == SADDLE_NODE


def test_depth_exceeded_carries_partial_tree():
    with pytest.raises(DepthExceeded) as ei:
        resolve(vector_field(2 * y, 3 * x**2), max_depth=1)
    assert ei.value.partial is not None and not ei.value.partial.complete


def test_three_dimensional_resolution_unsupported():
    a, b, c = MPoly.gens(("x", "y", "z"))
    with pytest.raises(DimensionUnsupported):
        resolve(normalize([a, b, c]))


def test_singular_points_of_tacnode():
    X = vector_field(2 * y, 4 * x**3)  # y^2 - x^4
    pts = singular_points_on_divisor(root_germ(X))
    assert [(p.chart, p.center) for p in pts] == [("first", 0)]


def test_branch_blow_up_cusp():
    V = branch_from_polys(t**2, t**3)
    assert V.multiplicity() == 2
    chart, c, W = branch_blow_up(V)
    assert chart == "first" and c == 0
    assert str(W.x) == "t^2" and str(W.y) == "t"
    assert W.multiplicity() == 1


def test_branch_blow_up_second_chart():
    chart, c, W = branch_blow_up(branch_from_polys(t**3, t))
    assert chart == "second" and str(W.x) == "t^2" and str(W.y) == "t"


def test_branch_tower_cusp():
    X = vector_field(2 * y, 3 * x**2)
    tower = branch_tower(X, branch_from_polys(t**2, t**3), 3)
    rows = [(lv.m, lv.nu_tilde, lv.index) for lv in tower.levels]
    assert rows == [(2, 0, 2), (1, 0, 2), (1, 1, 2), (1, 0, 1)]
    assert tower.levels[2].nu == 2
