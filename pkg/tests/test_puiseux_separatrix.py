from __future__ import annotations

from fractions import Fraction

import pytest
import sympy

from folkit.blowup_resolution import Branch, branch_from_polys
from folkit.errors import DicriticalInfinitelyMany, NonGenericDirection, NotSquarefree
from folkit.exact_arith import AlgElem, MPoly, PuiseuxSeries
from folkit.foliation_core import vector_field
from folkit.puiseux_separatrix import (
    branch_conjugates,
    invariance_evidence,
    newton_puiseux,
    sample_dicritical_leaf,
    same_branch,
    separatrix_check,
    solve_separatrices,
    substitute,
    tangent_cone,
)

from conftest import to_sympy

x, y = MPoly.gens(("x", "y"))
(t,) = MPoly.gens(("t",))
st_, sx, sy = sympy.symbols("t x y")


def _rational(V: Branch) -> bool:
    vals = list(V.x.coeffs.values()) + list(V.y.coeffs.values())
    return not any(isinstance(c, AlgElem) and c.to_rational() is None for c in vals)


def _to_sympy_series(s: PuiseuxSeries, cutoff):
    out = 0
    for k, c in s.items():
        if k < cutoff * s.e:
            c = c.to_rational() if isinstance(c, AlgElem) else c
            out += sympy.Rational(c.numerator, c.denominator) * st_ ** sympy.Rational(k, s.e)
    return out


def _sympy_residue_order(f: MPoly, V: Branch, cutoff: int):
    """Order in t of f(x(t), y(t)) computed by sympy from truncations, capped at cutoff."""
    X = _to_sympy_series(V.x, cutoff)
    Y = _to_sympy_series(V.y, cutoff)
    val = sympy.expand(to_sympy(f).subs({sx: X, sy: Y}, simultaneous=True))
    if val == 0:
        return cutoff
    lows = [term.as_coeff_exponent(st_)[1] for term in sympy.Add.make_args(val)]
    return min(min(lows), cutoff)


CURVES = [
    y**2 - x**3,
    y**2 - x**4,
    x * y,
    y * (y - x) * (y + x),
    y**2 - x**2 - x**3,
    (y - x**2) * (y - x**3),
    x**3 - y**5,
    y**2 - 2 * x**2,
    x**2 + y**2,
]


@pytest.mark.parametrize("f", CURVES, ids=str)
def test_newton_puiseux_branches_lie_on_curve(f):
    bs = newton_puiseux(f, order=12)
    assert bs
    for V in bs:
        assert not substitute(f, V).coeffs  # no nonzero coefficient below the precision
        if _rational(V):
            cutoff = 10
            # f(x, y) changes by at most O(t^cutoff) when the branch is truncated at t^cutoff
            assert _sympy_residue_order(f, V, cutoff) >= cutoff
    assert sum(branch_conjugates(V) for V in bs) >= 1


def test_newton_puiseux_counts():
    assert len(newton_puiseux(x * y)) == 2
    assert len(newton_puiseux(y * (y - x) * (y + x))) == 3
    (cusp,) = newton_puiseux(y**2 - x**3)
    assert cusp.multiplicity() == 2
    # y^2 - 2x^2 splits only over Q(sqrt 2): one Galois class of two branches
    (pair,) = newton_puiseux(y**2 - 2 * x**2)
    assert branch_conjugates(pair) == 2
    (circle,) = newton_puiseux(x**2 + y**2)
    assert branch_conjugates(circle) == 2


def test_newton_puiseux_rejects_non_squarefree():
    with pytest.raises(NotSquarefree):
        newton_puiseux(y**2 * (y - x))
    with pytest.raises(ValueError):
        newton_puiseux(1 + x)


def test_exact_branches_are_certified_polynomials():
    (V,) = newton_puiseux(y**2 - x**3)
    assert V.x.is_exact and V.y.is_exact
    assert {str(V.x), str(V.y)} == {"t^2", "t^3"}


def test_separatrix_check():
    cusp = vector_field(2 * y, 3 * x**2)
    assert separatrix_check(cusp, branch_from_polys(t**2, t**3))
    assert not separatrix_check(cusp, branch_from_polys(t, t))
    ev = invariance_evidence(cusp, branch_from_polys(t**2, t**3, certificate=y**2 - x**3))
    assert ev.invariant and ev.method == "divisibility"


def _sorted_strs(bs):
    return sorted((str(V.x), str(V.y)) for V in bs)


def test_solver_tacnode():
    bs = solve_separatrices(vector_field(2 * y, 4 * x**3), order=8)
    assert _sorted_strs(bs) == [("t", "-t^2"), ("t", "t^2")]


def test_solver_cusp():
    (V,) = solve_separatrices(vector_field(2 * y, 3 * x**2), order=8)
    assert V.multiplicity() == 2
    assert same_branch(V, branch_from_polys(t**2, t**3))


def test_solver_saddle_axes():
    bs = solve_separatrices(vector_field(x, -y), order=8)
    assert len(bs) == 2
    for V in bs:
        assert separatrix_check(vector_field(x, -y), V)


def test_solver_weak_separatrix_is_formal():
    # Euler's equation x^2 y' = y - x: the weak separatrix diverges
    X = vector_field(x**2, y - x)
    bs = solve_separatrices(X, order=8)
    weak = [V for V in bs if V.formal]
    assert len(weak) == 1
    # y = sum (n-1)! x^n
    coeffs = [weak[0].y.coefficient(n) for n in range(1, 7)]
    assert coeffs == [Fraction(1), 1, 2, 6, 24, 120]


def test_dicritical_node_has_infinitely_many():
    X = vector_field(x, 2 * y)
    with pytest.raises(DicriticalInfinitelyMany) as ei:
        solve_separatrices(X, order=8)
    isolated = ei.value.isolated
    # leaves are y = c x^2 and x = 0; only x = 0 stays outside the family
    assert _sorted_strs(isolated) == [("0", "t")]
    assert _sorted_strs(solve_separatrices(X, order=8, isolated_only=True)) == _sorted_strs(isolated)


def test_sample_dicritical_leaf():
    X = vector_field(x, y + x**2)
    V = sample_dicritical_leaf(X, (1, 2), order=8)
    assert separatrix_check(X, V)
    assert V.tangent_direction() == (1, 2)
    # the leaves are y = x (c + x)
    assert str(V.x) == "t" and str(V.y) == "2*t + t^2"
    with pytest.raises(NonGenericDirection):
        sample_dicritical_leaf(X, (0, 0))
    with pytest.raises(NonGenericDirection):
        sample_dicritical_leaf(vector_field(2 * y, 3 * x**2), (1, 0))


def test_sample_dicritical_leaf_vertical():
    X = vector_field(x, y)
    V = sample_dicritical_leaf(X, (0, 1), order=8)
    assert str(V.x) == "0" and str(V.y) == "t"


def test_same_branch():
    a = branch_from_polys(t**2, t**3)
    b = branch_from_polys(4 * t**2, 8 * t**3)  # t -> 2t
    assert same_branch(a, b)
    assert not same_branch(a, branch_from_polys(t**2, -(t**3) + t**4))
    assert not same_branch(a, branch_from_polys(t, t))


def test_same_branch_up_to_conjugation():
    (pair,) = newton_puiseux(y**2 - 2 * x**2)
    other = Branch(pair.x, -pair.y)
    assert same_branch(pair, other)


def test_tangent_cone_of_branch():
    assert tangent_cone(branch_from_polys(t**2, t**3)) == y
    assert tangent_cone(branch_from_polys(2 * t, 3 * t + t**2)) == x - Fraction(2, 3) * y
