"""Quadratic blow-ups of plane foliation germs, resolution trees and branch towers.

Charts of the blow-up of the origin:

* ``first``:  (x, z) -> (x, x*z); the exceptional divisor is {x = 0}.
* ``second``: (w, y) -> (w*y, y); the exceptional divisor is {y = 0}.

Chart coordinates are always renamed back to the germ's own variable names,
so a germ at a divisor point is again a field in ``(x, y)`` with its own
divisor components recorded as coordinate axes through the point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import DepthExceeded, DimensionUnsupported, InvalidBranch, PrecisionExhausted
from .exact_arith import AlgElem, MPoly, PuiseuxSeries, roots, upoly
from .exact_arith.field import to_rational
from .foliation_core import (
    VectorField,
    algebraic_multiplicity,
    is_dicritical,
    linear_part,
    normalize,
)

CHARTS = ("first", "second")

REGULAR = "regular"
HYPERBOLIC = "nondegenerate_hyperbolic"
SADDLE_NODE = "saddle_node"
RESONANT = "resonant_nonreduced"
DEGENERATE = "degenerate"
REDUCED_TAGS = (REGULAR, HYPERBOLIC, SADDLE_NODE)


# --------------------------------------------------------------------------
# divisor bookkeeping


@dataclass(frozen=True)
class DivisorComponent:
    """A component of the exceptional divisor through a chart point.

    ``axis`` names the local equation: ``"x"`` for {x = 0}, ``"y"`` for {y = 0}.
    """

    axis: str
    component: int

    def to_json(self) -> dict:
        return {"equation": f"{self.axis} = 0", "component": self.component}


@dataclass(frozen=True)
class ChartStep:
    chart: str
    center: object  # coordinate of the point on the new divisor (z in chart one, 0 in chart two)

    def to_json(self) -> dict:
        return {"chart": self.chart, "center": self.center}


@dataclass(frozen=True)
class ChartGerm:
    chart_path: tuple[ChartStep, ...]
    field: VectorField
    divisor: tuple[DivisorComponent, ...] = ()

    @property
    def depth(self) -> int:
        return len(self.chart_path)

    def to_json(self) -> dict:
        return {
            "chart_path": [s.to_json() for s in self.chart_path],
            "field": [str(c) for c in self.field.components],
            "divisor": [d.to_json() for d in self.divisor],
        }


def root_germ(X: VectorField) -> ChartGerm:
    if X.n != 2:
        raise DimensionUnsupported("blow-ups are only implemented in the plane")
    return ChartGerm((), X, ())


# --------------------------------------------------------------------------
# one blow-up


@dataclass(frozen=True)
class BlowUp:
    """Result of blowing up a germ at its origin, seen in one chart (at the chart origin)."""

    germ: ChartGerm
    nu: int
    nu_tilde: int  # exponent of the divisor equation removed from the pull-back, minus one
    pulled_back: tuple[MPoly, MPoly]  # polynomial pull-back before the divisor power is removed
    divisor_invariant: bool  # chartwise test: the new divisor is invariant for the strict transform


def _pull_back(X: VectorField, chart: str) -> tuple[MPoly, MPoly, int]:
    """Polynomial pull-back and the divisor equation's index (0 for x, 1 for y)."""
    x, y = MPoly.gens(X.vars)
    P, Q = X.P, X.Q
    if chart == "first":
        Pc, Qc = P.compose([x, x * y]), Q.compose([x, x * y])
        return x * Pc, Qc - y * Pc, 0
    if chart == "second":
        Pc, Qc = P.compose([x * y, y]), Q.compose([x * y, y])
        return Pc - x * Qc, y * Qc, 1
    raise ValueError(f"unknown chart {chart!r}")


def _divide_power(P: MPoly, Q: MPoly, i: int) -> tuple[MPoly, MPoly, int]:
    s = min(P.ord_in(i), Q.ord_in(i))
    e = [0, 0]
    e[i] = s
    mono = MPoly.monomial(tuple(e), P.vars)
    return P / mono, Q / mono, s


def new_divisor(parent: ChartGerm, chart: str, component: int) -> tuple[DivisorComponent, ...]:
    """Divisor through the chart origin after blowing up ``parent`` at its origin."""
    comps = []
    if chart == "first":
        comps.append(DivisorComponent("x", component))
        comps += [DivisorComponent("y", d.component) for d in parent.divisor if d.axis == "y"]
    else:
        comps.append(DivisorComponent("y", component))
        comps += [DivisorComponent("x", d.component) for d in parent.divisor if d.axis == "x"]
    return tuple(sorted(comps, key=lambda d: d.axis))


def blow_up(g: ChartGerm, chart: str, component: int | None = None) -> BlowUp:
    """Strict transform of ``g`` in ``chart`` at the chart origin."""
    X = g.field
    if X.n != 2:
        raise DimensionUnsupported("blow-ups are only implemented in the plane")
    nu = algebraic_multiplicity(X)
    Pb, Qb, i = _pull_back(X, chart)
    P1, Q1, s = _divide_power(Pb, Qb, i)
    divisor_first = P1 if i == 0 else Q1
    invariant = divisor_first.ord_in(i) >= 1 if divisor_first else True
    Y = normalize([P1, Q1], X.vars)
    if component is None:
        component = g.depth + 1
    germ = ChartGerm(g.chart_path + (ChartStep(chart, Fraction(0)),), Y, new_divisor(g, chart, component))
    return BlowUp(germ, nu, s - 1, (Pb, Qb), invariant)


def translate(g: ChartGerm, center) -> ChartGerm:
    """Move a first-chart germ to the divisor point (0, center)."""
    if not center:
        return g
    X = g.field
    x, y = MPoly.gens(X.vars)
    shifted = [c.compose([x, y + center]) for c in X.components]
    Y = normalize(shifted, X.vars)
    last = g.chart_path[-1]
    if last.chart != "first":
        raise ValueError("only first-chart germs are translated along the divisor")
    path = g.chart_path[:-1] + (ChartStep("first", center),)
    divisor = tuple(d for d in g.divisor if d.axis == "x")
    return ChartGerm(path, Y, divisor)


def germ_at(parent: ChartGerm, chart: str, center=Fraction(0), component: int | None = None) -> tuple[ChartGerm, BlowUp]:
    b = blow_up(parent, chart, component)
    if chart == "first" and center:
        return translate(b.germ, center), b
    return b.germ, b


def nu_tilde(X: VectorField) -> int:
    """nu - 1 for nondicritical germs, nu for dicritical ones (tangent-cone test)."""
    nu = algebraic_multiplicity(X)
    return nu if is_dicritical(X) else nu - 1


# --------------------------------------------------------------------------
# singular points on the new divisor


@dataclass(frozen=True)
class DivisorPoint:
    chart: str
    center: object
    conjugates: int  # how many Galois-conjugate points this representative stands for
    minpoly: tuple  # minimal polynomial of the center over the parent's field


def singular_points_on_divisor(g: ChartGerm) -> list[DivisorPoint]:
    """Singular points of the strict transform on the divisor created by blowing up ``g``.

    A point is owned by the first chart unless it is the second chart's origin.
    """
    first = blow_up(g, "first").germ.field
    P0 = _restrict_x0(first.P)
    Q0 = _restrict_x0(first.Q)
    common = upoly.gcd(P0, Q0) if (P0 or Q0) else None
    pts = []
    if common is None:
        raise DimensionUnsupported("strict transform vanishes on the whole divisor")
    if len(common) > 1:
        for r in roots(common):
            pts.append(DivisorPoint("first", r.value, r.conjugates, r.minpoly))
    second = blow_up(g, "second").germ.field
    if not second.P.constant_term() and not second.Q.constant_term():
        pts.append(DivisorPoint("second", Fraction(0), 1, (Fraction(0), Fraction(1))))
    return pts


def _restrict_x0(F: MPoly) -> list:
    out: list = []
    for (a, b), c in F.terms.items():
        if a == 0:
            while len(out) <= b:
                out.append(Fraction(0))
            out[b] = c
    return upoly.trim(out)


# --------------------------------------------------------------------------
# reduced singularities


@dataclass(frozen=True)
class ReducedClass:
    tag: str
    eigen_ratio: object = None  # lambda_1 / lambda_2 when both eigenvalues are nonzero
    weak_direction: tuple | None = None  # kernel direction of a saddle-node

    @property
    def reduced(self) -> bool:
        return self.tag in REDUCED_TAGS

    def to_json(self) -> dict:
        out = {"tag": self.tag}
        if self.eigen_ratio is not None:
            out["eigen_ratio"] = str(self.eigen_ratio)
        if self.weak_direction is not None:
            out["weak_direction"] = [str(c) for c in self.weak_direction]
        return out


def _is_rational_square(q: Fraction) -> bool:
    if q < 0:
        return False
    from math import isqrt

    n, d = q.numerator, q.denominator
    return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d


def ratio_in_positive_rationals(trace, det) -> bool:
    """Whether the eigenvalue ratio lies in Q_+, decided from trace and determinant.

    With s = tr^2/det the ratio L satisfies L + 1/L = s - 2, so L is a positive
    rational exactly when s is rational, s >= 4 and s(s - 4) is a rational square.
    """
    s = to_rational(trace * trace / det)
    if s is None:
        return False
    return s >= 4 and _is_rational_square(s * (s - 4))


def classify(X: VectorField) -> ReducedClass:
    if algebraic_multiplicity(X) == 0:
        return ReducedClass(REGULAR)
    lin = linear_part(X)
    tr, det = lin.trace, lin.det
    if not det:
        if not tr:
            return ReducedClass(DEGENERATE)
        (a, b), (c, d) = lin.matrix
        # kernel of the linear part
        if a or b:
            kernel = (-b, a)
        else:
            kernel = (-d, c)
        return ReducedClass(SADDLE_NODE, None, kernel)
    l1, l2 = lin.spectrum
    ratio = l1 / l2 if l2 else None
    if isinstance(ratio, AlgElem):
        ratio = ratio.simplify()
    tag = RESONANT if ratio_in_positive_rationals(tr, det) else HYPERBOLIC
    return ReducedClass(tag, ratio)


def weak_curve_in_divisor(cls: ReducedClass, divisor: Sequence[DivisorComponent], dicritical_components=()) -> bool:
    """At a saddle-node: is the kernel direction tangent to an invariant divisor component?"""
    if cls.tag != SADDLE_NODE:
        return False
    a, b = cls.weak_direction
    for d in divisor:
        if d.component in dicritical_components:
            continue
        if d.axis == "x" and not a:
            return True
        if d.axis == "y" and not b:
            return True
    return False


# --------------------------------------------------------------------------
# resolution tree


@dataclass
class TreeNode:
    id: int
    parent: int | None
    germ: ChartGerm
    nu: int
    nu_tilde: int
    dicritical: bool
    reduced_class: ReducedClass
    conjugates: int = 1
    chart_dicritical: bool | None = None  # redundant chartwise test, filled when blown up
    children: list = field(default_factory=list)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def label(self) -> str:
        path = "/".join(f"{s.chart}@{s.center}" for s in self.germ.chart_path) or "origin"
        flag = "dicritical" if self.dicritical else "nondicritical"
        conj = f" x{self.conjugates}" if self.conjugates > 1 else ""
        return (
            f"{path}{conj}\nX = {self.germ.field}\nnu={self.nu} nu~={self.nu_tilde} "
            f"{self.reduced_class.tag} {flag}"
        )

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "parent": self.parent,
            "germ": self.germ.to_json(),
            "nu": self.nu,
            "nu_tilde": self.nu_tilde,
            "dicritical": self.dicritical,
            "class": self.reduced_class.to_json(),
            "conjugates": self.conjugates,
            "children": list(self.children),
        }


@dataclass
class ResolutionTree:
    nodes: list[TreeNode]
    second_type: bool
    strictly_nondicritical: bool
    complete: bool = True
    weak_in_divisor: list = field(default_factory=list)  # node ids of offending saddle-nodes

    @property
    def root(self) -> TreeNode:
        return self.nodes[0]

    def leaves(self) -> list[TreeNode]:
        return [n for n in self.nodes if n.is_leaf]

    def to_json(self) -> dict:
        return {
            "complete": self.complete,
            "second_type": self.second_type,
            "strictly_nondicritical": self.strictly_nondicritical,
            "nodes": [n.to_json() for n in self.nodes],
        }

    def dot_nodes(self) -> list[dict]:
        out = []
        for n in self.nodes:
            out.append({"id": n.id, "parent": n.parent, "label": n.label()})
        return out


def _node_for(germ: ChartGerm, id: int, parent: int | None, conjugates: int = 1) -> TreeNode:
    X = germ.field
    nu = algebraic_multiplicity(X)
    dic = is_dicritical(X)
    return TreeNode(
        id=id,
        parent=parent,
        germ=germ,
        nu=nu,
        nu_tilde=nu if dic else nu - 1,
        dicritical=dic,
        reduced_class=classify(X),
        conjugates=conjugates,
    )


def resolve(X: VectorField, max_depth: int = 12) -> ResolutionTree:
    """Blow up non-reduced singular points until every leaf is reduced or regular.

    Raises :class:`DepthExceeded` (carrying the partial tree) when some branch
    of the tree needs more than ``max_depth`` blow-ups.
    """
    nodes = [_node_for(root_germ(X), 0, None)]
    queue = [0]
    complete = True
    while queue:
        nid = queue.pop(0)
        node = nodes[nid]
        if node.reduced_class.reduced:
            continue
        if node.germ.depth >= max_depth:
            complete = False
            continue
        # the component created by this blow-up is identified by the node id
        comp = node.id
        chart_b = blow_up(node.germ, "first", comp)
        node.chart_dicritical = not chart_b.divisor_invariant
        for pt in singular_points_on_divisor(node.germ):
            germ, _ = germ_at(node.germ, pt.chart, pt.center, comp)
            child = _node_for(germ, len(nodes), nid, node.conjugates * pt.conjugates)
            nodes.append(child)
            node.children.append(child.id)
            queue.append(child.id)
    dic_components = {n.id for n in nodes if n.dicritical}
    offenders = [
        n.id for n in nodes if n.is_leaf and weak_curve_in_divisor(n.reduced_class, n.germ.divisor, dic_components)
    ]
    tree = ResolutionTree(
        nodes=nodes,
        second_type=not offenders,
        strictly_nondicritical=not dic_components,
        complete=complete,
        weak_in_divisor=offenders,
    )
    if not complete:
        raise DepthExceeded(f"resolution needs more than {max_depth} blow-ups", partial=tree)
    return tree


# --------------------------------------------------------------------------
# branches and branch towers


@dataclass(frozen=True)
class Branch:
    """A parameterized branch t -> (x(t), y(t)) through the origin.

    ``refine`` (optional) recomputes the same branch to a larger working order;
    ``formal`` marks weak saddle-node separatrices that may diverge.
    """

    x: PuiseuxSeries
    y: PuiseuxSeries
    swapped: bool = False
    formal: bool = False
    refine: Callable[[int], "Branch"] | None = None
    certificate: object = None  # exact equation or None
    label: str = ""

    @property
    def components(self) -> tuple[PuiseuxSeries, PuiseuxSeries]:
        return (self.x, self.y)

    def multiplicity(self) -> int:
        """Least certified valuation of the two components.

        A component with no certified coefficient only bounds the result
        from below by its guaranteed order; that is enough when the other
        component's valuation is smaller.
        """
        known = [c.val() for c in self.components if c.coeffs or c.is_exact]
        m = min(known, default=float("inf"))
        for c in self.components:
            if not c.coeffs and not c.is_exact and c.prec <= m:
                raise PrecisionExhausted("the multiplicity of the branch is not certified")
        if m == float("inf"):
            raise InvalidBranch("constant branch")
        return int(m)

    def guaranteed_order(self):
        return min(self.x.guaranteed_order(), self.y.guaranteed_order())

    def tangent_direction(self) -> tuple:
        m = self.multiplicity()
        return (self.x.coefficient(m), self.y.coefficient(m))

    def __str__(self) -> str:
        return f"x(t) = {self.x}, y(t) = {self.y}"

    def with_refine(self, refine) -> "Branch":
        return Branch(self.x, self.y, self.swapped, self.formal, refine, self.certificate, self.label)

    def to_json(self) -> dict:
        out = {"x": str(self.x), "y": str(self.y), "multiplicity": self.multiplicity()}
        if self.formal:
            out["formal"] = True
        if self.swapped:
            out["swapped"] = True
        if self.label:
            out["label"] = self.label
        return out


def branch_from_polys(xp: MPoly, yp: MPoly, **kw) -> Branch:
    """Exact branch from two polynomials in one parameter."""
    return Branch(_poly_to_series(xp), _poly_to_series(yp), **kw)


def _poly_to_series(p: MPoly) -> PuiseuxSeries:
    return PuiseuxSeries({e[0]: c for e, c in p.terms.items()}, 1)


def branch_blow_up(V: Branch) -> tuple[str, object, Branch]:
    """Chart, center and strict transform of a branch under the blow-up of the origin."""
    x, y = V.x, V.y
    m = V.multiplicity()
    if x.coeffs and x.val() == m:
        q = y / x
        c = q.coefficient(0)
        nb = Branch(x, q - c, V.swapped, V.formal, None, None, V.label)
        return "first", c, nb
    q = x / y
    return "second", Fraction(0), Branch(q, y, V.swapped, V.formal, None, None, V.label)


@dataclass
class TowerLevel:
    level: int
    chart_path: tuple
    germ: ChartGerm
    branch: Branch
    m: int
    nu: int
    nu_tilde: int
    dicritical: bool
    reduced_class: ReducedClass
    index: int | None = None

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "point": [s.to_json() for s in self.chart_path],
            "field": [str(c) for c in self.germ.field.components],
            "branch": {"x": str(self.branch.x), "y": str(self.branch.y)},
            "m": self.m,
            "nu": self.nu,
            "nu_tilde": self.nu_tilde,
            "dicritical": self.dicritical,
            "class": self.reduced_class.tag,
            "index": self.index,
        }


@dataclass
class BranchTower:
    levels: list[TowerLevel]

    def to_json(self) -> dict:
        return {"levels": [lv.to_json() for lv in self.levels]}


def branch_tower(X: VectorField, V: Branch, k: int, index_fn=None) -> BranchTower:
    """Levels 0..k of (germ, branch transform, point) along the branch.

    ``index_fn(field, branch)`` computes the index at each level; by default
    the cofactor index of :mod:`folkit.invariants` is used.
    """
    if index_fn is None:
        from .invariants import index_value as index_fn
    germ = root_germ(X)
    branch = V
    levels = []
    for j in range(k + 1):
        F = germ.field
        nu = algebraic_multiplicity(F)
        dic = is_dicritical(F)
        m = branch.multiplicity()
        levels.append(
            TowerLevel(
                level=j,
                chart_path=germ.chart_path,
                germ=germ,
                branch=branch,
                m=m,
                nu=nu,
                nu_tilde=nu if dic else nu - 1,
                dicritical=dic,
                reduced_class=classify(F),
                index=index_fn(F, branch),
            )
        )
        if j == k:
            break
        chart, c, nb = branch_blow_up(branch)
        germ, _ = germ_at(germ, chart, c, component=j + 1)
        branch = nb
    return BranchTower(levels)
