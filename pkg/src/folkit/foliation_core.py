"""Germ-level invariants of a polynomial vector field at the origin.

A germ is given by the components ``(f_1, ..., f_n)`` of
``X = f_1 d/dz_1 + ... + f_n d/dz_n``. After dividing out the gcd of the
components we compute the algebraic multiplicity, the initial part, the
linear part with its spectrum, the tangent-cone form that decides
dicriticality in the plane, and the Milnor number (local intersection number
of the two components) by Fulton's reduction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import AllZero, DimensionUnsupported
from .exact_arith import AlgElem, MPoly, mpoly_gcd, roots, upoly
from .exact_arith.field import determinant


@dataclass(frozen=True)
class VectorField:
    vars: tuple[str, ...]
    components: tuple[MPoly, ...]
    removed_gcd: MPoly

    @property
    def n(self) -> int:
        return len(self.vars)

    @property
    def P(self) -> MPoly:
        return self.components[0]

    @property
    def Q(self) -> MPoly:
        return self.components[1]

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.components) + ")"

    def to_json(self) -> dict:
        return {
            "variables": list(self.vars),
            "components": [str(c) for c in self.components],
            "removed_gcd": str(self.removed_gcd),
        }


def normalize(components: Sequence[MPoly], vars: Sequence[str] | None = None) -> VectorField:
    """Divide the components by their gcd (monic in graded-lex order)."""
    comps = list(components)
    if not comps:
        raise AllZero("a vector field needs at least one component")
    if vars is None:
        vars = comps[0].vars
    vars = tuple(vars)
    if all(not c for c in comps):
        raise AllZero("all components are zero")
    g = MPoly(vars)
    for c in comps:
        g = mpoly_gcd(g, c)
    if not g.is_constant():
        comps = [c / g for c in comps]
    else:
        g = MPoly.one(vars)
    return VectorField(vars, tuple(comps), g)


def vector_field(*components: MPoly) -> VectorField:
    return normalize(components)


def algebraic_multiplicity(X: VectorField) -> int:
    """min of the component orders; 0 exactly when the germ is regular."""
    return min(c.ord() for c in X.components)


def initial_part(X: VectorField) -> tuple[MPoly, ...]:
    nu = algebraic_multiplicity(X)
    return tuple(c.homogeneous_part(nu) for c in X.components)


@dataclass(frozen=True)
class LinearPart:
    matrix: tuple[tuple, ...]
    charpoly: tuple  # coefficients low -> high of det(s*I - A)
    spectrum: tuple  # eigenvalues with multiplicity

    @property
    def trace(self):
        return sum((self.matrix[i][i] for i in range(len(self.matrix))), Fraction(0))

    @property
    def det(self):
        return determinant(self.matrix)

    def to_json(self) -> dict:
        return {
            "matrix": [list(r) for r in self.matrix],
            "charpoly": str(MPoly.from_univariate(self.charpoly, 0, ("s",))),
            "spectrum": [str(v) for v in self.spectrum],
        }


def _charpoly(A) -> list:
    """det(s*I - A) by interpolation at n+1 integer points."""
    n = len(A)
    xs, ys = [], []
    for k in range(n + 1):
        M = [[(Fraction(k) if i == j else Fraction(0)) - A[i][j] for j in range(n)] for i in range(n)]
        xs.append(Fraction(k))
        ys.append(determinant(M))
    return upoly.interpolate(xs, ys)


def _split(poly: list) -> list:
    """All roots with multiplicity, adjoining generators until the polynomial splits."""
    out = []
    for r in roots(poly):
        out.extend([r.value] * r.multiplicity)
        if r.conjugates > 1:
            rest, rem = upoly.divmod_(list(r.minpoly), [-r.value, Fraction(1)])
            assert not upoly.trim(rem)
            for v in _split(rest):
                out.extend([v] * r.multiplicity)
    return out


def _eig_key(v):
    if isinstance(v, AlgElem):
        r = v.to_rational()
        if r is None:
            return (1, v.field.level, str(v))
        v = r
    return (0, Fraction(v), "")


def linear_part(X: VectorField) -> LinearPart:
    n = X.n
    A = []
    for comp in X.components:
        row = []
        for j in range(n):
            e = [0] * n
            e[j] = 1
            row.append(comp.coeff(tuple(e)))
        A.append(tuple(row))
    cp = _charpoly(A)
    spec = sorted(_split(cp), key=_eig_key)
    return LinearPart(tuple(A), tuple(cp), tuple(spec))


def spectrum_nonzero(X: VectorField) -> bool:
    return any(bool(v) for v in linear_part(X).spectrum)


def saddle_node(X: VectorField) -> bool:
    spec = linear_part(X).spectrum
    return any(not v for v in spec) and any(bool(v) for v in spec)


def _require_plane(X: VectorField, what: str):
    if X.n != 2:
        raise DimensionUnsupported(f"{what} is only implemented in dimension 2 (got {X.n})")


def tangent_cone(X: VectorField) -> MPoly:
    """T = y*in(P) - x*in(Q), homogeneous of degree nu+1 or zero."""
    _require_plane(X, "the tangent-cone form")
    x, y = MPoly.gens(X.vars)
    inP, inQ = initial_part(X)
    return y * inP - x * inQ


def is_dicritical(X: VectorField) -> bool:
    """Dicritical iff the tangent-cone form vanishes identically (singular germs only)."""
    _require_plane(X, "the dicritical test")
    if algebraic_multiplicity(X) == 0:
        return False
    return not tangent_cone(X)


def _restrict_y0(F: MPoly) -> list:
    """Coefficients of F(x, 0) as a univariate list."""
    out: list = []
    for (a, b), c in F.terms.items():
        if b == 0:
            while len(out) <= a:
                out.append(Fraction(0))
            out[a] = c
    return upoly.trim(out)


def _ord_x(coeffs: list) -> int:
    for k, c in enumerate(coeffs):
        if c:
            return k
    return math.inf  # pragma: no cover - callers exclude the zero polynomial


def intersection_number(F: MPoly, G: MPoly):
    """Local intersection number i_0(F, G) at the origin of the plane (Fulton's algorithm).

    Returns ``math.inf`` when F and G share a component through the origin.
    """
    if F.vars != G.vars or len(F.vars) != 2:
        raise DimensionUnsupported("intersection numbers need two plane curves")
    if not F or not G:
        return math.inf
    g = mpoly_gcd(F, G)
    if not g.is_constant():
        if not g.constant_term():
            return math.inf
        F, G = F / g, G / g
    x, y = MPoly.gens(F.vars)
    total = 0
    # iterative form of the recursion i(yF', G) = i(y, G) + i(F', G)
    while True:
        if F.constant_term() or G.constant_term():
            return total
        f0, g0 = _restrict_y0(F), _restrict_y0(G)
        if not f0 and not g0:  # pragma: no cover - excluded by the gcd step
            return math.inf
        if f0 and g0:
            if len(f0) > len(g0):
                F, G, f0, g0 = G, F, g0, f0
            # lower the degree of G(x, 0) using F
            shift = len(g0) - len(f0)
            c = g0[-1] * upoly._inverse(f0[-1])
            G = G - F * MPoly.monomial((shift, 0), F.vars, c)
            continue
        if f0:
            F, G, f0, g0 = G, F, g0, f0
        # now F(x, 0) == 0, i.e. y divides F
        total += _ord_x(g0)
        F = F / y


def milnor_number(X: VectorField):
    _require_plane(X, "the Milnor number")
    return intersection_number(X.P, X.Q)


@dataclass(frozen=True)
class GermSummary:
    nu: int
    initial_part: tuple
    linear: LinearPart
    spectrum_nonzero: bool
    saddle_node: bool
    dicritical: bool | None
    milnor: object
    tangent_cone: MPoly | None

    def to_json(self) -> dict:
        return {
            "nu": self.nu,
            "initial_part": [str(c) for c in self.initial_part],
            "linear_part": self.linear.to_json(),
            "spectrum_nonzero": self.spectrum_nonzero,
            "saddle_node": self.saddle_node,
            "dicritical": self.dicritical,
            "tangent_cone": None if self.tangent_cone is None else str(self.tangent_cone),
            "milnor": self.milnor,
        }


def summarize(X: VectorField) -> GermSummary:
    lin = linear_part(X)
    spec = lin.spectrum
    nz = any(bool(v) for v in spec)
    plane = X.n == 2
    return GermSummary(
        nu=algebraic_multiplicity(X),
        initial_part=initial_part(X),
        linear=lin,
        spectrum_nonzero=nz,
        saddle_node=nz and any(not v for v in spec),
        dicritical=is_dicritical(X) if plane else None,
        milnor=milnor_number(X) if plane else None,
        tangent_cone=tangent_cone(X) if plane else None,
    )
