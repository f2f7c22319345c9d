"""Plane branches: Newton-Puiseux expansion, invariance tests and separatrix solving.

Branches are :class:`~folkit.blowup_resolution.Branch` values, i.e. pairs of
truncated series ``t -> (x(t), y(t))``.

* :func:`newton_puiseux` follows Duval's rational variant of the Newton
  polygon algorithm: for an edge with slope ``p/q`` and a root ``xi`` of the
  edge polynomial it substitutes ``x = xi^v T^q, y = T^p (xi^u + Y)`` with
  ``u q - v p = 1``, so no roots of unity are ever adjoined. One branch is
  returned per class of Galois-conjugate branches.
* :func:`solve_separatrices` follows the resolution tree: at a reduced point
  every separatrix not contained in the divisor is a formal graph along an
  eigendirection whose coefficients come from a linear recurrence; results
  are pushed back down through the charts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .blowup_resolution import (
    SADDLE_NODE,
    Branch,
    ChartGerm,
    DivisorComponent,
    blow_up,
    classify,
    germ_at,
    root_germ,
    singular_points_on_divisor,
)
from .errors import (
    DicriticalInfinitelyMany,
    IncompatibleFields,
    InvalidBranch,
    NonGenericDirection,
    NotSquarefree,
    PrecisionExhausted,
)
from .exact_arith import AlgElem, MPoly, NumberField, PuiseuxSeries, factor_coeffs, mpoly_gcd, roots, upoly
from .exact_arith.field import QQ, field_of_all
from .exact_arith.series import working_order
from .foliation_core import VectorField, algebraic_multiplicity, is_dicritical, linear_part

T = PuiseuxSeries.t()


def default_target(order: int | None = None) -> int:
    """Guaranteed order (t-units) of solver output: twice the working order plus slack."""
    n = working_order.get() if order is None else order
    return 2 * n + 2


# --------------------------------------------------------------------------
# helpers on branches


def branch_multiplicity(V: Branch) -> int:
    return V.multiplicity()


def tangent_cone(V: Branch, vars=("x", "y")) -> MPoly:
    """The tangent line b*x - a*y of a branch with tangent direction (a : b)."""
    a, b = V.tangent_direction()
    x, y = MPoly.gens(vars)
    line = x * b - y * a
    return line.monic()


def substitute(f: MPoly, V: Branch) -> PuiseuxSeries:
    return f(V.x, V.y, zero=PuiseuxSeries({}, V.x.e))


def invariance_residue(X: VectorField, V: Branch) -> PuiseuxSeries:
    """P(alpha) y' - Q(alpha) x' along the branch."""
    Pa = substitute(X.P, V)
    Qa = substitute(X.Q, V)
    return Pa * V.y.deriv() - Qa * V.x.deriv()


@dataclass(frozen=True)
class InvarianceEvidence:
    invariant: bool
    method: str  # "divisibility", "exact_residue" or "residue_order"
    certified_order: object  # order through which the residue is known to vanish
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "invariant": self.invariant,
            "method": self.method,
            "certified_order": self.certified_order,
            "detail": self.detail,
        }


def invariance_evidence(X: VectorField, V: Branch, order: int | None = None) -> InvarianceEvidence:
    N = working_order.get() if order is None else order
    f = V.certificate
    if isinstance(f, MPoly) and f.vars == X.vars:
        # X(f) = P f_x + Q f_y must be a multiple of f
        Xf = X.P * f.diff(0) + X.Q * f.diff(1)
        q, r = Xf.divmod(f)
        if not r and not substitute(f, V).coeffs:
            return InvarianceEvidence(True, "divisibility", math.inf, f"X(f) = ({q})*f")
    R = invariance_residue(X, V)
    if R.is_exact:
        return InvarianceEvidence(not R.coeffs, "exact_residue", math.inf if not R.coeffs else R.ord())
    if R.coeffs:
        return InvarianceEvidence(False, "residue_order", R.ord(), f"residue starts at order {R.ord()}")
    got = R.guaranteed_order()
    if got < 2 * N:
        raise PrecisionExhausted(
            f"residue vanishes only through order {got}, need {2 * N}"
        )
    return InvarianceEvidence(True, "residue_order", got)


def separatrix_check(X: VectorField, V: Branch, order: int | None = None) -> bool:
    return invariance_evidence(X, V, order).invariant


def _exactify(V: Branch, residue) -> Branch:
    """Drop the truncation of a branch whose components look polynomial, if that is exact.

    ``residue(B)`` must vanish exactly for the exact candidate ``B``; the
    shape test is only a trigger, the certificate is the exact zero.
    """
    comps = (V.x, V.y)
    if all(c.is_exact for c in comps):
        return V
    for c in comps:
        if not c.is_exact and c.coeffs and 2 * max(c.coeffs) >= c.prec:
            return V
    if sum(len(c.coeffs) for c in comps) > 16:
        return V
    E = Branch(
        PuiseuxSeries(V.x.coeffs, V.x.e), PuiseuxSeries(V.y.coeffs, V.y.e),
        V.swapped, V.formal, V.refine, V.certificate, V.label,
    )
    R = residue(E)
    if R.is_exact and not R.coeffs:
        return E
    return V


# --------------------------------------------------------------------------
# power-series solving of implicit equations and ODEs


def _solve_implicit(G: MPoly, M: int) -> PuiseuxSeries:
    """Y(X) with G(X, Y(X)) = 0, Y(0) = 0, assuming dG/dY(0,0) != 0; known mod X^M."""
    GY = G.diff(1)
    Y = PuiseuxSeries({}, 1, 1)  # Y = O(X)
    prec = 1
    while prec < M:
        prec = min(2 * prec, M)
        Yt = PuiseuxSeries(Y.coeffs, 1, prec)
        Xs = PuiseuxSeries({1: Fraction(1)}, 1)
        num = G(Xs, Yt, zero=PuiseuxSeries({}, 1))
        den = GY(Xs, Yt, zero=PuiseuxSeries({}, 1))
        corr = num / den
        Y = (Yt - corr).truncate(prec)
    return Y


def _solve_graph(P: MPoly, Q: MPoly, c, M: int) -> PuiseuxSeries:
    """phi with phi(0) = 0, phi'(0) = c and Q(t, phi) = phi' P(t, phi), known mod t^M.

    (1, c) must be an eigendirection of the linear part with eigenvalue mu;
    the coefficient of t^n is fixed by dividing by n*mu - lambda', lambda' the
    other eigenvalue, which is nonzero at reduced points.
    """
    p1, p2 = P.coeff((1, 0)), P.coeff((0, 1))
    q2 = Q.coeff((0, 1))
    mu = p1 + p2 * c
    other = p1 + q2 - mu
    coeffs = {1: c} if c else {}
    zero = PuiseuxSeries({}, 1)
    for n in range(2, M):
        phi = PuiseuxSeries(coeffs, 1, n + 1)
        Pp = P(T, phi, zero=zero)
        Qp = Q(T, phi, zero=zero)
        R = Qp - phi.deriv() * Pp
        r = R.coefficient(n)
        if r:
            d = n * mu - other
            if not d:
                raise ArithmeticError("resonant eigendirection: the graph is not determined")
            coeffs[n] = r / d if not isinstance(d, int) else r * Fraction(1, d)
    return PuiseuxSeries(coeffs, 1, M)


def _solve_leaf(P: MPoly, Q: MPoly, M: int) -> PuiseuxSeries:
    """Leaf y = psi(x), psi(0) = 0, of a field with P(0,0) != 0 (solves psi' = Q/P)."""
    zero = PuiseuxSeries({}, 1)
    psi = PuiseuxSeries({}, 1, 1)
    for n in range(1, M):
        cur = PuiseuxSeries(psi.coeffs, 1, n)
        slope = Q(T, cur, zero=zero) / P(T, cur, zero=zero)
        # psi' = slope; coefficient of t^n in psi is slope_{n-1} / n
        c = slope.coefficient(n - 1)
        coeffs = dict(cur.coeffs)
        if c:
            coeffs[n] = c / n if isinstance(c, AlgElem) else Fraction(c) / n
        psi = PuiseuxSeries(coeffs, 1, n + 1)
    return PuiseuxSeries(psi.coeffs, 1, M)


# --------------------------------------------------------------------------
# Newton-Puiseux


def _newton_edges(F: MPoly) -> list[tuple[int, int, list[tuple[int, int]]]]:
    """Lower-left edges of the Newton polygon, as (p, q, points on the edge).

    Exponents are (i, j) = (power of x, power of y); an edge along which
    i*q + j*p is constant corresponds to branches y ~ x^(p/q).
    """
    pts: dict[int, int] = {}
    for (i, j) in F.terms:
        if j not in pts or i < pts[j]:
            pts[j] = i
    cand = sorted((i, j) for j, i in pts.items())  # by increasing i
    # start at the point with i minimal (largest j among ties is irrelevant: take smallest j)
    start = min(cand, key=lambda ij: (ij[0], ij[1]))
    jmin = min(j for _, j in cand)
    hull = [start]
    cur = start
    edges = []
    while cur[1] > jmin:
        best = None
        for (i, j) in cand:
            if j >= cur[1]:
                continue
            slope = Fraction(i - cur[0], cur[1] - j)  # = p/q
            if best is None or slope < best[0] or (slope == best[0] and j < best[1][1]):
                best = (slope, (i, j))
        slope, nxt = best
        p, q = slope.numerator, slope.denominator
        on_edge = [(i, j) for (i, j) in F.terms if i * q + j * p == cur[0] * q + cur[1] * p]
        edges.append((p, q, on_edge))
        cur = nxt
        hull.append(cur)
    return edges


def _bezout(p: int, q: int) -> tuple[int, int]:
    """Non-negative (u, v) with u*q - v*p = 1, for coprime p, q >= 1."""
    for u in range(1, p + 1):
        if (u * q - 1) % p == 0:
            return u, (u * q - 1) // p
    raise ArithmeticError("no Bezout pair")


def _power(x, n: int):
    return x ** n if n else Fraction(1)


@dataclass(frozen=True)
class _RawBranch:
    x: PuiseuxSeries
    y: PuiseuxSeries
    conjugates: int


def _rnp(F: MPoly, target: int, top: bool, min_slope: Fraction | None, strict: bool) -> list[_RawBranch]:
    """Branches (X(T), Y(T)) of F through the origin with Y -> 0 (X not dividing F)."""
    out: list[_RawBranch] = []
    vars = F.vars
    X, Y = MPoly.gens(vars)
    # Y = 0 is a branch if Y divides F
    if F.ord_in(1) >= 1:
        if F.ord_in(1) > 1:
            raise NotSquarefree("repeated factor y")
        out.append(_RawBranch(PuiseuxSeries({1: Fraction(1)}), PuiseuxSeries({}), 1))
        F = F / Y
    if F.constant_term():
        return out
    for p, q, pts in _newton_edges(F):
        slope = Fraction(p, q)
        if min_slope is not None and (slope < min_slope or (strict and slope == min_slope)):
            continue
        j0 = min(j for _, j in pts)
        i0 = max(i for i, _ in pts)
        phi = [Fraction(0)] * ((max(j for _, j in pts) - j0) // q + 1)
        for (i, j) in pts:
            phi[(j - j0) // q] = F.terms[(i, j)]
        phi = upoly.trim(phi)
        field = field_of_all(phi)
        for fac, mult in factor_coeffs(phi, field):
            if len(fac) == 2 and not fac[0]:
                continue  # the factor z
            d = len(fac) - 1
            if d == 1:
                xi = -fac[0]
                if isinstance(xi, AlgElem):
                    xi = xi.simplify()
            else:
                xi = NumberField.extend(field, fac, check=False).gen
            u, v = _bezout(p, q)
            xs = MPoly.monomial((q, 0), vars, _power(xi, v))
            ys = MPoly.monomial((p, 0), vars) * (Y + _power(xi, u))
            G = F.compose([xs, ys])
            ell = G.ord_in(0)
            G = G / MPoly.monomial((ell, 0), vars)
            if mult == 1:
                Ys = _solve_implicit(G, target)
                sub = [_RawBranch(PuiseuxSeries({1: Fraction(1)}), Ys, 1)]
            else:
                sub = _rnp(G, target, False, None, False)
            for b in sub:
                xb = b.x ** q * _power(xi, v)
                yb = b.x ** p * (b.y + _power(xi, u))
                out.append(_RawBranch(xb, yb, b.conjugates * d))
    return out


def newton_puiseux(f: MPoly, order: int | None = None) -> list[Branch]:
    """One branch per Galois class of local branches of f = 0 at the origin."""
    if len(f.vars) != 2:
        raise ValueError("newton_puiseux needs a polynomial in two variables")
    if f.constant_term():
        raise ValueError("the curve does not pass through the origin")
    if not f:
        raise NotSquarefree("the zero polynomial")
    g = mpoly_gcd(f, f.diff(0))
    g = mpoly_gcd(g, f.diff(1))
    if not g.is_constant() and not g.constant_term():
        raise NotSquarefree(f"{f} has the repeated factor {g}")
    target = default_target(order)
    vars = f.vars
    x, y = MPoly.gens(vars)
    branches: list[Branch] = []
    F = f
    if F.ord_in(0) >= 1:
        branches.append(_mk_branch(PuiseuxSeries({}), PuiseuxSeries({1: Fraction(1)}), 1, f, False))
        F = F / x
    if F.ord_in(1) >= 1:
        branches.append(_mk_branch(PuiseuxSeries({1: Fraction(1)}), PuiseuxSeries({}), 1, f, False))
        F = F / y
    if F.constant_term():
        return branches
    # branches not tangent to {x = 0}: edges with slope >= 1
    for b in _rnp(F, target, True, Fraction(1), False):
        branches.append(_mk_branch(b.x, b.y, b.conjugates, f, False))
    # branches tangent to {x = 0}: swap the axes and take slopes > 1
    Fs = F.compose([y, x])
    for b in _rnp(Fs, target, True, Fraction(1), True):
        branches.append(_mk_branch(b.y, b.x, b.conjugates, f, True))
    return branches


def _mk_branch(xs, ys, conj, f, swapped) -> Branch:
    V = Branch(xs, ys, swapped=swapped, certificate=f, label=f"conjugates={conj}" if conj > 1 else "")
    return _exactify(V, lambda B: substitute(f, B))


def branch_conjugates(V: Branch) -> int:
    if V.label.startswith("conjugates="):
        return int(V.label.split("=")[1])
    return 1


# --------------------------------------------------------------------------
# separatrices of a vector field


@dataclass(frozen=True)
class _Found:
    branch: Branch
    conjugates: int


def _eigendirections(F: VectorField) -> list[tuple[tuple, object, int]]:
    """Eigendirections (a, b) of the linear part with eigenvalue and conjugate count."""
    P, Q = F.P, F.Q
    p1, p2 = P.coeff((1, 0)), P.coeff((0, 1))
    q1, q2 = Q.coeff((1, 0)), Q.coeff((0, 1))
    out = []
    # directions (1, c): p2 c^2 + (p1 - q2) c - q1 = 0
    poly = upoly.trim([-q1, p1 - q2, p2])
    if poly:
        for r in roots(poly):
            c = r.value
            out.append(((Fraction(1), c), p1 + p2 * c, r.conjugates))
    if not p2:
        out.append(((Fraction(0), Fraction(1)), q2, 1))
    return out


def _tangent_to_divisor(direction, divisor: Sequence[DivisorComponent], invariant) -> bool:
    a, b = direction
    for d in divisor:
        if d.component not in invariant:
            continue
        if d.axis == "x" and not a:
            return True
        if d.axis == "y" and not b:
            return True
    return False


def _swap(F: VectorField) -> VectorField:
    x, y = MPoly.gens(F.vars)
    return VectorField(F.vars, (F.Q.compose([y, x]), F.P.compose([y, x])), F.removed_gcd)


def _solve_at(germ: ChartGerm, target: int, invariant_components: set, dicritical: list, depth: int, max_depth: int) -> list[_Found]:
    F = germ.field
    found: list[_Found] = []
    nu = algebraic_multiplicity(F)
    if nu == 0:
        return found
    cls = classify(F)
    if cls.reduced:
        for (a, b), mu, conj in _eigendirections(F):
            if _tangent_to_divisor((a, b), germ.divisor, invariant_components):
                continue
            formal = cls.tag == SADDLE_NODE and not mu
            if a:
                phi = _solve_graph(F.P, F.Q, b, target)
                br = Branch(PuiseuxSeries({1: Fraction(1)}), phi, formal=formal)
            else:
                G = _swap(F)
                phi = _solve_graph(G.P, G.Q, Fraction(0), target)
                br = Branch(phi, PuiseuxSeries({1: Fraction(1)}), swapped=True, formal=formal)
            found.append(_Found(br, conj))
        return found
    if depth >= max_depth:
        from .errors import DepthExceeded

        raise DepthExceeded(f"separatrix search needs more than {max_depth} blow-ups")
    comp = depth + 1  # component ids only need to be unique along one path of the tree
    if is_dicritical(F):
        dicritical.append(germ.chart_path)
        sub_invariant = set(invariant_components)
    else:
        sub_invariant = set(invariant_components) | {comp}
    for pt in singular_points_on_divisor(germ):
        child, _ = germ_at(germ, pt.chart, pt.center, component=comp)
        for fnd in _solve_at(child, target, sub_invariant, dicritical, depth + 1, max_depth):
            found.append(_Found(push_down(fnd.branch, pt.chart, pt.center), fnd.conjugates * pt.conjugates))
    return found


def push_down(V: Branch, chart: str, center) -> Branch:
    """Image of a chart branch under the blow-up map (after undoing the translation)."""
    if chart == "first":
        y = V.y + center if center else V.y
        return Branch(V.x, V.x * y, V.swapped, V.formal, None, None, V.label)
    return Branch(V.x * V.y, V.y, V.swapped, V.formal, None, None, V.label)


def _root_components(germ: ChartGerm) -> set:
    return {d.component for d in germ.divisor}


def solve_separatrices(
    X: VectorField, order: int | None = None, *, isolated_only: bool = False, max_depth: int = 12
) -> list[Branch]:
    """Formal separatrices of X at the origin, one per Galois class.

    Raises :class:`DicriticalInfinitelyMany` (with the separatrices outside
    the dicritical families attached) when some point of the resolution is
    dicritical, unless ``isolated_only`` is set.
    """
    target = default_target(order)
    germ = root_germ(X)
    dicritical: list = []
    if algebraic_multiplicity(X) == 0:
        # a regular germ has exactly one separatrix: the leaf through the origin
        if X.P.constant_term():
            psi = _solve_leaf(X.P, X.Q, target)
            found = [_Found(Branch(PuiseuxSeries({1: Fraction(1)}), psi), 1)]
        else:
            G = _swap(X)
            psi = _solve_leaf(G.P, G.Q, target)
            found = [_Found(Branch(psi, PuiseuxSeries({1: Fraction(1)}), swapped=True), 1)]
    else:
        found = _solve_at(germ, target, set(), dicritical, 0, max_depth)
    out = []
    for k, fnd in enumerate(found):
        label = f"conjugates={fnd.conjugates}" if fnd.conjugates > 1 else ""
        b = Branch(fnd.branch.x, fnd.branch.y, fnd.branch.swapped, fnd.branch.formal, None, None, label)
        b = _exactify(b, lambda B: invariance_residue(X, B))
        out.append(b.with_refine(_refiner(X, k, isolated_only, max_depth)))
    if dicritical and not isolated_only:
        raise DicriticalInfinitelyMany(
            f"the germ has dicritical points in its resolution ({len(dicritical)} found); "
            "separatrices come in families",
            isolated=out,
        )
    return out


def _refiner(X: VectorField, k: int, isolated_only: bool, max_depth: int):
    def refine(order: int) -> Branch:
        return solve_separatrices(X, order, isolated_only=True, max_depth=max_depth)[k]

    return refine


def sample_dicritical_leaf(X: VectorField, direction: Sequence, order: int | None = None) -> Branch:
    """The smooth separatrix tangent to ``direction`` of a germ dicritical at the origin."""
    if not is_dicritical(X):
        raise NonGenericDirection("the germ is not dicritical at the origin")
    target = default_target(order)
    a, b = (Fraction(v) if not isinstance(v, AlgElem) else v for v in direction)
    if not a and not b:
        raise NonGenericDirection("the zero vector is not a direction")
    germ = root_germ(X)
    if a:
        c = b / a
        child, _ = germ_at(germ, "first", c)
        F = child.field
        if algebraic_multiplicity(F) == 0 and F.P.constant_term():
            psi = _solve_leaf(F.P, F.Q, target)
            br = Branch(PuiseuxSeries({1: Fraction(1)}), psi)
            out = push_down(br, "first", c)
        else:
            raise NonGenericDirection(f"direction ({a}:{b}) meets a singular or tangency point")
    else:
        child, _ = germ_at(germ, "second", Fraction(0))
        F = child.field
        if algebraic_multiplicity(F) == 0 and F.Q.constant_term():
            G = _swap(F)
            psi = _solve_leaf(G.P, G.Q, target)
            br = Branch(psi, PuiseuxSeries({1: Fraction(1)}), swapped=True)
            out = push_down(br, "second", Fraction(0))
        else:
            raise NonGenericDirection(f"direction ({a}:{b}) meets a singular or tangency point")

    def refine(n: int) -> Branch:
        return sample_dicritical_leaf(X, direction, n)

    return _exactify(out, lambda B: invariance_residue(X, B)).with_refine(refine)


# --------------------------------------------------------------------------
# comparing branches


def _det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = None
    for j in range(n):
        if not rows[0][j]:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else PuiseuxSeries({})


def _puiseux_form(V: Branch) -> tuple[int, object, PuiseuxSeries, bool]:
    """(k, c, phi, swapped) with the branch equal to {x = c t^k, y = phi(t)} (or axes swapped)."""
    xs, ys = V.x, V.y
    swapped = False
    if not (len(xs.coeffs) == 1 and xs.is_exact):
        if len(ys.coeffs) == 1 and ys.is_exact:
            xs, ys, swapped = ys, xs, True
        else:
            raise InvalidBranch("neither component is a monomial in t")
    (k, c), = xs.coeffs.items()
    return k, c, ys, swapped


def branch_contact(alpha: Branch, beta: Branch):
    """Order (in the parameter of beta) of Res_t(c t^k - x_beta(s), y_beta(s) - phi_alpha(t)).

    ``inf`` (exact zero) or an order beyond the guaranteed precision means
    beta lies on the branch of alpha as far as the data can tell.
    """
    k, c, phi, swapped = _puiseux_form(alpha)
    bx, by = (beta.y, beta.x) if swapped else (beta.x, beta.y)
    # multiplication by B(t) = by - phi(t) on K((s))[t]/(c t^k - bx)
    Xc = bx / c
    rows = []
    items = phi.items()
    for r in range(k):
        row = []
        for rho in range(k):
            # sum of a_i * Xc^((i + r) // k) over i with (i + r) % k == rho, by Horner
            poly: dict[int, object] = {}
            for i, a in items:
                if (i + r) % k == rho:
                    poly[(i + r) // k] = a
            acc = PuiseuxSeries({}, 1)
            for deg in range(max(poly, default=-1), -1, -1):
                acc = acc * Xc + poly.get(deg, 0)
            entry = -acc
            if rho == r:
                entry = entry + by
            row.append(entry)
        rows.append(row)
    # rows[r] represents t^r * B reduced; determinant of the transpose equals the resultant up to units
    D = _det(rows)
    return D


def _embeddings(src, dst) -> list:
    """Maps sending coefficients of field ``src`` into ``dst`` (all embeddings over Q)."""
    if src is QQ:
        return [lambda c: c]
    if dst.contains(src):
        maps = [lambda c: c]
        if src.level == 1 and src.degree == 2:
            # also the nontrivial automorphism a -> trace - a
            tr = -src.minpoly[1]
            maps.append(lambda c, tr=tr, s=src: _eval_in(c, tr - s.gen, s))
        return maps
    if src.level != 1:
        return []
    try:
        facs = factor_coeffs(list(src.minpoly), dst)
    except IncompatibleFields:
        return []
    out = []
    for fac, _ in facs:
        if len(fac) == 2:
            r = -fac[0]
            out.append(lambda c, r=r, s=src: _eval_in(c, r, s))
    return out


def _eval_in(c, r, src):
    if isinstance(c, AlgElem) and c.field is src:
        acc = 0
        for co in reversed(c.coeffs):
            acc = acc * r + co
        return acc
    return c


def _map_branch(V: Branch, fn) -> Branch:
    return Branch(V.x.map_coeffs(fn), V.y.map_coeffs(fn), V.swapped, V.formal, None, V.certificate, V.label)


def same_branch(alpha: Branch, beta: Branch, order: int | None = None) -> bool:
    """Whether two parameterizations describe the same branch up to Galois conjugation.

    One of the two must have a monomial component (Puiseux form). Both are
    truncated to twice the working order and the contact resultant must vanish
    through at least the working order.
    """
    N = working_order.get() if order is None else order
    if alpha.multiplicity() != beta.multiplicity():
        return False
    try:
        _puiseux_form(alpha)
    except InvalidBranch:
        alpha, beta = beta, alpha
        _puiseux_form(alpha)
    alpha = _truncated(alpha, 2 * N)
    beta = _truncated(beta, 2 * N)
    fa = _branch_field(alpha)
    fb = _branch_field(beta)
    for emb in _embeddings(fb, fa):
        try:
            D = branch_contact(alpha, _map_branch(beta, emb))
        except IncompatibleFields:
            continue
        if D.coeffs:
            continue
        if D.is_exact or D.guaranteed_order() >= N:
            return True
    return False


def _truncated(V: Branch, n: int) -> Branch:
    return Branch(V.x.truncate_t(n) if len(V.x.coeffs) > 1 or not V.x.is_exact else V.x,
                  V.y.truncate_t(n) if len(V.y.coeffs) > 1 or not V.y.is_exact else V.y,
                  V.swapped, V.formal, None, V.certificate, V.label)


def _branch_field(V: Branch):
    return field_of_all(list(V.x.coeffs.values()) + list(V.y.coeffs.values()))
