"""Indices along branches and the quantities derived from them.

The index of ``X = P d/dx + Q d/dy`` along an invariant branch ``alpha`` is
the order of the cofactor ``g`` in ``X(alpha(t)) = g(t) alpha'(t)``. Along
the tower of blow-ups that follows a branch we record, per level, the
multiplicity ``m``, the algebraic multiplicity ``nu`` and the exponent
``nu_tilde`` of the divisor removed by the strict transform (``nu - 1`` at
nondicritical points, ``nu`` at dicritical ones). From these:

* ``weighted_drop(k) = sum_{j<k} (m_j / m_0) nu_tilde_j``
* ``tail_drop(1) = 0`` and ``tail_drop(k) = sum_{1<=j<k} (m_j / m_0) nu_tilde_j``

and the endpoint level is the first ``d >= 1`` at which the branch has become
smooth (``m_{d-1} = 1``) and either no level so far was dicritical and the
index is 1, or level ``d - 1`` was dicritical and the index is 0.

Every identity is reported as an :class:`Evidence` record carrying both
sides as exact values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .blowup_resolution import Branch, BranchTower, blow_up, branch_tower, nu_tilde, resolve, root_germ
from .errors import (
    DicriticalInfinitelyMany,
    EmptyBranchList,
    FolkitError,
    NonGenericDirection,
    NotAnAutomorphism,
    NotInvariant,
    NotSecondType,
    PrecisionExhausted,
)
from .exact_arith import MPoly, PuiseuxSeries
from .exact_arith.series import working_order
from .foliation_core import (
    VectorField,
    algebraic_multiplicity,
    initial_part,
    is_dicritical,
    linear_part,
    milnor_number,
    normalize,
    saddle_node,
    spectrum_nonzero,
)
from .parser_io.casefile import SourceCase, validate_automorphism
from .puiseux_separatrix import (
    branch_conjugates,
    invariance_evidence,
    newton_puiseux,
    same_branch,
    sample_dicritical_leaf,
    solve_separatrices,
    substitute,
)

MAX_ORDER = 512


@dataclass(frozen=True)
class Evidence:
    """One checked identity: both sides as exact values and the verdict."""

    name: str
    anchor: str  # the identity being checked, written out as a formula
    lhs: object
    rhs: object
    holds: bool
    detail: str = ""
    subject: str = ""

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "anchor": self.anchor,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "holds": self.holds,
        }
        if self.subject:
            out["subject"] = self.subject
        if self.detail:
            out["detail"] = self.detail
        return out


# --------------------------------------------------------------------------
# the index along a branch


def _cofactor(F: VectorField, V: Branch) -> PuiseuxSeries:
    """g with X(alpha) = g * alpha', cross-checked between the components.

    g is the quotient by the component of alpha' of least valuation; the other
    component must then satisfy comp = g * alpha'_i wherever both are known.
    """
    Pa = substitute(F.P, V)
    Qa = substitute(F.Q, V)
    pairs = [(Pa, V.x.deriv(), "x"), (Qa, V.y.deriv(), "y")]
    certified = [p for p in pairs if p[1].coeffs]
    if not certified:
        raise NotInvariant("constant branch")
    comp, d, _ = min(certified, key=lambda p: p[1].val())
    g = comp / d
    if g.coeffs and min(g.coeffs) < 0:
        raise NotInvariant("the cofactor has a pole: the branch is not invariant")
    for other, d2, name in pairs:
        if other is comp:
            continue
        if (other - g * d2).coeffs:
            raise NotInvariant(f"the {name}-component is not g times the derivative: the branch is not invariant")
    return g


def index_value(F: VectorField, V: Branch) -> int:
    """Order of the cofactor of X along the branch."""
    v = _cofactor(F, V).ord()
    if v == math.inf:
        # X vanishes identically along the branch
        raise NotInvariant("X vanishes along the branch (non-isolated singularity)")
    if Fraction(v).denominator != 1:
        raise NotInvariant(f"fractional cofactor order {v}: the parameterization is not primitive")
    return int(v)


@dataclass(frozen=True)
class IndexReport:
    branch: str
    cofactor_ord: int
    composition_ord: int
    m: int
    cofactor_series: str

    @property
    def identity_holds(self) -> bool:
        return self.composition_ord == self.cofactor_ord + self.m - 1

    def to_json(self) -> dict:
        return {
            "branch": self.branch,
            "cofactor_ord": self.cofactor_ord,
            "composition_ord": self.composition_ord,
            "m": self.m,
            "cofactor_series": self.cofactor_series,
        }


def index_along(X: VectorField, V: Branch, name: str = "") -> IndexReport:
    g = _cofactor(X, V)
    ind = index_value(X, V)
    comp = min(substitute(X.P, V).ord(), substitute(X.Q, V).ord())
    leading = g.truncate(min(g.coeffs) + 3) if g.coeffs else g
    return IndexReport(name or str(V), ind, int(comp), V.multiplicity(), leading.format())


def check_index_bound(X: VectorField, V: Branch, subject: str = "") -> Evidence:
    """nu * m <= ind + m - 1 along an invariant branch."""
    nu = algebraic_multiplicity(X)
    m = V.multiplicity()
    ind = index_value(X, V)
    lhs, rhs = nu * m, ind + m - 1
    return Evidence("index_bound", "nu*m <= ind + m - 1", lhs, rhs, lhs <= rhs, subject=subject)


def index_ratio(X: VectorField, V: Branch) -> Fraction:
    """(ind - 1) / m."""
    return Fraction(index_value(X, V) - 1, V.multiplicity())


def min_index_ratio(X: VectorField, branches: Sequence[Branch]):
    """Minimum of (ind - 1)/m over a supplied finite list of branches."""
    if not branches:
        raise EmptyBranchList("no branches supplied")
    return min(index_ratio(X, V) for V in branches)


def check_cone_criterion(X: VectorField, V: Branch, subject: str = "") -> Evidence:
    """in(X) does not vanish on the tangent line of V  <=>  nu = 1 + (ind - 1)/m."""
    a, b = V.tangent_direction()
    s = PuiseuxSeries.t()
    zero = PuiseuxSeries({})
    on_line = [c(s * a, s * b, zero=zero) for c in initial_part(X)]
    left = any(c.coeffs for c in on_line)
    nu = algebraic_multiplicity(X)
    r = index_ratio(X, V)
    right = nu == 1 + r
    return Evidence(
        "cone_criterion",
        "in(X)|_(tangent line) != 0  <=>  nu = 1 + (ind - 1)/m",
        left,
        right,
        left == right,
        detail=f"nu = {nu}, (ind - 1)/m = {r}",
        subject=subject,
    )


# --------------------------------------------------------------------------
# invariants along the tower of blow-ups


@dataclass
class TowerInvariants:
    levels: list  # dicts with level, m, nu, nu_tilde, index, dicritical
    weighted_drop: dict  # k -> sum_{j<k} (m_j/m_0) nu_tilde_j
    index_drop: dict  # k -> (ind_0 - ind_k)/m_0
    tail_drop: dict  # k -> sum_{1<=j<k} (m_j/m_0) nu_tilde_j
    endpoint_level: int | None
    endpoint_kind: str  # "nondicritical_endpoint", "dicritical_endpoint" or "not_reached"
    checks: list = field(default_factory=list)
    tower: BranchTower | None = None

    @property
    def nu(self) -> int:
        return self.levels[0]["nu"]

    def to_json(self) -> dict:
        return {
            "levels": self.levels,
            "weighted_drop": {str(k): v for k, v in self.weighted_drop.items()},
            "index_drop": {str(k): v for k, v in self.index_drop.items()},
            "tail_drop": {str(k): v for k, v in self.tail_drop.items()},
            "endpoint_level": self.endpoint_level,
            "endpoint_kind": self.endpoint_kind,
            "checks": [c.to_json() for c in self.checks],
        }


def _with_precision(fn, V: Branch, order: int | None):
    """Run fn(V), refining the branch on PrecisionExhausted."""
    n = working_order.get() if order is None else order
    while True:
        try:
            return fn(V)
        except PrecisionExhausted:
            if V.refine is None or n >= MAX_ORDER:
                raise
            n *= 2
            V = V.refine(n)


def locate_endpoint(levels: Sequence[dict]) -> tuple[int | None, str]:
    """First level d >= 1 meeting the endpoint condition, and which one."""
    for d in range(1, len(levels)):
        prev = levels[d - 1]
        if prev["m"] != 1:
            continue
        if not any(lv["dicritical"] for lv in levels[:d]) and levels[d]["index"] == 1:
            return d, "nondicritical_endpoint"
        if prev["dicritical"] and levels[d]["index"] == 0:
            return d, "dicritical_endpoint"
    return None, "not_reached"


def tower_invariants(X: VectorField, V: Branch, max_depth: int = 12, order: int | None = None, subject: str = "") -> TowerInvariants:
    """Per-level data along the branch through ``max_depth`` blow-ups, with the drop identities."""
    tower = _with_precision(lambda B: branch_tower(X, B, max_depth), V, order)
    levels = [
        {
            "level": lv.level,
            "m": lv.m,
            "nu": lv.nu,
            "nu_tilde": lv.nu_tilde,
            "index": lv.index,
            "dicritical": lv.dicritical,
            "class": lv.reduced_class.tag,
        }
        for lv in tower.levels
    ]
    m0 = levels[0]["m"]
    ind0 = levels[0]["index"]
    weighted, by_index, tail = {}, {}, {}
    acc = Fraction(0)
    for k in range(1, len(levels)):
        lv = levels[k - 1]
        acc += Fraction(lv["m"] * lv["nu_tilde"], m0)
        weighted[k] = acc
        by_index[k] = Fraction(ind0 - levels[k]["index"], m0)
        tail[k] = acc - levels[0]["nu_tilde"]
    checks = []
    for k in range(1, len(levels)):
        lv, nxt = levels[k - 1], levels[k]
        rhs = lv["index"] - lv["m"] * lv["nu_tilde"]
        checks.append(
            Evidence(
                "one_step_drop",
                "ind_(j+1) = ind_j - m_j*nu_tilde_j",
                nxt["index"],
                rhs,
                nxt["index"] == rhs,
                detail=f"j = {k - 1}",
                subject=subject,
            )
        )
        tele = ind0 - sum(levels[j]["m"] * levels[j]["nu_tilde"] for j in range(k))
        checks.append(
            Evidence(
                "telescoping",
                "ind_k = ind_0 - sum_(j<k) m_j*nu_tilde_j",
                nxt["index"],
                tele,
                nxt["index"] == tele,
                detail=f"k = {k}",
                subject=subject,
            )
        )
        checks.append(
            Evidence(
                "weighted_drop_vs_index",
                "sum_(j<k) (m_j/m_0)*nu_tilde_j = (ind_0 - ind_k)/m_0",
                weighted[k],
                by_index[k],
                weighted[k] == by_index[k],
                detail=f"k = {k}",
                subject=subject,
            )
        )
    d, kind = locate_endpoint(levels)
    return TowerInvariants(levels, weighted, by_index, tail, d, kind, checks, tower)


def check_endpoint(T: TowerInvariants, subject: str = "") -> Evidence:
    """The tower reaches a level where the branch is smooth with index 1 (or 0 after a dicritical level)."""
    if T.endpoint_level is None:
        last = T.levels[-1]
        return Evidence(
            "endpoint",
            "ind_d = 1 (nondicritical chain) or ind_d = 0 (dicritical level d-1), m_(d-1) = 1",
            None,
            "ind in {0, 1}",
            False,
            detail=f"no endpoint within {len(T.levels) - 1} blow-ups; last level has m = {last['m']}, ind = {last['index']}",
            subject=subject,
        )
    d = T.endpoint_level
    want = 1 if T.endpoint_kind == "nondicritical_endpoint" else 0
    got = T.levels[d]["index"]
    return Evidence(
        "endpoint",
        "ind_d = 1 (nondicritical chain) or ind_d = 0 (dicritical level d-1), m_(d-1) = 1",
        got,
        want,
        got == want,
        detail=f"d = {d}, {T.endpoint_kind}",
        subject=subject,
    )


def check_weighted_drop_criterion(T: TowerInvariants, subject: str = "") -> Evidence:
    """nu = 1 + weighted_drop(d)  <=>  tail_drop(d) = 0, at the endpoint level d."""
    anchor = "nu = 1 + R_d  <=>  Gamma_d = 0"
    if T.endpoint_level is None:
        return Evidence("weighted_drop_criterion", anchor, None, None, False,
                        detail="no endpoint level was reached", subject=subject)
    d = T.endpoint_level
    R, G = T.weighted_drop[d], T.tail_drop[d]
    left = T.nu == 1 + R
    right = G == 0
    return Evidence(
        "weighted_drop_criterion",
        anchor,
        left,
        right,
        left == right,
        detail=f"d = {d}, nu = {T.nu}, R_d = {R}, Gamma_d = {G}",
        subject=subject,
    )


# --------------------------------------------------------------------------
# second type: nu = m(S) - 1


def separatrix_multiplicity(branches: Iterable[Branch]) -> int:
    """Multiplicity of the union of the separatrices, Galois conjugates included."""
    return sum(branch_conjugates(V) * V.multiplicity() for V in branches)


def second_type_multiplicity_check(X: VectorField, order: int | None = None, max_depth: int = 12, subject: str = "") -> Evidence:
    tree = resolve(X, max_depth)
    if not tree.strictly_nondicritical:
        raise DicriticalInfinitelyMany("the germ has dicritical points in its resolution")
    if not tree.second_type:
        raise NotSecondType("a saddle-node of the resolution has its weak curve in the divisor")
    seps = solve_separatrices(X, order, max_depth=max_depth)
    nu = algebraic_multiplicity(X)
    mS = separatrix_multiplicity(seps)
    return Evidence("second_type_multiplicity", "nu = m(S) - 1", nu, mS - 1, nu == mS - 1,
                    detail=f"{len(seps)} separatrix classes", subject=subject)


# --------------------------------------------------------------------------
# analytic coordinate changes


def transform_by_automorphism(X: VectorField, forward: Sequence[MPoly], inverse: Sequence[MPoly]) -> VectorField:
    """The field (D phi . X) o phi^-1, normalized."""
    problems = validate_automorphism(list(forward), list(inverse), X.vars)
    if problems:
        raise NotAnAutomorphism("; ".join(problems))
    comps = []
    for f in forward:
        push = MPoly(X.vars)
        for j, c in enumerate(X.components):
            push = push + f.diff(j) * c
        comps.append(push.compose(list(inverse)))
    return normalize(comps, X.vars)


def push_branch(V: Branch, forward: Sequence[MPoly]) -> Branch:
    """phi o alpha."""
    zero = PuiseuxSeries({}, V.x.e)
    x = forward[0](V.x, V.y, zero=zero)
    y = forward[1](V.x, V.y, zero=zero)
    refine = None
    if V.refine is not None:
        def refine(n: int, V=V) -> Branch:
            return push_branch(V.refine(n), forward)
    return Branch(x, y, V.swapped, V.formal, refine, None, V.label)


@dataclass
class BlowUpComparison:
    """Indices after one blow-up for two fields over a branch correspondence."""

    nu: tuple
    pairs: list  # dicts: index_first, index_second, m_first, m_second
    sums: list  # dicts: subset, sum_first, sum_second
    same_nu: bool
    some_equal: bool
    all_equal: bool
    all_sums_equal: bool
    multiplicities_match: bool

    @property
    def consistent(self) -> bool:
        flags = (self.same_nu, self.some_equal, self.all_equal, self.all_sums_equal)
        return all(flags) or not any(flags)

    def to_json(self) -> dict:
        return {
            "nu": list(self.nu),
            "pairs": self.pairs,
            "sums": self.sums,
            "items": {
                "same_nu": self.same_nu,
                "some_index_equal": self.some_equal,
                "all_indices_equal": self.all_equal,
                "all_sums_equal": self.all_sums_equal,
            },
            "multiplicities_match": self.multiplicities_match,
            "consistent": self.consistent,
        }


def level_one_index(X: VectorField, V: Branch, order: int | None = None) -> int:
    tower = _with_precision(lambda B: branch_tower(X, B, 1), V, order)
    return tower.levels[1].index


def first_blowup_comparison(X: VectorField, Y: VectorField, pairs: Sequence[tuple[Branch, Branch]], order: int | None = None) -> BlowUpComparison:
    if not pairs:
        raise EmptyBranchList("no branch pairs supplied")
    rows = []
    for V, W in pairs:
        rows.append(
            {
                "index_first": level_one_index(X, V, order),
                "index_second": level_one_index(Y, W, order),
                "m_first": V.multiplicity(),
                "m_second": W.multiplicity(),
            }
        )
    sums = [
        {
            "subset": list(range(len(rows))),
            "sum_first": sum(r["index_first"] for r in rows),
            "sum_second": sum(r["index_second"] for r in rows),
        }
    ]
    if len(rows) > 1:
        for i, r in enumerate(rows):
            sums.append({"subset": [i], "sum_first": r["index_first"], "sum_second": r["index_second"]})
    eq = [r["index_first"] == r["index_second"] for r in rows]
    nu = (algebraic_multiplicity(X), algebraic_multiplicity(Y))
    return BlowUpComparison(
        nu=nu,
        pairs=rows,
        sums=sums,
        same_nu=nu[0] == nu[1],
        some_equal=any(eq),
        all_equal=all(eq),
        all_sums_equal=all(s["sum_first"] == s["sum_second"] for s in sums),
        multiplicities_match=all(r["m_first"] == r["m_second"] for r in rows),
    )


def check_comparison(C: BlowUpComparison, subject: str = "") -> Evidence:
    """The four comparison items agree, unless the correspondence is not multiplicity-preserving."""
    flags = [C.same_nu, C.some_equal, C.all_equal, C.all_sums_equal]
    if not C.multiplicities_match:
        return Evidence("blowup_comparison", "same nu <=> some ind equal <=> all ind equal <=> all sums equal",
                        flags, None, False, detail="precondition violated: branch multiplicities differ",
                        subject=subject)
    return Evidence("blowup_comparison", "same nu <=> some ind equal <=> all ind equal <=> all sums equal",
                    flags, [flags[0]] * 4, C.consistent, subject=subject)


# --------------------------------------------------------------------------
# corpus cases


@dataclass
class NamedBranch:
    name: str
    branch: Branch
    source: str  # "explicit", "curve", "solver" or "leaf"

    def to_json(self) -> dict:
        out = {"name": self.name, "source": self.source}
        out.update(self.branch.to_json())
        return out


def case_field(case: SourceCase) -> VectorField:
    return normalize(case.polys, case.variables)


def case_branches(case: SourceCase, X: VectorField | None = None, order: int | None = None, max_depth: int = 12) -> list[NamedBranch]:
    """Explicit branches, branches of listed curves, solver separatrices and sampled leaves (deduplicated)."""
    from .blowup_resolution import branch_from_polys

    if X is None:
        X = case_field(case)
    out: list[NamedBranch] = []

    def add(name, V, source):
        for nb in out:
            if nb.branch.multiplicity() == V.multiplicity() and same_branch(nb.branch, V, order):
                return
        out.append(NamedBranch(name, V, source))

    for k, (xp, yp) in enumerate(case.branches):
        add(f"explicit[{k}]", branch_from_polys(xp, yp), "explicit")
    for k, f in enumerate(case.curves):
        for j, V in enumerate(newton_puiseux(f, order)):
            add(f"curve[{k}].{j}", V, "curve")
    try:
        seps = solve_separatrices(X, order, max_depth=max_depth)
    except DicriticalInfinitelyMany as exc:
        seps = exc.isolated or []
    for k, V in enumerate(seps):
        add(f"separatrix[{k}]", V, "solver")
    for k, d in enumerate(case.directions):
        try:
            V = sample_dicritical_leaf(X, d, order)
        except NonGenericDirection:
            continue
        add(f"leaf[{k}]", V, "leaf")
    return out


def definition_checks(case: SourceCase, X: VectorField, max_depth: int = 12) -> list[Evidence]:
    """Computed invariants against the expectations written in the case file."""
    exp = case.expect
    out = []

    def rec(key, got, want, anchor):
        out.append(Evidence(f"expect.{key}", anchor, got, want, got == want, subject=case.name))

    if "nu" in exp:
        rec("nu", algebraic_multiplicity(X), exp["nu"], "nu = min ord of the components")
    if "initial_part" in exp:
        got = tuple(str(c) for c in initial_part(X))
        rec("initial_part", got, tuple(str(c) for c in exp["initial_part"]), "in(X) = degree-nu part")
    if "dicritical" in exp:
        rec("dicritical", is_dicritical(X), exp["dicritical"], "y*in(P) - x*in(Q) == 0")
    if "saddle_node" in exp:
        rec("saddle_node", saddle_node(X), exp["saddle_node"], "exactly one zero eigenvalue")
    if "spectrum_nonzero" in exp:
        rec("spectrum_nonzero", spectrum_nonzero(X), exp["spectrum_nonzero"], "Spec DX(0) != {0}")
    lp = linear_part(X) if ("spectrum" in exp or "charpoly" in exp) else None
    if "spectrum" in exp:
        rec("spectrum", tuple(str(v) for v in lp.spectrum), tuple(str(v) for v in exp["spectrum"]), "eigenvalues of DX(0)")
    if "charpoly" in exp:
        got = str(MPoly.from_univariate(lp.charpoly, 0, ("s",)))
        rec("charpoly", got, str(exp["charpoly"]), "det(s I - DX(0))")
    if "milnor" in exp:
        rec("milnor", milnor_number(X), exp["milnor"], "mu = i_0(P, Q)")
    if X.n == 2 and algebraic_multiplicity(X) > 0:
        out.extend(two_route_checks(X, case.name))
    if "second_type" in exp or "strictly_nondicritical" in exp:
        tree = resolve(X, max_depth)
        if "second_type" in exp:
            rec("second_type", tree.second_type, exp["second_type"], "no weak curve in the divisor")
        if "strictly_nondicritical" in exp:
            rec("strictly_nondicritical", tree.strictly_nondicritical, exp["strictly_nondicritical"],
                "no dicritical point in the resolution")
    return out


def two_route_checks(X: VectorField, subject: str = "") -> list[Evidence]:
    """Tangent-cone dicriticality and nu_tilde against the chartwise strict transforms."""
    cone = is_dicritical(X)
    nt = nu_tilde(X)
    out = []
    for chart in ("first", "second"):
        b = blow_up(root_germ(X), chart)
        out.append(Evidence(f"dicritical_{chart}_chart", "y*in(P) - x*in(Q) == 0  <=>  divisor not invariant",
                            cone, not b.divisor_invariant, cone == (not b.divisor_invariant), subject=subject))
        out.append(Evidence(f"nu_tilde_{chart}_chart", "nu_tilde = (divisor exponent of the pull-back) - 1",
                            nt, b.nu_tilde, nt == b.nu_tilde, subject=subject))
    return out


def saddle_node_checks(X: VectorField, subject: str = "") -> list[Evidence]:
    mu = milnor_number(X)
    sn = saddle_node(X)
    nz = spectrum_nonzero(X)
    all_nonzero = all(bool(v) for v in linear_part(X).spectrum)
    return [
        Evidence("saddle_node_chain", "saddle-node => Spec != {0} and mu > 1", sn,
                 nz and mu > 1, (not sn) or (nz and mu > 1), detail=f"mu = {mu}", subject=subject),
        Evidence("milnor_one", "mu = 1 <=> all eigenvalues nonzero", mu == 1, all_nonzero,
                 (mu == 1) == all_nonzero, detail=f"mu = {mu}", subject=subject),
    ]


def branch_checks(X: VectorField, nb: NamedBranch, order: int | None = None, max_depth: int = 12, subject: str = "") -> tuple[list[Evidence], TowerInvariants | None]:
    sub = f"{subject}:{nb.name}" if subject else nb.name

    def run(V):
        ev = invariance_evidence(X, V, order)
        out = [Evidence("invariance", "P(alpha) y' - Q(alpha) x' = 0", ev.method, ev.certified_order,
                        ev.invariant, detail=ev.detail, subject=sub)]
        rep = index_along(X, V, nb.name)
        out.append(Evidence("composition_order", "ord X(alpha) = ind + m - 1", rep.composition_ord,
                            rep.cofactor_ord + rep.m - 1, rep.identity_holds, subject=sub))
        out.append(check_index_bound(X, V, sub))
        out.append(check_cone_criterion(X, V, sub))
        return out

    out = _with_precision(run, nb.branch, order)
    T = tower_invariants(X, nb.branch, max_depth, order, sub)
    out.extend(T.checks)
    out.append(check_endpoint(T, sub))
    out.append(check_weighted_drop_criterion(T, sub))
    return out, T


def automorphism_checks(case: SourceCase, X: VectorField, branches: Sequence[NamedBranch], order: int | None = None) -> list[Evidence]:
    Y = transform_by_automorphism(X, case.forward, case.inverse)
    out = []

    def same(name, a, b, detail=""):
        out.append(Evidence(f"automorphism.{name}", f"{name}(X) = {name}(phi_* X)", a, b, a == b,
                            detail=detail, subject=case.name))

    same("nu", algebraic_multiplicity(X), algebraic_multiplicity(Y))
    same("nu_is_one", algebraic_multiplicity(X) == 1, algebraic_multiplicity(Y) == 1)
    same("saddle_node", saddle_node(X), saddle_node(Y))
    same("spectrum_nonzero", spectrum_nonzero(X), spectrum_nonzero(Y))
    same("dicritical", is_dicritical(X), is_dicritical(Y))
    same("milnor", milnor_number(X), milnor_number(Y))
    pairs = []
    for nb in branches:
        W = push_branch(nb.branch, case.forward)
        iv = _with_precision(lambda B: index_value(X, B), nb.branch, order)
        iw = _with_precision(lambda B: index_value(Y, B), W, order)
        same("index", iv, iw, detail=nb.name)
        same("m", nb.branch.multiplicity(), W.multiplicity(), detail=nb.name)
        same("index_ratio", Fraction(iv - 1, nb.branch.multiplicity()), Fraction(iw - 1, W.multiplicity()), detail=nb.name)
        pairs.append((nb.branch, W))
    if pairs:
        C = first_blowup_comparison(X, Y, pairs, order)
        for key, flag in (("same_nu", C.same_nu), ("some_index_equal", C.some_equal),
                          ("all_indices_equal", C.all_equal), ("all_sums_equal", C.all_sums_equal)):
            out.append(Evidence(f"automorphism.{key}", "comparison item holds for (X, phi_* X)", flag, True,
                                flag, subject=case.name))
        out.append(check_comparison(C, case.name))
    return out


def hamiltonian_checks(case: SourceCase, X: VectorField, order: int | None = None, max_depth: int = 12) -> list[Evidence]:
    """Separatrices of the field versus branches of its first integral."""
    f = case.hamiltonian
    out = []
    nps = newton_puiseux(f, order)
    for k, V in enumerate(nps):
        val = substitute(f, V)
        N = working_order.get() if order is None else order
        ok = not val.coeffs and (val.is_exact or val.guaranteed_order() >= 2 * N)
        out.append(Evidence("curve_substitution", "f(alpha(t)) = 0", "exact" if val.is_exact else val.guaranteed_order(),
                            "exact or >= 2N", ok, detail=f"branch {k}", subject=case.name))
    try:
        seps = solve_separatrices(X, order, max_depth=max_depth)
    except DicriticalInfinitelyMany as exc:
        seps = exc.isolated or []
    matched = 0
    for V in nps:
        if any(same_branch(V, W, order) and branch_conjugates(V) == branch_conjugates(W) for W in seps):
            matched += 1
    ok = matched == len(nps) == len(seps)
    out.append(Evidence("hamiltonian_separatrices", "separatrices of X = branches of f = 0",
                        len(seps), len(nps), ok, detail=f"{matched} matched", subject=case.name))
    return out


@dataclass
class CaseReport:
    name: str
    checks: list
    towers: dict
    errors: list

    @property
    def passed(self) -> bool:
        return not self.errors and all(c.holds for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.holds]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": len(self.checks),
            "failures": [c.to_json() for c in self.failures()],
            "errors": self.errors,
        }


IDENTITY_GROUPS = ("definitions", "branches", "towers", "second_type", "saddle_node", "automorphism", "hamiltonian")


def verify_case(case: SourceCase, order: int | None = None, max_depth: int = 12, groups: Iterable[str] = IDENTITY_GROUPS) -> CaseReport:
    """Run the selected identity groups on one case; computational errors are recorded, not raised."""
    groups = set(groups)
    checks: list[Evidence] = []
    towers: dict = {}
    errors: list = []

    def guard(what, fn):
        try:
            return fn()
        except FolkitError as exc:
            errors.append({"operation": what, "error": type(exc).__name__, "message": str(exc)})
            return None

    X = case_field(case)
    if "definitions" in groups:
        checks.extend(guard("definitions", lambda: definition_checks(case, X, max_depth)) or [])
    if "saddle_node" in groups and X.n == 2:
        checks.extend(guard("saddle_node", lambda: saddle_node_checks(X, case.name)) or [])
    branches = guard("case_branches", lambda: case_branches(case, X, order, max_depth)) or []
    if "branches" in groups or "towers" in groups:
        for nb in branches:
            res = guard(f"branch {nb.name}", lambda nb=nb: branch_checks(X, nb, order, max_depth, case.name))
            if res is None:
                continue
            ev, T = res
            if "towers" not in groups:
                ev = [e for e in ev if e.name in ("invariance", "composition_order", "index_bound", "cone_criterion")]
            if "branches" not in groups:
                ev = [e for e in ev if e.name not in ("invariance", "composition_order", "index_bound", "cone_criterion")]
            checks.extend(ev)
            towers[nb.name] = T
    if "second_type" in groups and algebraic_multiplicity(X) > 0:
        tree = guard("resolve", lambda: resolve(X, max_depth))
        if tree is not None and tree.strictly_nondicritical and tree.second_type:
            ev = guard("second_type_multiplicity", lambda: second_type_multiplicity_check(X, order, max_depth, case.name))
            if ev is not None:
                checks.append(ev)
    if "automorphism" in groups and case.has_automorphism:
        checks.extend(guard("automorphism", lambda: automorphism_checks(case, X, branches, order)) or [])
    if "hamiltonian" in groups and case.hamiltonian is not None:
        checks.extend(guard("hamiltonian", lambda: hamiltonian_checks(case, X, order, max_depth)) or [])
    return CaseReport(case.name, checks, towers, errors)
