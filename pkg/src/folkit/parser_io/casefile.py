"""Corpus case files (``.fol``).

A case file is TOML. Expressions are strings in the language of
:mod:`folkit.parser_io.expr`. Example::

    name = "cusp-hamiltonian"
    variables = ["x", "y"]
    components = ["2*y", "3*x^2"]
    hamiltonian = "y^2 - x^3"          # optional first integral f, X = (f_y, -f_x) up to sign
    curves = ["y^2 - x^3"]             # optional invariant curves
    branches = [["t^2", "t^3"]]        # optional explicit branches, polynomials in t
    directions = [[1, 1]]              # optional tangent directions for dicritical leaves

    [automorphism]                     # optional exact coordinate change and its inverse
    forward = ["x", "y + x^2"]
    inverse = ["x", "y - x^2"]

    [expect]                           # optional expected invariants (exact literals)
    nu = 1
    initial_part = ["2*y", "0"]
    dicritical = false
    saddle_node = false
    spectrum_nonzero = true
    spectrum = [0, 0]                  # rational eigenvalues, or use charpoly = "s^2 - 2"
    milnor = 2                         # or "inf"
    second_type = true

Every problem found while loading is collected and reported together in a
single :class:`ValidationError`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import tomli

from ..errors import ParseError, ValidationError
from ..exact_arith import MPoly, mpoly_gcd
from .expr import parse_expression, parse_value

TOP_LEVEL_KEYS = {
    "name",
    "variables",
    "components",
    "hamiltonian",
    "curves",
    "branches",
    "directions",
    "automorphism",
    "expect",
    "description",
}
EXPECT_KEYS = {
    "nu",
    "initial_part",
    "dicritical",
    "saddle_node",
    "spectrum_nonzero",
    "spectrum",
    "charpoly",
    "milnor",
    "second_type",
    "strictly_nondicritical",
}
BRANCH_VAR = "t"


@dataclass
class SourceCase:
    name: str
    variables: tuple[str, ...]
    components: tuple[str, ...]
    polys: tuple[MPoly, ...]
    component_gcd: MPoly
    hamiltonian: MPoly | None = None
    curves: tuple[MPoly, ...] = ()
    branches: tuple[tuple[MPoly, ...], ...] = ()
    directions: tuple[tuple[Fraction, ...], ...] = ()
    forward: tuple[MPoly, ...] | None = None
    inverse: tuple[MPoly, ...] | None = None
    expect: dict = field(default_factory=dict)
    description: str = ""
    path: str | None = None

    @property
    def has_automorphism(self) -> bool:
        return self.forward is not None


def _parse(src, vars, where: str, problems: list[str]) -> MPoly | None:
    if not isinstance(src, str):
        problems.append(f"{where}: expected an expression string, got {type(src).__name__}")
        return None
    try:
        return parse_expression(src, vars)
    except ParseError as exc:
        problems.append(f"{where}: {exc}")
        return None


def _string_list(value, where: str, problems: list[str]) -> list | None:
    if not isinstance(value, list):
        problems.append(f"{where}: expected a list")
        return None
    return value


def validate_automorphism(forward, inverse, vars) -> list[str]:
    """Problems with a claimed polynomial automorphism (empty list when fine)."""
    problems = []
    gens = MPoly.gens(vars)
    if any(f.constant_term() for f in forward):
        problems.append("automorphism: forward map does not fix the origin")
    if [f.compose(list(inverse)) for f in forward] != list(gens):
        problems.append("automorphism: forward composed with inverse is not the identity")
    if [g.compose(list(forward)) for g in inverse] != list(gens):
        problems.append("automorphism: inverse composed with forward is not the identity")
    return problems


def load_case_text(text: str, path: str | None = None) -> SourceCase:
    try:
        data = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        raise ValidationError([f"not valid TOML: {exc}"], path) from exc
    return case_from_mapping(data, path)


def load_case_file(path) -> SourceCase:
    """Read and validate a ``.fol`` case file (OSError propagates for unreadable paths)."""
    p = Path(path)
    text = p.read_text(encoding="utf-8")
    return load_case_text(text, str(path))


def case_from_mapping(data: dict, path: str | None = None) -> SourceCase:
    problems: list[str] = []
    for key in sorted(set(data) - TOP_LEVEL_KEYS):
        problems.append(f"unknown key {key!r}")

    name = data.get("name")
    if not isinstance(name, str) or not name:
        problems.append("name: missing or not a string")
        name = ""

    variables = data.get("variables")
    if (
        not isinstance(variables, list)
        or not variables
        or not all(isinstance(v, str) and v.isidentifier() for v in variables)
    ):
        problems.append("variables: expected a non-empty list of identifiers")
        variables = []
    elif len(set(variables)) != len(variables):
        problems.append("variables: duplicate names")
    elif BRANCH_VAR in variables:
        problems.append(f"variables: {BRANCH_VAR!r} is reserved for branch parameters")
    vars_t = tuple(variables)

    comps = data.get("components")
    polys: list[MPoly] = []
    if not isinstance(comps, list) or not comps:
        problems.append("components: expected a non-empty list of expressions")
        comps = []
    else:
        if vars_t and len(comps) != len(vars_t):
            problems.append(
                f"components: {len(comps)} components but {len(vars_t)} variables"
            )
        for k, c in enumerate(comps):
            p = _parse(c, vars_t, f"components[{k}]", problems)
            if p is not None:
                polys.append(p)
        if len(polys) == len(comps) and polys and all(not p for p in polys):
            problems.append("components: all components are zero")

    ham = None
    if "hamiltonian" in data:
        ham = _parse(data["hamiltonian"], vars_t, "hamiltonian", problems)

    curves = []
    for k, c in enumerate(_string_list(data.get("curves", []), "curves", problems) or []):
        p = _parse(c, vars_t, f"curves[{k}]", problems)
        if p is not None:
            if p.constant_term():
                problems.append(f"curves[{k}]: curve does not pass through the origin")
            curves.append(p)

    branches = []
    for k, b in enumerate(_string_list(data.get("branches", []), "branches", problems) or []):
        if not isinstance(b, list) or (vars_t and len(b) != len(vars_t)):
            problems.append(f"branches[{k}]: expected {len(vars_t)} expressions in {BRANCH_VAR}")
            continue
        comps_b = [_parse(s, (BRANCH_VAR,), f"branches[{k}][{j}]", problems) for j, s in enumerate(b)]
        if any(c is None for c in comps_b):
            continue
        if any(c.constant_term() for c in comps_b):
            problems.append(f"branches[{k}]: branch does not pass through the origin")
        elif all(not c for c in comps_b):
            problems.append(f"branches[{k}]: constant branch")
        branches.append(tuple(comps_b))

    directions = []
    for k, d in enumerate(_string_list(data.get("directions", []), "directions", problems) or []):
        try:
            vals = tuple(Fraction(parse_value(v)) for v in d)
        except (ParseError, TypeError, ValueError, OverflowError):
            problems.append(f"directions[{k}]: expected rational coordinates")
            continue
        if vars_t and len(vals) != len(vars_t):
            problems.append(f"directions[{k}]: expected {len(vars_t)} coordinates")
        elif not any(vals):
            problems.append(f"directions[{k}]: the zero vector is not a direction")
        else:
            directions.append(vals)

    forward = inverse = None
    auto = data.get("automorphism")
    if auto is not None:
        if not isinstance(auto, dict) or set(auto) != {"forward", "inverse"}:
            problems.append("automorphism: expected exactly the keys 'forward' and 'inverse'")
        else:
            fw = [_parse(s, vars_t, f"automorphism.forward[{k}]", problems) for k, s in enumerate(auto["forward"])]
            iv = [_parse(s, vars_t, f"automorphism.inverse[{k}]", problems) for k, s in enumerate(auto["inverse"])]
            if len(fw) != len(vars_t) or len(iv) != len(vars_t):
                problems.append("automorphism: forward and inverse need one expression per variable")
            elif all(p is not None for p in fw + iv):
                problems.extend(validate_automorphism(fw, iv, vars_t))
                forward, inverse = tuple(fw), tuple(iv)

    expect = {}
    raw_expect = data.get("expect", {})
    if not isinstance(raw_expect, dict):
        problems.append("expect: expected a table")
        raw_expect = {}
    for key, val in raw_expect.items():
        if key not in EXPECT_KEYS:
            problems.append(f"expect: unknown key {key!r}")
            continue
        try:
            expect[key] = _expect_value(key, val, vars_t)
        except (ParseError, TypeError, ValueError) as exc:
            problems.append(f"expect.{key}: {exc}")

    gcd = MPoly.one(vars_t)
    if polys and len(polys) == len(comps) and any(polys):
        gcd = polys[0]
        for p in polys[1:]:
            gcd = mpoly_gcd(gcd, p)

    if problems:
        raise ValidationError(problems, path)
    return SourceCase(
        name=name,
        variables=vars_t,
        components=tuple(comps),
        polys=tuple(polys),
        component_gcd=gcd,
        hamiltonian=ham,
        curves=tuple(curves),
        branches=tuple(branches),
        directions=tuple(directions),
        forward=forward,
        inverse=inverse,
        expect=expect,
        description=str(data.get("description", "")),
        path=path,
    )


def _expect_value(key: str, val, vars):
    if key in ("dicritical", "saddle_node", "spectrum_nonzero", "second_type", "strictly_nondicritical"):
        if not isinstance(val, bool):
            raise TypeError("expected a boolean")
        return val
    if key == "initial_part":
        if not isinstance(val, list) or len(val) != len(vars):
            raise TypeError("expected one expression per variable")
        return tuple(parse_expression(s, vars) for s in val)
    if key == "spectrum":
        # rational eigenvalues only; irrational spectra are pinned by "charpoly"
        if not isinstance(val, list):
            raise TypeError("expected a list of rational eigenvalue literals")
        return tuple(sorted(Fraction(parse_value(s)) for s in val))
    if key == "charpoly":
        # characteristic polynomial det(s*I - DX(0)) in the variable s
        return parse_expression(val, ("s",))
    v = parse_value(val)
    if key in ("nu", "milnor") and v != math.inf and (Fraction(v).denominator != 1 or v < 0):
        raise ValueError("expected a non-negative integer")
    return v
