from __future__ import annotations

import sys
from pathlib import Path

import pytest
import sympy

from folkit.cli import corpus_cases
from folkit.exact_arith import MPoly
from folkit.parser_io import load_case_file

X_, Y_, T_ = sympy.symbols("x y t")


def to_sympy(p: MPoly):
    """Independent route: re-read the canonical text with sympy (rational coefficients only)."""
    return sympy.sympify(str(p).replace("^", "**"), locals={v: sympy.Symbol(v) for v in p.vars})


@pytest.fixture(scope="session")
def corpus():
    return {p.stem: load_case_file(p) for p in corpus_cases()}


@pytest.fixture(scope="session")
def corpus_paths() -> list[Path]:
    return corpus_cases()


def resultant_milnor(P: MPoly, Q: MPoly):
    """Order at x = 0 of Res_y(P, Q), or None when that order is not the local intersection number.

    Valid when some component has a nonzero constant leading coefficient in y
    (no intersection escapes to infinity over x = 0) and the two restrictions
    to x = 0 have no common root other than y = 0.
    """
    x, y = sympy.symbols("x y")
    p, q = to_sympy(P), to_sympy(Q)
    lead_ok = any(
        sympy.Poly(f, y).LC().is_number and sympy.Poly(f, y).degree() > 0 for f in (p, q) if f != 0
    )
    if not lead_ok:
        return None
    common = sympy.gcd(p.subs(x, 0), q.subs(x, 0))
    if common != 0 and sympy.Poly(common, y).degree() > 0:
        if sympy.Poly(common, y).terms()[-1][0][0] != sympy.Poly(common, y).degree():
            return None  # a common root away from the origin
    res = sympy.Poly(sympy.resultant(p, q, y), x)
    if res.is_zero:
        return None
    return min(m[0] for m in res.monoms())


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(lines):
        terminalreporter.write_line(lines[k])
