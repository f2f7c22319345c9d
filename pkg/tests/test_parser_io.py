from __future__ import annotations

import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from folkit.errors import ParseError, UnknownVariable, ValidationError
from folkit.exact_arith import MPoly
from folkit.parser_io import (
    SCHEMA,
    dumps,
    envelope,
    format_table,
    format_value,
    load_case_file,
    load_case_text,
    parse_expression,
    parse_value,
    tree_to_dot,
)

VARS = ("x", "y")
x, y = MPoly.gens(VARS)


def test_parse_examples():
    assert parse_expression("2*y", VARS) == 2 * y
    assert parse_expression("(x+y)^2 - x^2", VARS) == 2 * x * y + y**2
    assert parse_expression("x^(3)", VARS) == x**3
    assert parse_expression("x/2 - 3/4", VARS) == Fraction(1, 2) * x - Fraction(3, 4)
    assert parse_expression("-(x - y)", VARS) == y - x


def test_negative_exponent_is_a_syntax_error():
    with pytest.raises(SyntaxError) as info:
        parse_expression("x^(-1)", VARS)
    assert "non-negative" in str(info.value)


@pytest.mark.parametrize("src", ["x +", "2**x", "(x", "x y", "x/y", "x/0", "1.5*x", ""])
def test_malformed_expressions(src):
    with pytest.raises(ParseError):
        parse_expression(src, VARS)


def test_error_position_is_reported():
    with pytest.raises(ParseError) as info:
        parse_expression("x + y\n  + $", VARS)
    assert (info.value.line, info.value.column) == (2, 5)


def test_unknown_variable():
    with pytest.raises(UnknownVariable):
        parse_expression("z", VARS)


def test_values():
    assert parse_value("3/6") == Fraction(1, 2)
    assert parse_value("inf") == math.inf
    assert parse_value(7) == 7
    assert parse_value(True) is True
    assert format_value(Fraction(-2, 4)) == "-1/2"
    assert format_value(math.inf) == "inf"


@st.composite
def polys(draw):
    terms = {}
    for _ in range(draw(st.integers(0, 5))):
        e = (draw(st.integers(0, 4)), draw(st.integers(0, 4)))
        terms[e] = Fraction(draw(st.integers(-9, 9)), draw(st.integers(1, 5)))
    return MPoly(VARS, terms)


@settings(max_examples=100, deadline=None)
@given(polys())
def test_print_parse_round_trip(p):
    assert parse_expression(str(p), VARS) == p


CUSP = '''
name = "cusp-hamiltonian"
variables = ["x", "y"]
components = ["2*y", "3*x^2"]
'''


def test_load_case_text():
    case = load_case_text(CUSP)
    assert case.name == "cusp-hamiltonian"
    assert case.polys == (2 * y, 3 * x**2)
    assert case.component_gcd == MPoly.one(VARS)


def test_component_gcd_is_reported_not_removed():
    case = load_case_text('name = "g"\nvariables = ["x", "y"]\ncomponents = ["x^2*y", "x*y^2"]\n')
    assert case.component_gcd == x * y
    assert case.polys == (x**2 * y, x * y**2)


def test_three_components_for_two_variables():
    with pytest.raises(ValidationError) as info:
        load_case_text('name = "bad"\nvariables = ["x", "y"]\ncomponents = ["x", "y", "x"]\n')
    assert any("3 components but 2 variables" in p for p in info.value.problems)


def test_all_problems_reported_together():
    text = '''
name = ""
variables = ["x", "y"]
components = ["x +", "y"]
colour = "red"
[expect]
nu = "1/2"
'''
    with pytest.raises(ValidationError) as info:
        load_case_text(text)
    problems = info.value.problems
    assert len(problems) >= 4
    assert any("unknown key 'colour'" in p for p in problems)
    assert any("components[0]" in p for p in problems)
    assert any("expect.nu" in p for p in problems)


def test_automorphism_accepted_and_rejected():
    good = CUSP + '[automorphism]\nforward = ["x", "y + x^2"]\ninverse = ["x", "y - x^2"]\n'
    case = load_case_text(good)
    assert case.has_automorphism
    bad = CUSP + '[automorphism]\nforward = ["x", "y + x^2"]\ninverse = ["x", "y + x^2"]\n'
    with pytest.raises(ValidationError) as info:
        load_case_text(bad)
    assert any("not the identity" in p for p in info.value.problems)


def test_invalid_toml():
    with pytest.raises(ValidationError):
        load_case_text("name = \n")


def test_missing_file(tmp_path):
    with pytest.raises(OSError):
        load_case_file(tmp_path / "nope.fol")


def test_every_corpus_file_loads(corpus):
    assert len(corpus) >= 15
    for name, case in corpus.items():
        assert case.name == name
        assert case.has_automorphism


def test_json_is_exact_and_stable():
    payload = envelope("demo", {"r": Fraction(1, 2), "n": Fraction(4), "m": math.inf, "p": x * y})
    text = dumps(payload)
    assert text == dumps(payload)
    data = json.loads(text)
    assert data["schema"] == SCHEMA
    assert data["result"] == {"r": "1/2", "n": 4, "m": "inf", "p": "x*y"}
    with pytest.raises(TypeError):
        dumps({"bad": 0.5})


def test_table_and_dot():
    table = format_table([{"a": 1, "b": True}, {"a": Fraction(1, 3), "b": None}])
    assert table.splitlines()[0].split() == ["a", "b"]
    assert "1/3" in table and "-" in table.splitlines()[-1]
    dot = tree_to_dot([{"id": 0, "parent": None, "label": 'a "b"\nc'}, {"id": 1, "parent": 0, "label": "d"}])
    assert 'label="a \\"b\\"\\nc"' in dot and "n0 -> n1;" in dot
