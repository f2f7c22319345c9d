"""Expression parsing, case files and report serialization."""

from __future__ import annotations

from .casefile import SourceCase, load_case_file, load_case_text, validate_automorphism
from .expr import format_value, parse_expression, parse_value, tokenize
from .serialize import SCHEMA, dumps, envelope, format_mapping, format_table, to_jsonable, tree_to_dot

__all__ = [
    "SourceCase",
    "load_case_file",
    "load_case_text",
    "validate_automorphism",
    "parse_expression",
    "parse_value",
    "format_value",
    "tokenize",
    "SCHEMA",
    "dumps",
    "envelope",
    "format_mapping",
    "format_table",
    "to_jsonable",
    "tree_to_dot",
]
