"""Exact coefficient arithmetic: rationals, number-field towers, polynomials, series."""

from __future__ import annotations

from fractions import Fraction as Rat

from .factor import Root, factor_coeffs, roots
from .field import (
    QQ,
    AlgElem,
    NumberField,
    common_field,
    extension_bound,
    field_of,
    field_of_all,
    to_rational,
)
from .mpoly import MPoly, factor_univariate, mpoly_gcd, mpoly_ord
from .series import INF, PuiseuxSeries, series_ord, working_order

__all__ = [
    "Rat",
    "QQ",
    "AlgElem",
    "NumberField",
    "common_field",
    "extension_bound",
    "field_of",
    "field_of_all",
    "to_rational",
    "MPoly",
    "mpoly_gcd",
    "mpoly_ord",
    "factor_univariate",
    "factor_coeffs",
    "roots",
    "Root",
    "PuiseuxSeries",
    "series_ord",
    "working_order",
    "INF",
]
