"""Exact local invariants of singular holomorphic foliations in the plane."""

__version__ = "0.1.0"
