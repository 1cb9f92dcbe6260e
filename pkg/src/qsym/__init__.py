"""Exact computations with Macdonald polynomials via raising operators."""

__version__ = "0.1.0"
