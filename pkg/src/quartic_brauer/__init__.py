"""Exact computations with Brauer classes on the quartic x^4 - y^4 = z^4 - w^4."""

__version__ = "0.1.0"
