"""Numerical toolkit for theta functions, cubic invariants and the genus-4 Schottky form."""

__version__ = "0.1.0"
