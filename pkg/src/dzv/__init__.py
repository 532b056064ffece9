"""Exact and numerical toolkit for period-polynomial relations of double zeta values."""

__version__ = "0.1.0"
