"""Exact computations for threefold cusp singularities and their conifold transitions."""

__version__ = "0.1.0"
