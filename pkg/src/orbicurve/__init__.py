"""Computational toolkit for one-dimensional orbifolds (orbicurves)."""

__version__ = "0.1.0"
SCHEMA = "orbicurve/1"
