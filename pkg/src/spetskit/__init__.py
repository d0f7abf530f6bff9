"""Exact toolkit for imprimitive spetsial reflection groups."""

__version__ = "0.1.0"
