"""Exact invariant rings of linear group actions by groupoid slicing."""

__version__ = "0.3.0"
