"""Exact-arithmetic continuous-variable stabilizer codes."""

__version__ = "1.0.0"
