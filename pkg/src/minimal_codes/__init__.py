"""Minimal linear codes over small fields: code checks, asymptotic bounds and short-code search."""

__version__ = "0.1.0"
