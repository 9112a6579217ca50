"""Exact-arithmetic analysis of birational maps on rational elliptic surfaces."""

__version__ = "0.1.0"
