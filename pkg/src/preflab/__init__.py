"""Finite-model laboratory for preferential choice functions and their representations."""
__version__ = "0.1.0"
