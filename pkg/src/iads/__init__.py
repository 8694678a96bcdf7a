"""Exact computation for irreversible algebraic dynamical systems."""

__version__ = "0.1.0"
