"""Equitable Owen-set imputations for max-flow, branching and b-matching games."""

__version__ = "0.1.0"
