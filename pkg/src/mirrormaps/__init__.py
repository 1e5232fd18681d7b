"""Integrality, positivity and critical values of hypergeometric mirror maps."""

__version__ = "0.1.0"
