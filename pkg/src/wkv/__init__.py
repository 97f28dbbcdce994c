"""Exact, degree-truncated arrow-diagram calculus and the Kashiwara-Vergne equations."""

__version__ = "0.1.0"
