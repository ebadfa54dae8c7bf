"""Exact identities between Ihara brackets, Lie brackets and special derivations, and the period polynomials they produce."""

__version__ = "0.1.0"
