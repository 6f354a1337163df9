"""Exact root-system computations for pairs of involutions of simple Lie algebras."""

__version__ = "0.1.0"
