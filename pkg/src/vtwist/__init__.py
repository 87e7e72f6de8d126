"""Exact verification of twisted modules built from weight-one elements of lattice vertex algebras."""

__version__ = "0.1.0"
