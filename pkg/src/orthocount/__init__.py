"""Exact degree sums for finite orthogonal and symplectic groups."""

__version__ = "0.1.0"
