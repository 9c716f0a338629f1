"""Exact combinatorics of intersections of tropical hypersurfaces."""

__version__ = "0.1.0"
