"""Exact enumeration and series analysis for planar Eulerian orientations."""

__version__ = "0.1.0"
