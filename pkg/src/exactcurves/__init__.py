"""Exact-arithmetic toolkit for plane curve singularities and
fundamental-group computations."""

__version__ = "0.1.0"
