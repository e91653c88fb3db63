"""Numerical diffraction of a plane wave by a perfect wedge."""

__version__ = "0.1.0"
