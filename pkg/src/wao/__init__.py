"""Exact calculator for the Brauer-Manin obstruction to weak approximation
on homogeneous spaces with stabilizers of multiplicative type, reduced to
Galois cohomology over Q."""

__version__ = "0.1.0"
