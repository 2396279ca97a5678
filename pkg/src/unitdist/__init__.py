"""Exact incidence counting between points and unit spheres in R^3,
with polynomial-partition machinery and empirical bound checking."""

__version__ = "0.1.0"
