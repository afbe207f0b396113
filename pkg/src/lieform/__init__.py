"""Exact-arithmetic workbench for Lie-Rinehart algebras, Poisson and
Courant brackets, and contact Pfaff systems."""

__version__ = "0.1.0"
