"""Finite-category fracture engine and verification harness."""

__version__ = "0.1.0"
