"""Exact computations with finite module categories, profunctors and Tambara modules."""

__version__ = "0.1.0"
