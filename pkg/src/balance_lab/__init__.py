"""Exact balance statistics and balance certificates for antimatroids."""

__version__ = "0.1.0"
