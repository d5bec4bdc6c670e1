"""Degree-sequence realizations carrying factors, equitable colorings and connectivity."""

__version__ = "0.1.0"
