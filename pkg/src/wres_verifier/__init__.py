"""Exact verification engine for boundary noncommutative-residue computations."""

__version__ = "0.1.0"
