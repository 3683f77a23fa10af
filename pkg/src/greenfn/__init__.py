"""Exact Green functions for finite reductive groups via Levi induction."""

__version__ = "0.1.0"
