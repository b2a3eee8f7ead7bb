"""Numerical tools for the SIC representation of quantum states and qplexes."""

__version__ = "0.1.0"
