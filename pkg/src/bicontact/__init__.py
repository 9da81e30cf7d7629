"""Combinatorial models of bicontact plugs, their surgeries and gluings."""

__version__ = "0.1.0"
