"""Exact computations in the Hodge, de Rham and Hodge-de Rham rings of varieties in characteristic p."""

__version__ = "0.1.0"
