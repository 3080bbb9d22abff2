"""Sequentially generalized Cohen-Macaulay modules over polynomial rings."""

__version__ = "0.1.0"
