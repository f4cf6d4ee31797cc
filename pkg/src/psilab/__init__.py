"""Exact pseudoachromatic numbers of small graphs and their behaviour under the join."""

__version__ = "0.1.0"
