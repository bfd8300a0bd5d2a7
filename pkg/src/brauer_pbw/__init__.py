"""Exact diagrammatic computation of interpolating PBW deformations in Rep(O_t)."""

__version__ = "0.1.0"
