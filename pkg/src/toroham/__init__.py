"""Hamilton cycles through added face diagonals of toroidal quadrangulations."""

from .torus_quad import Color, DiagonalSpec, Face, Graph, TorusParams, add_diagonals, build

__all__ = ["Color", "DiagonalSpec", "Face", "Graph", "TorusParams", "add_diagonals", "build"]
