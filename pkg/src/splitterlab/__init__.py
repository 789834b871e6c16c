"""Finite-graph structural sparsity toolkit and splitter-game engine."""

from .graph import Graph, ball, delete_vertices, is_scattered, power_graph
from .families import FamilySpec, generate

__all__ = [
    "Graph",
    "FamilySpec",
    "ball",
    "delete_vertices",
    "generate",
    "is_scattered",
    "power_graph",
]

__version__ = "0.1.0"
