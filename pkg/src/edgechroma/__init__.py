"""Semistrong and uniquely restricted edge colorings of sparse graphs."""
from .graph import Graph, GraphError, edge

__version__ = "0.1.0"

__all__ = ["Graph", "GraphError", "edge", "__version__"]
