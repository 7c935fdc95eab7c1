"""Exact Vertex Cover above the LP bound, with OCT/SVD reductions and a kernelizer."""

from .graph import Graph, GraphError, ParseError, parse_edge_list, read_graph

__all__ = ["Graph", "GraphError", "ParseError", "parse_edge_list", "read_graph"]
__version__ = "0.1.0"
