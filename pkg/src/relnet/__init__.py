"""Relative survivable network design: approximation algorithms and brute-force oracles."""
from .graph import Graph, GraphError, build_graph, parse_graph, read_graph
from .model import Demand, SetDemand, Solution

__all__ = ["Graph", "GraphError", "build_graph", "parse_graph", "read_graph", "Demand", "SetDemand", "Solution"]
__version__ = "0.1.0"
