"""Deterministic qubit routing for circuits whose coupling graph is a line graph."""
from .circuit_ir import Circuit, Gate, coupling_graph, depth, heis_circuit, random_circuit
from .graph_core import (Graph, HeavyLabeling, KrauszPartition, NotALineGraph, congruent_heavy_labels,
                         edge_coloring, heavy_graph, inverse_line_graph, line_graph, vf2_embed)
from .lattices import checkerboard, complete, kagome, random_line_graph, shuriken
from .router import (MetricsRecord, RoutingResult, Side, cancel_swaps, line_graph_route, naive_route,
                     remove_lone_leaves, route_metrics)
from .sim_verify import Statevector, simulate, verify_equivalence

__all__ = [
    "Circuit", "Gate", "coupling_graph", "depth", "heis_circuit", "random_circuit",
    "Graph", "HeavyLabeling", "KrauszPartition", "NotALineGraph", "congruent_heavy_labels",
    "edge_coloring", "heavy_graph", "inverse_line_graph", "line_graph", "vf2_embed",
    "checkerboard", "complete", "kagome", "random_line_graph", "shuriken",
    "MetricsRecord", "RoutingResult", "Side", "cancel_swaps", "line_graph_route", "naive_route",
    "remove_lone_leaves", "route_metrics", "Statevector", "simulate", "verify_equivalence",
]
