"""Exact extremal clique densities: the scallop function h_r, extremal graphs
and step graphons, brute-force oracles and extremality certificates."""

from .graphs import Graph, count_cliques, hom_density, turan_edges
from .scallop import c_of_alpha, h_r, h_r_prime, k_of_alpha
from .stepgraphon import StepGraphon, clique_density, construct_extremal
from .surd import Surd, parse_number

__all__ = [
    "Graph",
    "StepGraphon",
    "Surd",
    "c_of_alpha",
    "clique_density",
    "construct_extremal",
    "count_cliques",
    "h_r",
    "h_r_prime",
    "hom_density",
    "k_of_alpha",
    "parse_number",
    "turan_edges",
]
