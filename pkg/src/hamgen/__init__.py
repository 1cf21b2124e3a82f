"""Isomorph-free generation of graphs by their number of hamiltonian cycles."""
from __future__ import annotations

from .canon import (CanonicalReport, automorphism_generators, canonical_form, canonical_report,
                    edge_orbits, nonadjacent_pair_orbits, vertex_orbits)
from .generate import (ConfigError, GenConfig, Mode, OutputFilters, RunStats, count, generate,
                       generate_parallel, iter_graphs, split)
from .graph import EdgeStateError, Graph, Graph6Error, OrderError
from .hamilton import (HamReport, count_cycles_of_length, count_hc, count_hp, count_hp_between,
                       h, hamiltonian_cycles, hc_edge_incidence, is_hamiltonian,
                       is_uniquely_hamiltonian, thomassen_edge, thomassen_edge_exists)
from .planarity import PlanarityVerdict, check_certificate, is_planar

__all__ = [
    "CanonicalReport", "automorphism_generators", "canonical_form", "canonical_report",
    "edge_orbits", "nonadjacent_pair_orbits", "vertex_orbits",
    "ConfigError", "GenConfig", "Mode", "OutputFilters", "RunStats", "count", "generate",
    "generate_parallel", "iter_graphs", "split",
    "EdgeStateError", "Graph", "Graph6Error", "OrderError",
    "HamReport", "count_cycles_of_length", "count_hc", "count_hp", "count_hp_between", "h",
    "hamiltonian_cycles", "hc_edge_incidence", "is_hamiltonian", "is_uniquely_hamiltonian",
    "thomassen_edge", "thomassen_edge_exists",
    "PlanarityVerdict", "check_certificate", "is_planar",
]
