"""Independent sets in strong powers of cycles.

Builds and verifies packing certificates for C_p^d, solves the associated
maximum weight independent set instances exactly and stochastically, and
reproduces the packing-number and Shannon-capacity bound tables.
"""

from .bounds import (BoundsCell, assemble_table, capacity_bounds,
                     capacity_lower_bound, key_a, key_b, key_c, key_d, key_j,
                     lovasz_theta, root_exceeds, theta_below)
from .certify import (Certificate, CertificateError, VerificationReport,
                      emit_certificate, emit_solution, expand_certificate,
                      parse_certificate, verify_certificate)
from .groups import (CyclicGroup, GroupElement, Orbit, all_orbits,
                     cyclic_group, element_order, enumerate_generators,
                     identity_element, orbit_of, translation, trivial_group)
from .orbitgraph import (OrbitGraph, build_conflict_graph, build_trivial_graph,
                         export_edge_list, is_admissible, orbit_distance,
                         orbits_conflict)
from .search import (SearchConfig, SearchResult, SearchStats, greedy_initial,
                     refill, remove_ball, run_search, sweep_generators)
from .solver import (Budget, BudgetExhaustedError, ContractError, Solution,
                     SolveResult, WeightedGraph, brute_force_mwis,
                     max_weight_is, max_weight_is_restricted, parse_edge_list)
from .torus import (CycleParams, InstanceTooLargeError, alpha_exact,
                    brute_force_alpha, circ_dist, full_conflict_graph,
                    is_adjacent, is_independent_set)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
