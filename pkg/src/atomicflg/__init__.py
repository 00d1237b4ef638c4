"""Exact solvers for the two-stage facility location game with atomic clients.

Facilities pick vertices of a weighted digraph, then clients split their
demand among the facilities in their closed out-neighborhood.  The package
computes client equilibria, runs the sorted-load potential dynamic to a
subgame perfect equilibrium, decides (approximate) SPE existence on small
instances and evaluates welfare, all over the exact field Q(sqrt 5).
"""
from .analysis import (WelfareReport, core_spe_certificate, optimum_placement, poa_certificate,
                       reach_table, sat_certificate)
from .classes import Class, ClassSet, class_set, coverage_ratio, mns, mns_bruteforce
from .client_eq import (EquilibriumPolytope, FavoringPolicy, GreedyPolicy, RoundedPolicy,
                        assignment_loads, enumerate_equilibria, equilibrium_polytope,
                        favoring_profile, greedy_weighted_equilibrium, is_rounded,
                        rounded_profile)
from .errors import (CertificateError, FeasibilityError, FlgError, GuardExceeded, InputError,
                     InvariantError, UncoveredClientError, UnsupportedModeError)
from .flow import FlowNetwork, FlowResult, cut_capacity, max_cost_flow, max_flow, max_source_side_min_cut
from .formats import parse_instance, serialize_instance, to_dot
from .game import (ClientProfile, FullProfilePolicy, HostGraph, Instance, LoadReport, TablePolicy,
                   UniformPolicy, attraction_range, check_feasible, client_violations,
                   covered_clients, excluded_load, facility_loads, participation, pi_loads,
                   shopping_range, uniform_profile, verify_client_equilibrium, waiting_time)
from .instances import (CnfFormula, gen_paper_instance, named_placement, random_cnf,
                        random_instance, reduce_sat, reduction_counts, sat_placement)
from .lp import LinearProgram, solve
from .scalar import GOLDEN_RATIO, SQRT5, Scalar, as_scalar, parse_scalar
from .spe import (DynamicsTrace, PartialCertificate, SpeDecision, build_certificate, find_spe,
                  improving_moves, k_approx_spe, spe_exists, stabilizing_certificate, verify_spe)

__version__ = "0.1.0"
