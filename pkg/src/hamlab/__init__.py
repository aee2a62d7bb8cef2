"""Exact digraph algorithms for Hamiltonicity under degree conditions, with a
verification harness for enumerating small digraphs."""

__version__ = "0.1.0"

from .conditions import CONDITION_IDS, ConditionResult, Violation, evaluate, min_nonadjacent_pair_sum, satisfies
from .connectivity import (
    ConnectivityResult,
    has_two_path_between,
    is_k_strong,
    is_strong,
    strong_components,
    two_path_count,
    vertex_connectivity,
)
from .cycles import (
    CycleCertificate,
    CycleLengthProfile,
    cycle_length_profile,
    cycle_through_pair,
    hamiltonian_cycle,
    is_hamiltonian,
    longest_cycle,
    verify_certificate,
)
from .digraph import DegreeSummary, Digraph, DigraphError, ParseError, is_isomorphic, parse, serialize
from .factor import (
    CycleFactor,
    NoWitnessError,
    PartitionWitness,
    extract_cycle_factor,
    extract_partition_witness,
    has_cycle_factor,
    verify_partition_witness,
)
from .families import EnumerationScope, FamilySpec, generate, is_in_phi, parse_family, phi_maximal, random_condition_m_digraph
from .harness import VerificationReport, explore_problem_1_17, find_remark_witness, verify
from .registry import REGISTRY, THEOREM_IDS, TheoremCase
