"""Dominating-set reconfiguration graphs (TAR + token sliding) and pancyclicity certificates."""

from .constructions import (
    BoundarySetJ,
    ConstructionError,
    LiftContext,
    OpBPartition,
    SearchVerdictError,
    compute_boundary_J,
    construct_certificate,
    join_certificate,
    join_k1_certificate,
    lift_operation_A,
    lift_operation_B,
    opb_partition,
    product_certificate,
    tree_certificate,
)
from .domination import DominatingFamily, domination_number, enumerate_dominating_sets, is_dominating
from .graph import (
    Graph,
    GraphError,
    ReductionSequence,
    ReductionStep,
    cartesian_product,
    find_reduction_sequence,
    join,
    join_decompose,
    parse_edge_list,
    parse_graph6,
    threshold_sequence,
    to_graph6,
    union,
)
from .gray import (
    HypercubeError,
    bipan_cycle_with_edge,
    brgc_cycle,
    brgc_table,
    brgc_term,
    hamiltonian_path_between_adjacent,
    subset_gray_cycle,
)
from .recon import ReconGraph, build_recon_graph, component_count, edge_kind, tar_adjacent, ts_adjacent
from .search import (
    PancyclicCertificate,
    PancyclicReport,
    check_pancyclic,
    find_cycle_of_length,
    find_hamilton_cycle,
    validate_certificate,
    validate_cycle,
)

__version__ = "0.1.0"

__all__ = [
    "bipan_cycle_with_edge",
    "BoundarySetJ",
    "brgc_cycle",
    "brgc_table",
    "brgc_term",
    "build_recon_graph",
    "cartesian_product",
    "check_pancyclic",
    "component_count",
    "compute_boundary_J",
    "construct_certificate",
    "ConstructionError",
    "DominatingFamily",
    "domination_number",
    "edge_kind",
    "enumerate_dominating_sets",
    "find_cycle_of_length",
    "find_hamilton_cycle",
    "find_reduction_sequence",
    "Graph",
    "GraphError",
    "hamiltonian_path_between_adjacent",
    "HypercubeError",
    "is_dominating",
    "join",
    "join_certificate",
    "join_decompose",
    "join_k1_certificate",
    "lift_operation_A",
    "lift_operation_B",
    "LiftContext",
    "opb_partition",
    "OpBPartition",
    "PancyclicCertificate",
    "PancyclicReport",
    "parse_edge_list",
    "parse_graph6",
    "product_certificate",
    "ReconGraph",
    "ReductionSequence",
    "ReductionStep",
    "SearchVerdictError",
    "subset_gray_cycle",
    "tar_adjacent",
    "threshold_sequence",
    "to_graph6",
    "tree_certificate",
    "ts_adjacent",
    "union",
    "validate_certificate",
    "validate_cycle",
]
