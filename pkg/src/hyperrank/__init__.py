"""Spectral centralities for non-uniform hypergraphs via uplift and projection."""

from .errors import ConvergenceError, DataError, HyperrankError, UsageError
from .hypergraph import (
    AuxSpec,
    HyperEdge,
    Hypergraph,
    HypergraphStats,
    PreprocessReport,
    build_preprocessed,
    connected_components,
    is_strongly_connected,
    largest_connected_component,
    order_slice,
    stats,
)
from .rankcmp import (
    RankingTable,
    curve_filter,
    default_ks,
    kendall_tau,
    pairwise_heatmap,
    topk_curve,
)
from .spectral import (
    CentralityResult,
    EigenpairCheck,
    SolverOptions,
    ZEigenpair,
    alt_centrality,
    detect_uplift_structure,
    eigenvector_centrality,
    h_eigen_power,
    hec,
    uhec,
    uphec,
    verify_h_eigenpair,
    verify_z_eigenpair,
    z_via_uplift,
)
from .tensor import (
    ScoreVector,
    UniformTensor,
    apply,
    dense_oracle,
    flattening_matrix,
    from_hypergraph,
)
from .uniformize import (
    BuildCounter,
    alternative_uniformization,
    multi_uplift,
    project,
    star_factor,
    uplift,
    uplift_project,
)

__version__ = "0.1.0"

__all__ = [
    "AuxSpec",
    "BuildCounter",
    "CentralityResult",
    "ConvergenceError",
    "DataError",
    "EigenpairCheck",
    "HyperEdge",
    "Hypergraph",
    "HypergraphStats",
    "HyperrankError",
    "PreprocessReport",
    "RankingTable",
    "ScoreVector",
    "SolverOptions",
    "UniformTensor",
    "UsageError",
    "ZEigenpair",
    "alt_centrality",
    "alternative_uniformization",
    "apply",
    "build_preprocessed",
    "connected_components",
    "curve_filter",
    "default_ks",
    "dense_oracle",
    "detect_uplift_structure",
    "eigenvector_centrality",
    "flattening_matrix",
    "from_hypergraph",
    "h_eigen_power",
    "hec",
    "is_strongly_connected",
    "kendall_tau",
    "largest_connected_component",
    "multi_uplift",
    "order_slice",
    "pairwise_heatmap",
    "project",
    "star_factor",
    "stats",
    "topk_curve",
    "uhec",
    "uphec",
    "uplift",
    "uplift_project",
    "verify_h_eigenpair",
    "verify_z_eigenpair",
    "z_via_uplift",
]
