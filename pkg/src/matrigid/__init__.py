"""Infinitesimal rigidity of bar-joint frameworks in normed matrix spaces and product-norm spaces."""

__version__ = "0.1.0"

from .config import ToleranceConfig
from .constructions import construct_k6_minus_e, construct_k7_hyper, construct_km
from .estimator import RigidityAnalyzer, RigidityMatrixTransformer
from .matspace import Field, Kind, k_value, l_value, make_chart, motion_param_space
from .motions import is_completely_full, is_full, trivial_flex_basis
from .norms import NormSpec, is_smooth_at, norm_value, singular_values, support_functional
from .product import (
    ProductNormSpace,
    colour_edges,
    decompose,
    euclidean_regularity_check,
    product_analyze,
    psi_cyl,
    psi_cyl_inv,
    psi_hcyl,
    psi_hcyl_inv,
    transport,
)
from .rigidity import (
    Framework,
    Verdict,
    analyze,
    classical_rigidity_matrix,
    finite_difference_check,
    flex_dim,
    is_well_positioned,
    maxwell_edge_count,
    rigidity_matrix,
)
from .spaces import MatrixNormedSpace
from .sparsity import Graph, brute_force_sparsity, is_laman, is_spanning_tree, pebble_game

__all__ = [
    "ToleranceConfig", "construct_k6_minus_e", "construct_k7_hyper", "construct_km",
    "RigidityAnalyzer", "RigidityMatrixTransformer", "Field", "Kind", "k_value", "l_value",
    "make_chart", "motion_param_space", "is_completely_full", "is_full", "trivial_flex_basis",
    "NormSpec", "is_smooth_at", "norm_value", "singular_values", "support_functional",
    "ProductNormSpace", "colour_edges", "decompose", "euclidean_regularity_check",
    "product_analyze", "psi_cyl", "psi_cyl_inv", "psi_hcyl", "psi_hcyl_inv", "transport",
    "Framework", "Verdict", "analyze", "classical_rigidity_matrix", "finite_difference_check",
    "flex_dim", "is_well_positioned", "maxwell_edge_count", "rigidity_matrix",
    "MatrixNormedSpace", "Graph", "brute_force_sparsity", "is_laman", "is_spanning_tree",
    "pebble_game",
]
