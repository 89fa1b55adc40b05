"""Exact spanning-tree and spanning-forest generating functions on
self-similar triangle graphs, with four mutually checking computation
routes: combinatorial recursion, closed-form products, weighted Laplacian
cofactors and Schur-complement decimation."""

from .algebra import (
    DEFAULT_SEED,
    FactoredPoly,
    TriPoly,
    Weights,
    poly_derivative,
    poly_equal_by_sampling,
    poly_eval,
    poly_log_eval,
)
from .errors import CapabilityError, DecimationSingularError, VerificationMismatch
from .graphs import (
    LabelledEdge,
    LabelledGraph,
    apply_generator,
    build_hanoi,
    build_sierpinski,
    export_dot,
    graph_census,
)
from .hanoi import (
    hanoi_bundle,
    hanoi_counts_closed,
    hanoi_counts_recursive,
    hanoi_growth,
    hanoi_initial,
    hanoi_step,
)
from .kirchhoff import (
    RationalMatrix,
    SchurState,
    generator_matrices,
    hanoi_tn_schur,
    lambda_matrix,
    schur_denominator,
    schur_denominator_rederived,
    schur_map,
    schur_map_divergence,
    schur_map_rederived,
    schur_pipeline,
    tree_gf_cofactor,
    weighted_laplacian,
)
from .oracle import ForestSpec, count_trees, enumerate_gf
from .sierpinski import (
    CountsTriple,
    FiveBundle,
    RotBundle,
    dir_bundle,
    dir_closed,
    dir_closed_value,
    dir_initial,
    dir_step,
    rot_bundle,
    rot_closed,
    rot_counts,
    rot_growth,
    rot_initial,
    rot_step,
    schreier_bundle,
    schreier_closed,
    schreier_closed_value,
    schreier_initial,
    schreier_step,
)
from .stats import (
    LabelStat,
    label_mean_gf,
    label_stat_closed,
    label_variance_gf,
    mgf_normalized,
    normality_gap,
)

__version__ = "0.1.0"
