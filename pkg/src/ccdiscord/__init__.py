"""Geometric quantum discords of two-qubit states and their
measurement-based upper bounds."""

from .bloch import (
    BlochForm,
    DegenerateTop,
    InvalidParameters,
    InvalidState,
    bloch_from_json_dict,
    bloch_to_json_dict,
    dump_state,
    from_bloch,
    hs_distance_sq,
    load_state,
    purity_norm_sq,
    to_bloch,
)
from .bounds import (
    BoundResult,
    Branch,
    IterationTrace,
    adaptive_bound,
    degenerate_optimized_bounds,
    iterate_adaptive,
    l_matrix_x,
    l_matrix_y,
    nonadaptive_bound,
    nonoptimal_optimized_aub,
)
from .discords import (
    AsymDiscordResult,
    CcDiscordResult,
    OptimizerConfig,
    cc_discord,
    cc_objective,
    cq_discord,
    k_matrix_x,
    k_matrix_y,
    partner_versor,
    qc_discord,
)
from .measurements import (
    MeasurementPair,
    canonicalize,
    is_cc_state,
    measure_a,
    measure_ab,
    measure_b,
    versor,
)
from .oracle import GridSpec, check_observation2, grid_cc_discord
from .presets import make, random_state

__all__ = [
    "AsymDiscordResult",
    "BlochForm",
    "bloch_from_json_dict",
    "bloch_to_json_dict",
    "dump_state",
    "load_state",
    "BoundResult",
    "Branch",
    "CcDiscordResult",
    "DegenerateTop",
    "GridSpec",
    "InvalidParameters",
    "InvalidState",
    "IterationTrace",
    "MeasurementPair",
    "OptimizerConfig",
    "adaptive_bound",
    "canonicalize",
    "cc_discord",
    "cc_objective",
    "check_observation2",
    "cq_discord",
    "degenerate_optimized_bounds",
    "from_bloch",
    "grid_cc_discord",
    "hs_distance_sq",
    "is_cc_state",
    "iterate_adaptive",
    "k_matrix_x",
    "k_matrix_y",
    "l_matrix_x",
    "l_matrix_y",
    "make",
    "measure_a",
    "measure_ab",
    "measure_b",
    "nonadaptive_bound",
    "nonoptimal_optimized_aub",
    "partner_versor",
    "purity_norm_sq",
    "qc_discord",
    "random_state",
    "to_bloch",
    "versor",
]

__version__ = "0.1.0"
