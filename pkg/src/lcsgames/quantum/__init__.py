"""Quantum strategies for linear constraint system games.

States and observables are dense numpy matrices in the computational
basis.  The submodules cover states and tensor utilities, the
state-dependent operator distance, strategies in observable and
measurement form, and extraction of ideal structure from near-perfect
strategies.
"""

from .distance import (
    RootCombinationBounds,
    root_combination_bounds,
    state_distance,
    state_distance_squared,
)
from .extraction import (
    EprExtraction,
    ExactExtraction,
    ProductStateExtraction,
    ResidualEntry,
    ResidualReport,
    extract_epr_state,
    extract_operator_solution_exact,
    extract_product_state,
    residual_check,
)
from .sampling import (
    perturbed_ideal_strategy,
    random_density,
    random_hermitian,
    random_projector_partition,
    random_pure_state,
    random_strategy,
    random_unitary,
)
from .states import (
    DensityOperator,
    epr_density,
    epr_projector,
    epr_vector,
    partial_trace,
    pure_density,
    purity_defect,
    trace_norm,
)
from .strategies import (
    ObservableStrategy,
    ProjectiveMeasurements,
    WinningProbability,
    canonical_operator_solution,
    ideal_strategy,
    spectral_convert,
    spectral_invert,
    validate_operator_solution,
    winning_probability,
)

__all__ = [
    "DensityOperator",
    "EprExtraction",
    "ExactExtraction",
    "ObservableStrategy",
    "ProductStateExtraction",
    "ProjectiveMeasurements",
    "ResidualEntry",
    "ResidualReport",
    "RootCombinationBounds",
    "WinningProbability",
    "canonical_operator_solution",
    "epr_density",
    "epr_projector",
    "epr_vector",
    "extract_epr_state",
    "extract_operator_solution_exact",
    "extract_product_state",
    "ideal_strategy",
    "partial_trace",
    "perturbed_ideal_strategy",
    "pure_density",
    "purity_defect",
    "random_density",
    "random_hermitian",
    "random_projector_partition",
    "random_pure_state",
    "random_strategy",
    "random_unitary",
    "residual_check",
    "root_combination_bounds",
    "spectral_convert",
    "spectral_invert",
    "state_distance",
    "state_distance_squared",
    "trace_norm",
    "validate_operator_solution",
    "winning_probability",
]
