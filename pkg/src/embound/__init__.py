"""Measurement-based entanglement bounds for pure multipartite states."""

from .closedform import (
    OmegaBranchSpectrum,
    SandwichBounds,
    StandardFormParams,
    commutator_condition,
    omega1_emb,
    omega_eigenvalues,
    relative_entropy_sandwich,
    residual_concurrences,
)
from .emb import (
    BranchMatrices,
    LoccMonotoneReport,
    MeasureResult,
    branch_matrices,
    check_locc_monotone,
    e_hmin,
    e_locc,
    emb_general,
    emb_tripartite_best,
    emb_tripartite_qubit,
)
from .geometric import (
    ProductAnsatz,
    geometric_measure_general,
    geometric_measure_symmetric,
    tangle_ghz_w,
)
from .measures import (
    SchmidtSpectrum,
    binary_entropy,
    bipartite_entanglement,
    bipartite_lower_bound,
    projective_outcome_entropy,
    pure_concurrence_one_vs_rest,
    schmidt_decompose,
    shannon_entropy,
)
from .optimize import Diagnostics, OptimizerConfig, maximize_periodic, minimize_periodic
from .state import (
    MeasurementBasis,
    OutcomeTree,
    Partition,
    StateTensor,
    coarse_grain,
    from_json,
    ghz_w_superposition,
    named_state,
    permute_parties,
    project_party,
    random_pure_state,
    reduced_density,
    standard_form_state,
    to_json,
)

__all__ = [
    "BranchMatrices",
    "Diagnostics",
    "LoccMonotoneReport",
    "MeasureResult",
    "MeasurementBasis",
    "OmegaBranchSpectrum",
    "OptimizerConfig",
    "OutcomeTree",
    "Partition",
    "ProductAnsatz",
    "SandwichBounds",
    "SchmidtSpectrum",
    "StandardFormParams",
    "StateTensor",
    "binary_entropy",
    "bipartite_entanglement",
    "bipartite_lower_bound",
    "branch_matrices",
    "check_locc_monotone",
    "coarse_grain",
    "commutator_condition",
    "e_hmin",
    "e_locc",
    "emb_general",
    "emb_tripartite_best",
    "emb_tripartite_qubit",
    "from_json",
    "geometric_measure_general",
    "geometric_measure_symmetric",
    "ghz_w_superposition",
    "maximize_periodic",
    "minimize_periodic",
    "named_state",
    "omega1_emb",
    "omega_eigenvalues",
    "permute_parties",
    "project_party",
    "projective_outcome_entropy",
    "pure_concurrence_one_vs_rest",
    "random_pure_state",
    "reduced_density",
    "relative_entropy_sandwich",
    "residual_concurrences",
    "schmidt_decompose",
    "shannon_entropy",
    "standard_form_state",
    "tangle_ghz_w",
    "to_json",
]

__version__ = "0.1.0"
