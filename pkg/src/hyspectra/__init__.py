"""Exact spectral toolkit for the hierarchical memory-state transition graph.

The package computes, in exact arithmetic wherever a closed form exists:
the transition graph and its block-recursive adjacency matrix, factored
characteristic polynomials, the full eigenvalue table keyed by angle
fractions, the limiting eigenvalue distribution and its Devil's
staircase, closed-form eigenvectors, the stationary distribution of the
self-loop chain, and reproducible random walks.
"""

from .adjacency import (
    AdjacencyMatrix,
    Variant,
    build_from_rules,
    build_recursive,
    export_structure,
)
from .budget import DEFAULT, Budget, BudgetError, ConvergenceError, from_env
from .chebpoly import (
    AngleFraction,
    IntPolynomial,
    chebyshev_u,
    chebyshev_u_at,
    chebyshev_u_neg_half,
    chebyshev_u_value,
    chebyshev_zeros,
    pell_identity_holds,
    pell_residual,
)
from .eigenvectors import (
    ChebProduct,
    Eigenvector,
    eigenvector_gamma_prime,
    eigenvector_interior,
    eigenvector_top,
    residual,
    run_product_reciprocal,
    stationary_fractions,
    stationary_vector,
)
from .oracle import (
    bareiss_determinant,
    charpoly_dense,
    charpoly_eval,
    minor_det,
    verify_lemma_recursions,
)
from .spectrum import (
    CharFactor,
    DistributionRow,
    FactoredCharPoly,
    SpectrumEntry,
    SpectrumTable,
    StaircaseValue,
    characteristic_factors,
    devils_staircase,
    devils_staircase_left_limit,
    distribution_table,
    eigenvalue_distribution,
    expand_characteristic,
    finite_staircase,
    limit_distribution,
    spectrum,
    spectrum_diff,
    staircase_jump,
    totient_sum,
)
from .states import (
    MemoryState,
    RunDecomposition,
    TransitionError,
    all_states,
    apply_input_sequence,
    run_decomposition,
)
from .walks import (
    TerminationSamples,
    WalkConfig,
    empirical_stationary,
    leading_eigenvalue,
    power_iteration_stationary,
    replication_bits,
    simulate_absorbing,
)

__version__ = "0.1.0"

__all__ = [
    "AdjacencyMatrix",
    "AngleFraction",
    "Budget",
    "BudgetError",
    "CharFactor",
    "ChebProduct",
    "ConvergenceError",
    "DEFAULT",
    "DistributionRow",
    "Eigenvector",
    "FactoredCharPoly",
    "IntPolynomial",
    "MemoryState",
    "RunDecomposition",
    "SpectrumEntry",
    "SpectrumTable",
    "StaircaseValue",
    "TerminationSamples",
    "TransitionError",
    "Variant",
    "WalkConfig",
    "all_states",
    "apply_input_sequence",
    "bareiss_determinant",
    "build_from_rules",
    "build_recursive",
    "characteristic_factors",
    "charpoly_dense",
    "charpoly_eval",
    "chebyshev_u",
    "chebyshev_u_at",
    "chebyshev_u_neg_half",
    "chebyshev_u_value",
    "chebyshev_zeros",
    "devils_staircase",
    "devils_staircase_left_limit",
    "distribution_table",
    "eigenvalue_distribution",
    "eigenvector_gamma_prime",
    "eigenvector_interior",
    "eigenvector_top",
    "empirical_stationary",
    "expand_characteristic",
    "export_structure",
    "finite_staircase",
    "from_env",
    "leading_eigenvalue",
    "limit_distribution",
    "minor_det",
    "pell_identity_holds",
    "pell_residual",
    "power_iteration_stationary",
    "replication_bits",
    "residual",
    "run_decomposition",
    "run_product_reciprocal",
    "simulate_absorbing",
    "spectrum",
    "spectrum_diff",
    "staircase_jump",
    "stationary_fractions",
    "stationary_vector",
    "totient_sum",
    "verify_lemma_recursions",
]
