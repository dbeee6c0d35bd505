"""Explicit lower bounds on the independence ratio of random regular graphs.

The pipeline: a threshold search (`alpha_star`) finds the largest density
whose two-copy coupling objective peaks at the independent coupling; an
augmentation step (`lower_bound`) grows that independent set with full-zero
vertices; thinning and star-decomposition corollaries (`alpha_thin`,
`star_candidates`) reuse the same density.  Monte Carlo and brute-force
oracles (`regindep.oracles`) validate every closed form independently.
"""

from .augment import (
    AugmentationReport,
    alpha_hat,
    asymptotic_reference,
    augmentation_report,
    conditional_p,
    full_zero_prob,
    gw_offspring_mean,
    isolated_full_zero_prob,
    lower_bound,
)
from .coupling import CouplingPoint, coupling_cells, f_derivative, f_value, gamma_star
from .entropy import (
    MAX_DEGREE,
    EdgeDistribution,
    RateParams,
    edge_entropy,
    entropy_term,
    sigma_rate,
    vertex_entropy,
)
from .errors import DomainError, InfeasiblePointError, NumericalError, SupercriticalError
from .oracles import (
    McEstimate,
    fd_derivative_check,
    grid_argmax_f,
    mc_broadcast_full_zero,
    mc_gw_component,
)
from .search import SmmOutcome, alpha_star, condition_holds, local_maxima
from .stars import (
    EXTERNAL_CONDITIONS_NOTE,
    StarFeasibility,
    ThinningRow,
    alpha_thin,
    load_upper_bounds,
    necessary_bound_k,
    star_candidates,
    thinning_table,
)

__version__ = "0.1.0"

__all__ = [
    "AugmentationReport",
    "CouplingPoint",
    "DomainError",
    "EdgeDistribution",
    "EXTERNAL_CONDITIONS_NOTE",
    "InfeasiblePointError",
    "MAX_DEGREE",
    "McEstimate",
    "NumericalError",
    "RateParams",
    "SmmOutcome",
    "StarFeasibility",
    "SupercriticalError",
    "ThinningRow",
    "alpha_hat",
    "alpha_star",
    "alpha_thin",
    "asymptotic_reference",
    "augmentation_report",
    "condition_holds",
    "conditional_p",
    "coupling_cells",
    "edge_entropy",
    "entropy_term",
    "f_derivative",
    "f_value",
    "fd_derivative_check",
    "full_zero_prob",
    "gamma_star",
    "grid_argmax_f",
    "gw_offspring_mean",
    "isolated_full_zero_prob",
    "load_upper_bounds",
    "local_maxima",
    "lower_bound",
    "mc_broadcast_full_zero",
    "mc_gw_component",
    "necessary_bound_k",
    "sigma_rate",
    "star_candidates",
    "thinning_table",
    "vertex_entropy",
]
