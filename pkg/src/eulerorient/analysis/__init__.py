"""Asymptotic analysis of counting series: ratios, approximants, extension."""
from .da import (
    DifferentialApproximant, EmptyEnsemble, InsufficientTerms, RootFindingFailure,
    SeriesExtender, Singularity, SingularitySummary, da_singularities, default_grid,
    extend_series, fit_da, fit_grid, nearest_pair, summarize_singularities,
)
from .estimators import (
    SingularSystem, Triple, ZeroCoefficient, alpha_estimates, beta_refine,
    extrapolate_intercepts, intercept_abscissa, linear_intercepts, ratios,
    three_point_fit, trend_minimum,
)
from .precision import DEFAULT_DPS, get_precision, set_precision
from .series import eulerian_map_series, mu_constants, parse_mu, test_series

set_precision(DEFAULT_DPS)
