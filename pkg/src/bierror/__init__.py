"""Bi Error hypothesis testing: Youden-optimal thresholds for the sum α + β."""

from .comparison import (
    ComparisonPoint, FCaseStudy, GridRange, SweepConfig, XiDecomposition, cohens_d, f_case_study,
    sweep_delta, sweep_phi, sweep_sigma2, xi, xi_erf_decomposition,
)
from .core import (
    ErrorProfile, HypothesisPair, Method, Tail, Theorem1Report, ThresholdResult, alpha_threshold,
    bi_error, check_theorem1, youden, youden_closed_form, youden_numeric, zeta_curve,
)
from .decision import DecisionConfig, DecisionReport, Outcome, Reason, run_bi_error_method, run_nhst
from .distributions import (
    DistributionSpec, Kind, cauchy, cdf, fisher_f, laplace, logistic, normal, pdf, quantile, sample, sf,
    student_t,
)
from .errors import DegenerateSampleError, DomainError, NumericalError, TheoremInapplicable
from .rng import RngState
from .simulation import RejectionTable, Rule, SimConfig, TableMethod, run_simulation

__version__ = "0.1.0"

__all__ = [
    "ComparisonPoint", "DecisionConfig", "DecisionReport", "DegenerateSampleError", "DistributionSpec",
    "DomainError", "ErrorProfile", "FCaseStudy", "GridRange", "HypothesisPair", "Kind", "Method",
    "NumericalError", "Outcome", "Reason", "RejectionTable", "RngState", "Rule", "SimConfig",
    "SweepConfig", "TableMethod", "Tail", "Theorem1Report", "TheoremInapplicable", "ThresholdResult",
    "XiDecomposition", "alpha_threshold", "bi_error", "cauchy", "cdf", "check_theorem1", "cohens_d",
    "f_case_study", "fisher_f", "laplace", "logistic", "normal", "pdf", "quantile", "run_bi_error_method",
    "run_nhst", "run_simulation", "sample", "sf", "student_t", "sweep_delta", "sweep_phi", "sweep_sigma2",
    "xi", "xi_erf_decomposition", "youden", "youden_closed_form", "youden_numeric", "zeta_curve",
]
