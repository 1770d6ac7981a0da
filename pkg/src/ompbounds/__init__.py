"""OMP support recovery: solver, coherence-based probability bounds, Monte Carlo."""

from .bounds import (
    AlphaBeta,
    BoundBreakdown,
    GuaranteeInputs,
    alpha_from_beta,
    bernstein_tail,
    beta_from_alpha,
    estimate_beta,
    lemma1_tail,
    thm1_condition,
    thm1_probability,
    thm2_bound,
    unit_correlation_max,
)
from .dictionary import Dictionary, build_identity_hadamard, fwht
from .montecarlo import ExperimentConfig, SweepResult, run_point, run_sweep
from .omp import (
    EnumerationLimitError,
    OmpResult,
    SingularSystemError,
    exhaustive_l0,
    omp,
    support_match,
)
from .signals import (
    Measurement,
    RngStream,
    SparseSignal,
    draw_sparse_signal,
    draw_support,
    synthesize,
)

__all__ = [
    "AlphaBeta",
    "BoundBreakdown",
    "Dictionary",
    "EnumerationLimitError",
    "ExperimentConfig",
    "GuaranteeInputs",
    "Measurement",
    "OmpResult",
    "RngStream",
    "SingularSystemError",
    "SparseSignal",
    "SweepResult",
    "alpha_from_beta",
    "bernstein_tail",
    "beta_from_alpha",
    "build_identity_hadamard",
    "draw_sparse_signal",
    "draw_support",
    "estimate_beta",
    "exhaustive_l0",
    "fwht",
    "lemma1_tail",
    "omp",
    "run_point",
    "run_sweep",
    "support_match",
    "synthesize",
    "thm1_condition",
    "thm1_probability",
    "thm2_bound",
    "unit_correlation_max",
]

__version__ = "0.1.0"
