"""Minimum peak side-lobe level sequence design and chaotic waveform sets."""

from .chaos import (ChaoticParams, bernoulli_sequence, chaotic_init,
                    lyapunov_estimate, modified_bernoulli_sequence)
from .core import (ComplexSequence, CorrelationProfile, MetricsReport,
                   autocorrelation, barker13, ccp, chebyshev_norm, chu,
                   compute_metrics, cross_correlation, golomb, lex_compare,
                   lex_max, lex_min, welch_bound)
from .factorization import (ConvolutionMatrix, RandomSketch, UnitaryFactor,
                            build_convolution_matrix, exact_unitary_factor,
                            gather_mu, randomized_unitary_factor)
from .geometry import (CircleSolution, PointSet, lex_midpoint, oracle_circle,
                       qp_circle, real_midpoint, rectangle_center,
                       subgradient_circle)
from .mimo import (CCPStatistics, GeneratedSet, WaveformSet, WelchAudit,
                   ccp_statistics, generate_set, welch_audit)
from .solver import (Constraint, DesignResult, InitSpec, SolverConfig,
                     apply_constraint, build_initialization, design,
                     stop_check)

__version__ = "0.1.0"

__all__ = [
    "ChaoticParams", "bernoulli_sequence", "chaotic_init",
    "lyapunov_estimate", "modified_bernoulli_sequence",
    "ComplexSequence", "CorrelationProfile", "MetricsReport",
    "autocorrelation", "barker13", "ccp", "chebyshev_norm", "chu",
    "compute_metrics", "cross_correlation", "golomb", "lex_compare",
    "lex_max", "lex_min", "welch_bound",
    "ConvolutionMatrix", "RandomSketch", "UnitaryFactor",
    "build_convolution_matrix", "exact_unitary_factor", "gather_mu",
    "randomized_unitary_factor",
    "CircleSolution", "PointSet", "lex_midpoint", "oracle_circle",
    "qp_circle", "real_midpoint", "rectangle_center", "subgradient_circle",
    "CCPStatistics", "GeneratedSet", "WaveformSet", "WelchAudit",
    "ccp_statistics", "generate_set", "welch_audit",
    "Constraint", "DesignResult", "InitSpec", "SolverConfig",
    "apply_constraint", "build_initialization", "design", "stop_check",
]
