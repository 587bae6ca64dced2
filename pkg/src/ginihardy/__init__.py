"""Gini means, quasideviation means and bounds on their Hardy constants."""

from .bounds import (
    BoundsReport,
    ConcaveHardyQuery,
    bounds_report,
    c_upper,
    concave_hardy_constant,
    hardy_lower_limit,
    pas_upper,
    residual_algebraic,
    residual_integral,
    trivial_upper,
)
from .empirical import (
    RatioResult,
    SequenceSpec,
    adversarial_search,
    generate,
    hardy_limit_empirical,
    hardy_ratio,
)
from .errors import (
    DomainError,
    HardyError,
    Inconsistent,
    InvalidSpec,
    MaxIterations,
    NoConvergence,
    NonFinite,
    NoSignChange,
    NotIntegrable,
    SignConditionViolated,
)
from .means import (
    Generator,
    GiniParams,
    check_sign_condition,
    concavized_generator,
    custom_generator,
    g_pq,
    gini_generator,
    gini_mean,
    quasideviation_mean,
    special_mean_m12,
    tau_pq,
)
from .numerics import Bracket, Tolerance, find_bracket, integrate, solve_root

__version__ = "0.1.0"
