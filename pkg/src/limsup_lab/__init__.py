"""limsup-lab: dimension formulas, series dichotomies and numerical
verifiers for limsup sets built from shrinking balls, rectangles and
plane neighborhoods."""

__version__ = "0.1.0"

from .core import (
    CANTOR_DIMENSION,
    NON_INCREASING,
    NON_MONOTONE,
    UNKNOWN,
    ApproxFunction,
    DimensionFunction,
    HypothesisReport,
    IndexFamily,
    PowerSequence,
    validate_hypotheses,
)
from .errors import (
    DegenerateBallError,
    DomainError,
    HypothesisError,
    LimsupLabError,
    PreconditionError,
    RangeError,
    SizeError,
    UnsupportedError,
)
from .series import (
    CONVERGES,
    DIVERGES,
    EXACT_EXPONENT,
    INCONCLUSIVE,
    INTEGRAL_TEST_LOG,
    NUMERIC_DIAGNOSTIC,
    ConvergenceExponent,
    PartialSumDiagnostics,
    SeriesSpec,
    SeriesVerdict,
    SingularValueSequence,
    build_series,
    cantor_lsv_series,
    classify,
    duffin_schaeffer_series,
    euler_totient_sieve,
    exponent_of_convergence,
    jarnik_series,
    kg_hausdorff_series,
    kg_series,
    khintchine_sim_series,
    partial_sum_diagnostics,
    power_radii_series,
    svf_regime,
    svf_sum_series,
)
from .transference import (
    BY_MODULUS,
    BY_PQ,
    BY_VECTOR_Q,
    FULL_MEASURE,
    HYPOTHESES_NOT_MET,
    ZERO_MEASURE,
    BallSpec,
    DichotomyVerdict,
    ResonantFamily,
    ThetaRule,
    TransformedSequence,
    ball_f_transform,
    ball_fg_transform,
    dichotomy_verdict,
    theta_transform,
    upsilon_transform,
)
from .formulas import (
    CounterexampleParams,
    ExponentVector,
    LinearMapSpec,
    MinFormula,
    affine_cover_dim,
    affinity_dim,
    cantor_critical,
    counterexample_params,
    jb_dim,
    levesley_bounds_nonmonotone,
    levesley_dim,
    random_cover_dim,
    rect_upper_bound,
    rynne_dim,
    similarity_dim,
    singular_value_fn,
    slicing_bounds,
    wwx_exponent,
)
from .generators import (
    CoverSpec,
    RandomCoverSample,
    approx_set_union,
    counterexample_psi,
    ifs_cover,
    random_cover,
    rationals,
)
from .estimators import (
    ContentSumReport,
    DimensionEstimate,
    EnergyResult,
    LowerOrderDiag,
    MeasureResult,
    box_count,
    content_sum_criterion,
    dim_fit,
    energy,
    lower_order_diag,
    natural_cover_estimate,
    tail_coverage,
    union_measure,
)

__all__ = [name for name in dir() if not name.startswith("_")]
