"""Traces of products of Toeplitz matrices vs their integral limits.

Thin wrapper over the C++ core. The main entry points are the Symbol
factories, fourier_table/limit_integral, the trace engines behind delta(),
and the verification helpers (dirichlet bounds, lemma checks,
divergence_demo).
"""

from ._core import (  # noqa: F401
    CheckResult,
    DenseToeplitz,
    DivergenceReport,
    EvalAtSingularityError,
    ExperimentConfig,
    FourierTable,
    HolderEstimate,
    Lemma2Result,
    ModulusCurve,
    NonIntegrablePowerError,
    NonIntegrableProductError,
    OutOfRegimeError,
    QuadratureNoConvergeError,
    QuadratureSpec,
    RateFit,
    RegimeViolationError,
    SingularityProfile,
    SweepRow,
    Symbol,
    SymbolKind,
    ToeplitzOperator,
    ToeptraceError,
    TraceEngine,
    TraceRecord,
    Verdict,
    VerifyReport,
    __version__,
    build_dense,
    check_dirichlet_bound,
    delta,
    delta_integral_representation,
    dirichlet,
    divergence_demo,
    fit_rate,
    fourier_coeff,
    fourier_table,
    lemma2_identity,
    lemma3_Bi,
    limit_integral,
    lipschitz_fit,
    lp_inequality_check,
    modulus_continuity,
    phi,
    phi_holder_estimate,
    preset,
    preset_list,
    run_sweep,
    theorem3_gamma,
    trace_nu1_closed,
    trace_product_dense,
    trace_product_matfree,
    verify_all,
)
