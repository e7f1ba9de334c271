"""asymfit: exponential-asymptotics fitting for alternating lattice series."""

from .approximant import (
    AccuracyReport,
    ApproximantSpec,
    default_anchor,
    eval_product_form,
    log_exp_core,
    log_exp_form,
    model_ratio,
    verify_accuracy_bound,
)
from .duality import (
    ROUND_TRIP_RANGES,
    AsymptoticExponent,
    c3_from_k,
    c_from_k,
    k_from_c,
)
from .errors import (
    AsymfitError,
    DomainError,
    LengthError,
    MissingAlpha,
    MissingIndex,
    ParseError,
    SignViolation,
    SingularMatrix,
    ZeroCoefficient,
)
from .fitting import (
    FitConfig,
    RatioPolynomial,
    ScanRow,
    convergence_scan,
    fit_ratio_polynomial,
    ratio_sign,
    solve_ideal,
)
from .metrics import (
    ComparisonReport,
    build_report,
    compare_growth,
    default_anchors,
    emit_reports,
    exact_ratios,
    format_display,
    format_full,
    linf_error,
    model_ratios,
    parse_number,
    parse_reports_json,
    report_from_dict,
    report_to_dict,
)
from .numerics import (
    DEFAULT_CONTEXT,
    GUARD_DIGITS,
    PrecisionContext,
    fraction_from_real,
    is_rational,
    is_real,
    solve_linear_system,
    transcendental,
)
from .series import (
    ALL_POSITIVE,
    ALTERNATING,
    AlphaTable,
    LatticeMeta,
    SeriesTable,
    SignReport,
    a_from_alpha,
    alpha_window,
    check_sign_pattern,
    entropy_density,
    expected_positive,
    gen_partitions,
    gen_rect_d1,
    parse_alpha_file,
    parse_series_file,
    serialize_series,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyReport",
    "ApproximantSpec",
    "AsymfitError",
    "AsymptoticExponent",
    "AlphaTable",
    "ALL_POSITIVE",
    "ALTERNATING",
    "ComparisonReport",
    "DEFAULT_CONTEXT",
    "DomainError",
    "FitConfig",
    "GUARD_DIGITS",
    "LatticeMeta",
    "LengthError",
    "MissingAlpha",
    "MissingIndex",
    "ParseError",
    "PrecisionContext",
    "RatioPolynomial",
    "ROUND_TRIP_RANGES",
    "ScanRow",
    "SeriesTable",
    "SignReport",
    "SignViolation",
    "SingularMatrix",
    "ZeroCoefficient",
    "a_from_alpha",
    "alpha_window",
    "build_report",
    "c3_from_k",
    "c_from_k",
    "check_sign_pattern",
    "compare_growth",
    "convergence_scan",
    "default_anchor",
    "default_anchors",
    "emit_reports",
    "entropy_density",
    "eval_product_form",
    "exact_ratios",
    "expected_positive",
    "fit_ratio_polynomial",
    "format_display",
    "format_full",
    "fraction_from_real",
    "gen_partitions",
    "gen_rect_d1",
    "is_rational",
    "is_real",
    "k_from_c",
    "linf_error",
    "log_exp_core",
    "log_exp_form",
    "model_ratio",
    "model_ratios",
    "parse_alpha_file",
    "parse_number",
    "parse_reports_json",
    "parse_series_file",
    "ratio_sign",
    "report_from_dict",
    "report_to_dict",
    "serialize_series",
    "solve_ideal",
    "solve_linear_system",
    "transcendental",
    "verify_accuracy_bound",
]
