"""Model-side evaluators: exponential form and the product-form approximant."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .duality import AsymptoticExponent
from .errors import DomainError, LengthError, ZeroCoefficient
from .fitting import RatioPolynomial
from .numerics import DEFAULT_CONTEXT, PrecisionContext
from .series import ALTERNATING, SeriesTable


@dataclass(frozen=True)
class ApproximantSpec:
    """Product-form data: degree, takeover index k_anchor, and the c-vector."""

    r: int
    k_anchor: int
    c: RatioPolynomial

    def __post_init__(self):
        if self.r < 1:
            raise DomainError("degree r must be at least 1")
        if self.k_anchor < 2:
            raise DomainError("k_anchor must be at least 2 (needs b(k_anchor-1))")
        if len(self.c.c) != self.r + 1:
            raise LengthError(f"degree {self.r} needs {self.r + 1} coefficients")


def default_anchor(nmax: int, r: int) -> int:
    """First fitted window index, so the product never leaves fitted territory."""
    return nmax - r


def log_exp_core(
    k: AsymptoticExponent, n: int, ctx: PrecisionContext = DEFAULT_CONTEXT
):
    """Constant-free part of the log-magnitude: k_minus1*n + k0*ln n + k1/n + k2/n**2."""
    if n < 1:
        raise DomainError("n must be a positive integer")
    rn = ctx.real(n)
    return ctx.real(k.k_minus1) * rn + ctx.real(k.k0) * ctx.ln(rn) \
        + ctx.real(k.k1) / rn + ctx.real(k.k2) / rn**2


def log_exp_form(
    k: AsymptoticExponent, n: int, ctx: PrecisionContext = DEFAULT_CONTEXT
):
    """Log-magnitude of the model B(n), including ln_c when present."""
    val = log_exp_core(k, n, ctx)
    if k.ln_c is not None:
        val = val + ctx.real(k.ln_c)
    return val


def model_ratio(
    k: AsymptoticExponent, n: int, ctx: PrecisionContext = DEFAULT_CONTEXT
):
    """Magnitude of B(n)/B(n-1); built from the constant-free parts only."""
    if n < 2:
        raise DomainError("a ratio needs n >= 2")
    return ctx.exp(log_exp_core(k, n, ctx) - log_exp_core(k, n - 1, ctx))


def eval_product_form(series: SeriesTable, spec: ApproximantSpec, n: int):
    """Approximant value: b(n) below the anchor, anchored ratio product above.

    Above the anchor the value is b(k_anchor-1) times the polynomial ratio at
    every index k_anchor..n, with the alternating sign restored per step. Exact
    c-vectors telescope exactly.
    """
    if n < 1:
        raise DomainError("n must be a positive integer")
    if n < spec.k_anchor:
        return series[n]
    acc = series[spec.k_anchor - 1]
    sgn = -1 if series.sign == ALTERNATING else 1
    for i in range(spec.k_anchor, n + 1):
        acc = sgn * spec.c.evaluate(i) * acc
    return acc


@dataclass(frozen=True)
class AccuracyReport:
    """Worst-case relative mismatch of an approximant against its series."""

    passed: bool
    epsilon: object
    worst_index: int
    worst_error: object


def verify_accuracy_bound(
    series: SeriesTable, approx: Mapping[int, object], epsilon
) -> AccuracyReport:
    """Check |b(i) - bhat(i)|/|b(i)| <= epsilon at every index of the table."""
    if epsilon <= 0:
        raise DomainError("epsilon must be positive")
    worst_index = series.first
    worst_error = None
    for i in series.indices():
        b = series[i]
        if b == 0:
            raise ZeroCoefficient(i)
        err = abs(b - approx[i]) / abs(b)
        if worst_error is None or err > worst_error:
            worst_index, worst_error = i, err
    return AccuracyReport(worst_error <= epsilon, epsilon, worst_index, worst_error)
