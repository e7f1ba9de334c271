"""Dual transform between the ratio-polynomial c-vector and the exponent k-vector."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

from .errors import DomainError, LengthError
from .numerics import DEFAULT_CONTEXT, Number, PrecisionContext, is_rational

if TYPE_CHECKING:
    from .fitting import RatioPolynomial

# Sampling windows for randomized round-trip checks.
ROUND_TRIP_RANGES = {
    "k_minus1": (Fraction(1, 2), Fraction(6)),
    "k0": (Fraction(-4), Fraction(0)),
    "k1": (Fraction(-20), Fraction(20)),
    "k2": (Fraction(-20), Fraction(20)),
}


@dataclass(frozen=True)
class AsymptoticExponent:
    """Exponent vector (k_minus1, k0, k1, k2), optionally with the constant ln c."""

    k_minus1: Number
    k0: Number
    k1: Number
    k2: Number
    ln_c: Number | None = None

    def __post_init__(self):
        for name in ("k_minus1", "k0", "k1", "k2"):
            if getattr(self, name) is None:
                raise DomainError(f"exponent component {name} is required")

    def as_tuple(self) -> tuple:
        return (self.k_minus1, self.k0, self.k1, self.k2)


def k_from_c(
    c: "RatioPolynomial", ctx: PrecisionContext = DEFAULT_CONTEXT
) -> AsymptoticExponent:
    """Collect powers of 1/n in the ratio polynomial into exponent form.

    k0, k1, k2 are rational whenever the c-vector is; only k_minus1 = ln c0
    leaves the rationals.
    """
    if len(c.c) < 4:
        raise LengthError("need c0..c3 to form the exponent vector")
    c0, c1, c2, c3 = c.c[:4]
    if is_rational(c0):
        c0 = Fraction(c0)
    if not c0 > 0:
        raise DomainError("c0 must be positive (unsigned ratios grow)")
    k0 = c1 / c0
    k1 = -c2 / c0 + k0 / 2 + k0**2 / 2
    k2 = -c3 / (2 * c0) + k0**3 / 12 + k0**2 / 4 + (2 - 6 * k1) * k0 / 12 - k1 / 2
    return AsymptoticExponent(ctx.ln(c0), k0, k1, k2)


def c_from_k(k: AsymptoticExponent, ctx: PrecisionContext = DEFAULT_CONTEXT) -> tuple:
    """Leading ratio coefficients (c0, c1, c2) from the exponent vector."""
    c0 = ctx.exp(k.k_minus1)
    c1 = k.k0 * c0
    c2 = (-k.k1 + k.k0 / 2 + k.k0**2 / 2) * c0
    return (c0, c1, c2)


def c3_from_k(k: AsymptoticExponent, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Fourth ratio coefficient; algebraic inverse of the k2 relation."""
    c0 = ctx.exp(k.k_minus1)
    inner = -k.k2 + k.k0**3 / 12 + k.k0**2 / 4 + (2 - 6 * k.k1) * k.k0 / 12 - k.k1 / 2
    return 2 * c0 * inner
