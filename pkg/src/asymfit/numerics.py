"""Exact-rational and configurable-precision real arithmetic, plus the dense solver.

Rationals are plain ``fractions.Fraction`` (always lowest terms, positive
denominator).  Reals are mpmath floats owned by a ``PrecisionContext``; each
context carries guard digits beyond its nominal precision so ln/exp/pow stay
correct to well under one unit in the last retained digit.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence, Union

from mpmath.ctx_mp import MPContext

from .errors import DomainError, SingularMatrix

# Extra working digits beyond the nominal precision.  They absorb rounding in
# multi-step formulas so results are trustworthy at the retained digit count.
GUARD_DIGITS = 15

Rational = Union[int, Fraction]
# Reals are context-specific mpmath types; annotate loosely by intent.
Number = Union[int, Fraction, object]


def is_rational(x) -> bool:
    return isinstance(x, (int, Fraction))


def is_real(x) -> bool:
    return hasattr(x, "_mpf_")


def fraction_from_real(x) -> Fraction:
    """Exact rational value of an mpmath float (every finite mpf is dyadic)."""
    sign, man, exp, _ = x._mpf_
    man = int(man)
    if man == 0 and exp != 0:
        raise DomainError("cannot convert an infinite or nan value to a rational")
    value = Fraction(man) * Fraction(2) ** exp
    return -value if sign else value


class PrecisionContext:
    """Decimal working precision for all real-valued evaluation.

    ``significant_digits`` is the nominal precision of delivered results;
    arithmetic internally runs with ``GUARD_DIGITS`` extra digits.
    """

    def __init__(self, significant_digits: int = 25):
        significant_digits = int(significant_digits)
        if significant_digits < 10:
            raise DomainError("precision must be at least 10 significant digits")
        self.significant_digits = significant_digits
        self._mp = MPContext()
        self._mp.dps = significant_digits + GUARD_DIGITS

    def __repr__(self):
        return f"PrecisionContext({self.significant_digits})"

    @property
    def working_dps(self) -> int:
        return self._mp.dps

    @property
    def pivot_threshold(self):
        """Magnitude below which a real pivot counts as zero."""
        return self._mp.mpf(10) ** (5 - self.significant_digits)

    def real(self, x):
        """Convert a rational, float, decimal string, or real to this context."""
        if isinstance(x, Fraction):
            return self._mp.mpf(x.numerator) / self._mp.mpf(x.denominator)
        if isinstance(x, (int, float, str)) or is_real(x):
            return self._mp.mpf(x)
        raise TypeError(f"cannot convert {type(x).__name__} to a real")

    def ln(self, x):
        v = self.real(x)
        if v <= 0:
            raise DomainError(f"ln requires a positive argument, got {v}")
        return self._mp.ln(v)

    def exp(self, x):
        return self._mp.exp(self.real(x))

    def power(self, base, exponent) -> Number:
        """base**exponent; exact when base is rational and exponent an integer."""
        if is_rational(base) and isinstance(exponent, int):
            if base == 0 and exponent < 0:
                raise DomainError("zero cannot be raised to a negative power")
            return Fraction(base) ** exponent
        b = self.real(base)
        e = self.real(exponent)
        if b < 0 and e != self._mp.floor(e):
            raise DomainError("negative base requires an integer exponent")
        if b == 0 and e < 0:
            raise DomainError("zero cannot be raised to a negative power")
        return self._mp.power(b, e)

    def nstr(self, x, digits: int | None = None) -> str:
        """Decimal string with the given significant digits (default: nominal)."""
        if digits is None:
            digits = self.significant_digits
        return self._mp.nstr(self.real(x), digits)

    def emit_str(self, x) -> str:
        """Decimal string with enough digits to reparse bit-identically."""
        return self._mp.nstr(self.real(x), self.working_dps + 5)


DEFAULT_CONTEXT = PrecisionContext()


def transcendental(kind: str, args: Sequence, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Dispatch ln/exp/pow by name; convenience over the context methods."""
    if kind == "ln":
        (x,) = args
        return ctx.ln(x)
    if kind == "exp":
        (x,) = args
        return ctx.exp(x)
    if kind == "pow":
        base, exponent = args
        return ctx.power(base, exponent)
    raise DomainError(f"unknown transcendental kind {kind!r}")


def solve_linear_system(matrix, rhs, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Solve the square system matrix @ x = rhs.

    All-rational input is solved exactly (fraction-free elimination on the
    denominator-cleared integer system); otherwise elimination runs in reals
    at the widest precision present, with partial pivoting on magnitude.
    Raises SingularMatrix on a zero or below-threshold pivot.
    """
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix) or len(rhs) != n:
        raise DomainError("matrix must be square and match the rhs length")
    entries = [e for row in matrix for e in row] + list(rhs)
    if all(is_rational(e) for e in entries):
        return _solve_exact(matrix, rhs)
    return _solve_real(matrix, rhs, ctx)


def _solve_exact(matrix, rhs):
    n = len(matrix)
    # Clear denominators per row: scaling an augmented row leaves x unchanged.
    aug = []
    for row, b in zip(matrix, rhs):
        vals = [Fraction(v) for v in row] + [Fraction(b)]
        scale = math.lcm(*(v.denominator for v in vals))
        aug.append([int(v * scale) for v in vals])

    # Bareiss fraction-free elimination; every division below is exact.
    prev = 1
    for k in range(n - 1):
        if aug[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if aug[i][k] != 0), None)
            if swap is None:
                raise SingularMatrix(f"zero pivot in column {k}")
            aug[k], aug[swap] = aug[swap], aug[k]
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                aug[i][j] = (aug[i][j] * aug[k][k] - aug[i][k] * aug[k][j]) // prev
            aug[i][k] = 0
        prev = aug[k][k]
    if aug[n - 1][n - 1] == 0:
        raise SingularMatrix(f"zero pivot in column {n - 1}")

    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(aug[i][n])
        for j in range(i + 1, n):
            acc -= aug[i][j] * x[j]
        x[i] = acc / aug[i][i]
    return x


def _solve_real(matrix, rhs, ctx: PrecisionContext):
    n = len(matrix)
    entries = [e for row in matrix for e in row] + list(rhs)
    dps = ctx.working_dps
    for e in entries:
        if is_real(e):
            dps = max(dps, type(e).context.dps)
    if dps > ctx.working_dps:
        mp = MPContext()
        mp.dps = dps
    else:
        mp = ctx._mp

    def conv(v):
        if isinstance(v, Fraction):
            return mp.mpf(v.numerator) / mp.mpf(v.denominator)
        return mp.mpf(v)

    aug = [[conv(v) for v in row] + [conv(b)] for row, b in zip(matrix, rhs)]
    tol = mp.mpf(10) ** (5 - ctx.significant_digits)

    for k in range(n):
        pivot_row = max(range(k, n), key=lambda i: abs(aug[i][k]))
        if abs(aug[pivot_row][k]) <= tol:
            raise SingularMatrix(f"pivot below threshold in column {k}")
        if pivot_row != k:
            aug[k], aug[pivot_row] = aug[pivot_row], aug[k]
        for i in range(k + 1, n):
            factor = aug[i][k] / aug[k][k]
            for j in range(k, n + 1):
                aug[i][j] -= factor * aug[k][j]

    x = [mp.mpf(0)] * n
    for i in range(n - 1, -1, -1):
        acc = aug[i][n]
        for j in range(i + 1, n):
            acc -= aug[i][j] * x[j]
        x[i] = acc / aug[i][i]
    return x
