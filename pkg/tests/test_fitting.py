"""Ratio fits, convergence scans, and the log-linear ideal solve."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest

from asymfit import (
    ALL_POSITIVE,
    ALTERNATING,
    DomainError,
    FitConfig,
    LatticeMeta,
    PrecisionContext,
    RatioPolynomial,
    SeriesTable,
    SignViolation,
    ZeroCoefficient,
    convergence_scan,
    fit_ratio_polynomial,
    gen_rect_d1,
    is_rational,
    ratio_sign,
    solve_ideal,
)
from helpers import rel_err, scale_table, synthetic_table

CTX = PrecisionContext(25)


def geometric_table(lam: Fraction, nmax: int) -> SeriesTable:
    vals = [(-lam) ** (n - 1) for n in range(1, nmax + 1)]
    return SeriesTable(tuple(vals), sign=ALTERNATING, meta=LatticeMeta(name="geo"))


def test_fit_config_validation():
    with pytest.raises(DomainError):
        FitConfig(r=0)
    with pytest.raises(DomainError):
        FitConfig(r=6, nmax=7)
    cfg = FitConfig(r=6, nmax=20)
    assert cfg.resolve(gen_rect_d1(20)) == (14, 20)
    with pytest.raises(DomainError):
        cfg.resolve(gen_rect_d1(19))


def test_ratio_polynomial_evaluate():
    poly = RatioPolynomial((Fraction(4), Fraction(-6), Fraction(2)))
    assert poly.r == 2
    assert poly.evaluate(2) == Fraction(4) - 3 + Fraction(1, 2)
    assert is_rational(poly.evaluate(20))
    with pytest.raises(DomainError):
        poly.evaluate(0)
    with pytest.raises(DomainError):
        RatioPolynomial(())


def test_fit_d1_exact():
    poly = fit_ratio_polynomial(gen_rect_d1(20), FitConfig(r=6, nmax=20))
    assert poly.c == (4, -6, 2, 0, 0, 0, 0)
    assert all(is_rational(v) for v in poly.c)
    assert poly.sign == ALTERNATING


def test_fit_constant_magnitude():
    vals = tuple(Fraction((-1) ** (n + 1)) for n in range(1, 13))
    t = SeriesTable(vals, sign=ALTERNATING)
    for r in (1, 2, 4):
        poly = fit_ratio_polynomial(t, FitConfig(r=r))
        assert poly.c == (1,) + (0,) * r


def test_fit_geometric_series():
    lam = Fraction(3, 7)
    t = geometric_table(lam, 12)
    for r in (1, 3, 5):
        poly = fit_ratio_polynomial(t, FitConfig(r=r))
        assert poly.c == (lam,) + (0,) * r


def test_fit_interpolates_window_ratios():
    rng = random.Random(411)
    for _ in range(10):
        vals = []
        prev = Fraction(1)
        vals.append(prev)
        for n in range(2, 16):
            prev = -prev * Fraction(rng.randint(1, 40), rng.randint(1, 9))
            vals.append(prev)
        t = SeriesTable(tuple(vals), sign=ALTERNATING)
        cfg = FitConfig(r=5, nmax=15)
        poly = fit_ratio_polynomial(t, cfg)
        nlo, nhi = cfg.resolve(t)
        for n in range(nlo, nhi + 1):
            assert poly.evaluate(n) == -t.ratio(n)


def test_fit_scale_invariance():
    t = gen_rect_d1(20)
    scaled = scale_table(t, Fraction(7, 3))
    a = fit_ratio_polynomial(t, FitConfig(r=4))
    b = fit_ratio_polynomial(scaled, FitConfig(r=4))
    assert a == b


def test_fit_positive_series():
    # all-positive tables flow through with sign +1
    t = SeriesTable(
        tuple(Fraction(2) ** (n - 1) for n in range(1, 10)), sign=ALL_POSITIVE
    )
    assert ratio_sign(t) == 1
    poly = fit_ratio_polynomial(t, FitConfig(r=2))
    assert poly.c == (2, 0, 0)


def test_fit_zero_coefficient():
    vals = (Fraction(1), Fraction(-1), Fraction(0), Fraction(-1), Fraction(1))
    t = SeriesTable(vals, sign=ALTERNATING)
    with pytest.raises(ZeroCoefficient):
        fit_ratio_polynomial(t, FitConfig(r=2, nmax=5))


def test_scan_d1_baseline_and_stabilization():
    rows = convergence_scan(gen_rect_d1(20), range(1, 7))
    assert rows[0].r == 1
    assert rows[0].c0 == Fraction(741, 200)
    assert rows[0].c1 is None
    for row in rows[1:]:
        assert (row.c0, row.c1) == (4, -6)


def test_scan_respects_requested_order():
    rows = convergence_scan(gen_rect_d1(20), [6, 2])
    assert [row.r for row in rows] == [6, 2]


def test_scan_window_errors():
    with pytest.raises(DomainError):
        convergence_scan(gen_rect_d1(20), [0])
    with pytest.raises(DomainError):
        convergence_scan(gen_rect_d1(5), [1], nmax=6)
    with pytest.raises(DomainError):
        convergence_scan(gen_rect_d1(5), [5])


def test_solve_ideal_recovers_synthetic_parameters():
    params = (
        Fraction(3, 10),
        Fraction(12, 10),
        Fraction(-15, 10),
        Fraction(-1, 10),
        Fraction(5, 100),
    )
    t = synthetic_table(params, 16, 20, CTX)
    k = solve_ideal(t, 20, CTX)
    recovered = (k.ln_c, k.k_minus1, k.k0, k.k1, k.k2)
    for want, got in zip(params, recovered):
        assert rel_err(CTX.real(want), got) < CTX.real(Fraction(1, 10**20))


def test_solve_ideal_constant_series():
    vals = tuple(Fraction((-1) ** (j + 1)) for j in range(1, 8))
    t = SeriesTable(vals, sign=ALTERNATING)
    k = solve_ideal(t, 7, CTX)
    for v in (k.ln_c, k.k_minus1, k.k0, k.k1, k.k2):
        assert abs(v) < CTX.real(Fraction(1, 10**20))


def test_solve_ideal_d1_matches_asymptotics():
    k = solve_ideal(gen_rect_d1(20), 20, CTX)
    targets = (CTX.ln(4), Fraction(-3, 2), Fraction(-1, 8), Fraction(0))
    tol = CTX.real(Fraction(1, 100))
    for got, want in zip((k.k_minus1, k.k0, k.k1, k.k2), targets):
        assert abs(got - CTX.real(want)) < tol


def test_solve_ideal_scale_shifts_only_constant():
    t = gen_rect_d1(20)
    s = Fraction(5, 2)
    base = solve_ideal(t, 20, CTX)
    shifted = solve_ideal(scale_table(t, s), 20, CTX)
    assert abs((shifted.ln_c - base.ln_c) - CTX.ln(s)) < CTX.real(Fraction(1, 10**25))
    for a, b in zip(base.as_tuple(), shifted.as_tuple()):
        assert abs(a - b) < CTX.real(Fraction(1, 10**25))


def test_solve_ideal_errors():
    with pytest.raises(DomainError):
        solve_ideal(gen_rect_d1(4), 4, CTX)
    bad = SeriesTable(
        (Fraction(1), Fraction(1), Fraction(1), Fraction(-1), Fraction(1)),
        sign=ALTERNATING,
    )
    with pytest.raises(SignViolation):
        solve_ideal(bad, 5, CTX)
    withzero = SeriesTable(
        (Fraction(1), Fraction(-1), Fraction(0), Fraction(-1), Fraction(1)),
        sign=ALTERNATING,
    )
    with pytest.raises(ZeroCoefficient):
        solve_ideal(withzero, 5, CTX)


def test_fit_deterministic():
    a = fit_ratio_polynomial(gen_rect_d1(20), FitConfig())
    b = fit_ratio_polynomial(gen_rect_d1(20), FitConfig())
    assert a == b
