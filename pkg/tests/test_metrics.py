"""Anchored growth ratios, error metrics, and report serialization."""
from __future__ import annotations

from fractions import Fraction

import pytest

from asymfit import (
    ALTERNATING,
    AsymptoticExponent,
    FitConfig,
    LengthError,
    PrecisionContext,
    SeriesTable,
    ZeroCoefficient,
    build_report,
    compare_growth,
    default_anchors,
    emit_reports,
    exact_ratios,
    gen_partitions,
    gen_rect_d1,
    linf_error,
    model_ratios,
    parse_reports_json,
)
from helpers import rel_err, scale_table, synthetic_table

CTX = PrecisionContext(25)
D1_K = AsymptoticExponent(CTX.ln(4), Fraction(-3, 2), Fraction(-1, 8), Fraction(0))

# published exponent data for the square lattice, five digits each
RECT_D2_K = (
    Fraction(24195, 10000),
    Fraction(-18347, 10000),
    Fraction(-11190, 100000),
    Fraction(-46586, 100000),
)
RECT_D2_Q = (7653, 9453, 10623)


def test_default_anchors():
    assert default_anchors(20) == ((8, 12), (12, 16), (16, 20))
    assert default_anchors(25) == ((8, 12), (12, 16), (16, 20))
    assert default_anchors(19) == ((8, 12), (12, 16), (15, 19))


def test_exact_ratios_d1():
    t = gen_rect_d1(20)
    ratios = exact_ratios(t, ((8, 12), (12, 16), (16, 20)))
    assert ratios[0] == Fraction(2704156, 19305)
    assert all(isinstance(q, Fraction) for q in ratios)


def test_exact_ratios_constant():
    vals = tuple(Fraction((-1) ** (n + 1)) for n in range(1, 21))
    t = SeriesTable(vals, sign=ALTERNATING)
    assert exact_ratios(t, default_anchors(20)) == (1, 1, 1)


def test_exact_ratios_zero_gate():
    vals = tuple(Fraction(0) if n == 12 else Fraction((-1) ** (n + 1)) for n in range(1, 21))
    t = SeriesTable(vals, sign=ALTERNATING)
    with pytest.raises(ZeroCoefficient):
        exact_ratios(t, default_anchors(20))


def test_model_ratios_zero_exponent():
    zero = AsymptoticExponent(0, 0, 0, 0)
    assert model_ratios(zero, default_anchors(20), CTX) == (1, 1, 1)


def test_model_ratios_published_square_lattice():
    got = model_ratios(
        AsymptoticExponent(*(CTX.real(k) for k in RECT_D2_K)),
        default_anchors(20),
        CTX,
    )
    for value, expected in zip(got, RECT_D2_Q):
        # expectation carries four published digits
        assert rel_err(CTX.real(expected), value) < CTX.real(Fraction(2, 10**4))


def test_linf_error_synthetic_is_tiny():
    params = (Fraction(3, 10), Fraction(6, 5), Fraction(-3, 2), Fraction(-1, 10), Fraction(1, 20))
    t = synthetic_table(params, 1, 20, CTX)
    k = AsymptoticExponent(*(CTX.real(p) for p in params[1:]))
    err = linf_error(t, k, ctx=CTX)
    assert err < CTX.real(Fraction(1, 10**20))


def test_linf_error_d1_exact_exponent():
    err = linf_error(gen_rect_d1(20), D1_K, ctx=CTX)
    assert 0 < err < CTX.real(Fraction(1, 10**4))


def test_linf_error_respects_lower():
    t = gen_rect_d1(20)
    wide = linf_error(t, D1_K, lower=2, ctx=CTX)
    narrow = linf_error(t, D1_K, lower=16, ctx=CTX)
    assert narrow <= wide


def test_build_report_d1():
    rpt = build_report(gen_rect_d1(20), FitConfig(r=6), CTX)
    assert rpt.lattice.name == "rect-d1"
    assert rpt.r == 6 and rpt.nmax == 20
    assert rpt.anchors == ((8, 12), (12, 16), (16, 20))
    assert rpt.c.c[:3] == (4, -6, 2)
    assert rpt.Q[0] == Fraction(2704156, 19305)
    # the fitted polynomial is exact, so the model must track the data tightly
    assert rpt.linf < CTX.real(Fraction(1, 10**4))
    bound = (1 + rpt.linf) ** 4 - 1
    for bigq, qj in zip(rpt.Q, rpt.q):
        assert abs(CTX.real(bigq) / qj - 1) <= bound


def test_build_report_short_table_moves_third_anchor():
    t = gen_rect_d1(19)
    rpt = build_report(t, FitConfig(r=6), CTX)
    assert rpt.nmax == 19
    assert rpt.anchors[2] == (15, 19)


def test_report_scale_invariance():
    t = gen_rect_d1(20)
    scaled = scale_table(t, Fraction(7, 3))
    a = build_report(t, FitConfig(r=6), CTX)
    b = build_report(scaled, FitConfig(r=6), CTX)
    assert a.c == b.c
    assert a.q == b.q and a.Q == b.Q
    assert a.k.k0 == b.k.k0 and a.k.k1 == b.k.k1 and a.k.k2 == b.k.k2
    # only the prefactor differs, and growth ratios ignore it entirely
    assert a.k.k_minus1 == b.k.k_minus1


def test_compare_growth():
    r1 = build_report(gen_rect_d1(20), FitConfig(r=6), CTX)
    r2 = build_report(gen_rect_d1(20), FitConfig(r=5), CTX)
    rows = compare_growth([r1, r2, r1])
    assert len(rows) == 3
    gaps = [row[2] for row in rows]
    assert gaps == sorted(gaps)
    assert gaps[0] == 0  # the self pair
    with pytest.raises(LengthError):
        compare_growth([r1])


def test_emit_text_shape():
    rpt = build_report(gen_rect_d1(20), FitConfig(r=6), CTX)
    text = emit_reports([rpt], "text")
    assert text.startswith("parameter")
    lines = text.splitlines()
    assert any(line.startswith("c0") for line in lines)
    assert any(line.startswith("k_minus1") for line in lines)
    assert any(line.startswith("linf") for line in lines)
    # no trailing whitespace anywhere
    assert all(line == line.rstrip() for line in lines)


def test_emit_csv_header_only_when_empty():
    assert emit_reports([], "csv") == "parameter\n"


def test_emit_csv_two_lattices():
    a = build_report(gen_rect_d1(20), FitConfig(r=6), CTX)
    b = build_report(gen_partitions(20), FitConfig(r=6), CTX)
    csv_text = emit_reports([a, b], "csv")
    header = csv_text.splitlines()[0]
    assert header == "parameter,rect-d1,partitions"


def test_json_round_trip():
    originals = [
        build_report(gen_rect_d1(20), FitConfig(r=6), CTX),
        build_report(gen_rect_d1(20), FitConfig(r=4, nmax=18), CTX),
    ]
    blob = emit_reports(originals, "json")
    parsed = parse_reports_json(blob)
    assert list(parsed) == originals
    # and the re-emission is byte identical
    assert emit_reports(parsed, "json") == blob


def test_json_round_trip_preserves_exact_values():
    rpt = build_report(gen_rect_d1(20), FitConfig(r=6), CTX)
    parsed = parse_reports_json(emit_reports([rpt], "json"))[0]
    assert parsed.Q[0] == Fraction(2704156, 19305)
    assert isinstance(parsed.c.c[0], Fraction)
    assert parsed.k.k0 == Fraction(-3, 2)
