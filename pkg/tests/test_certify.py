from fractions import Fraction

import mpmath
import pytest
from conftest import mp

from copson.certify import (
    PrecisionPolicy,
    _bisect_positive,
    alpha_grid,
    certify_dominance,
    certify_identity,
    certify_lemma,
    scan_alpha,
)
from copson.core import IntervalScalar, State
from copson.errors import AlphaOutOfRange, DomainNotContained, RangeError, UnknownLemma
from copson.lemmas import REGISTRY, S_ALPHA, LemmaEntry, LemmaKind
from copson.sequences import LINEAR, UNIT, make_family, power_family, table_family
from copson.weights import power_weight

F = Fraction
POLY_IDS = [k for k, e in REGISTRY.items() if e.kind is LemmaKind.POLYNOMIAL_EXACT]
TRANS_IDS = [k for k, e in REGISTRY.items() if e.kind is LemmaKind.TRANSCENDENTAL_INTERVAL and not e.needs_alpha]


@pytest.mark.parametrize("lemma_id", POLY_IDS)
def test_polynomial_lemmas_agree_with_exact_grid(lemma_id):
    entry = REGISTRY[lemma_id]
    v = certify_lemma(lemma_id)
    assert v.state is State.POSITIVE and v.method.value == "SturmExact"
    a, b = entry.domain
    assert all(entry.poly(a + i * (b - a) / 1000) > 0 for i in range(1001))


@pytest.mark.parametrize("lemma_id", TRANS_IDS)
def test_transcendental_lemmas(lemma_id):
    v = certify_lemma(lemma_id)
    assert v.state is State.POSITIVE and v.method.value == "IntervalSubdivision"
    assert v.subdivisions >= 1


@pytest.mark.parametrize("alpha", ["17/50", "1/2", "9/10"])
def test_lemma35_gap(alpha):
    assert certify_lemma("lemma35_gap", params={"alpha": alpha}).positive


def test_s_alpha_endpoint_value():
    assert S_ALPHA(F(17, 100)) == F(20961, 125000)


def test_transcendental_enclosures_match_mpmath():
    a = F(17, 50)
    x = mp(a)
    g = mpmath.log(8 * x * (2 - x)) - mpmath.log((3 - x) * (1 + x)) - (1 - x) / 2 * mpmath.log(2)
    got = REGISTRY["G_1750"].func(IntervalScalar.exact(a), {})
    lo, hi = got.bounds()
    assert mp(lo) <= g <= mp(hi) and g > 0
    t = 1 + (mpmath.power(3, x) - mpmath.power(3, (x + 1) / 2)) / 2 - (x - 1) ** 2 / 4
    lo, hi = REGISTRY["T_linear"].func(IntervalScalar.exact(a), {}).bounds()
    assert mp(lo) <= t <= mp(hi)


def test_lemma_errors():
    with pytest.raises(UnknownLemma):
        certify_lemma("nope")
    with pytest.raises(DomainNotContained):
        certify_lemma("H", (0, 1))
    with pytest.raises(DomainNotContained):
        certify_lemma("lemma35_gap", params={"alpha": "1/10"})
    with pytest.raises(ValueError):
        certify_lemma("lemma35_gap")
    with pytest.raises(UnknownLemma):
        certify_identity("nope")


def test_identities():
    assert certify_identity("M1H") and certify_identity("J2f")


def test_bisection_finds_a_negative_point():
    entry = LemmaEntry("probe", LemmaKind.TRANSCENDENTAL_INTERVAL, (F(0), F(1)), "x - 1/3", func=lambda X, p: X - F(1, 3))
    state, _, witness = _bisect_positive(entry, F(0), F(1), {}, 64)
    assert state is State.NONPOSITIVE and witness < F(1, 3)


def test_bisection_reports_undecided_at_a_double_root():
    entry = LemmaEntry(
        "probe", LemmaKind.TRANSCENDENTAL_INTERVAL, (F(0), F(1)), "(x - 1/3)^2", func=lambda X, p: (X - F(1, 3)).square()
    )
    state, _, witness = _bisect_positive(entry, F(0), F(1), {}, 32)
    assert state is State.UNDECIDED and witness[0] <= F(1, 3) <= witness[1]


# -- dominance ---------------------------------------------------------------


def test_unit_alpha0_minimum_at_the_end():
    rep = certify_dominance(make_family(UNIT, 1000), 0, 1, 1000)
    assert rep.verdict.positive and rep.min_margin[0] == 1000
    assert rep.verdict.method.value == "PointwiseInterval"


def test_linear_threshold_alpha():
    assert certify_dominance(make_family(LINEAR, 10**4), F(17, 50), 1, 10**4).verdict.positive


def test_decreasing_family():
    assert certify_dominance(make_family(power_family(-1), 1000), F(1, 3), 1, 1000).verdict.positive


def test_oscillating_table_is_rigorously_nonpositive():
    seq = make_family(table_family([1, 100] * 10), 19)
    rep = certify_dominance(seq, F(1, 2), 1, 19)
    assert rep.verdict.state is State.NONPOSITIVE
    n = rep.verdict.witness
    # independent check of the sign at the witness
    a = mpmath.mpf(1) / 2
    q, q1, Q, Qm = (mp(v) for v in (seq.q(n), seq.q(n + 1), seq.Q(n), seq.Q(n - 1)))
    g = 1 + q1 / Q
    w = Q**a / q * (1 + q / q1 * (g**a - g ** ((1 + a) / 2)) - (Qm / Q) ** ((1 - a) / 2))
    assert w - (1 - a) ** 2 / 4 * q / Q ** (2 - a) <= 0


def test_dominance_errors():
    seq = make_family(UNIT, 10)
    with pytest.raises(RangeError):
        certify_dominance(seq, 0, 1, 11)
    with pytest.raises(RangeError):
        certify_dominance(seq, 0, 5, 4)
    with pytest.raises(AlphaOutOfRange):
        certify_dominance(seq, 1, 1, 5)


@pytest.mark.parametrize("alpha", [F(0), F(1, 3), F(9, 10)])
def test_master_route_agrees(alpha):
    seq = make_family(UNIT, 300)
    a = certify_dominance(seq, alpha, 1, 300)
    b = certify_dominance(seq, alpha, 1, 300, route="master")
    assert a.verdict == b.verdict and a.min_margin[0] == b.min_margin[0]


def test_verdict_soundness_under_more_precision():
    seq = make_family(LINEAR, 500)
    for start in (64, 128, 512):
        assert certify_dominance(seq, F(1, 2), 1, 500, PrecisionPolicy(start, 2048)).verdict.positive


def test_parallel_matches_serial():
    seq = make_family(LINEAR, 400)
    a = certify_dominance(seq, F(3, 4), 1, 400, jobs=1)
    b = certify_dominance(seq, F(3, 4), 1, 400, jobs=2)
    assert a.to_json() == b.to_json()


@pytest.mark.parametrize("alpha", [F(0), F(1, 2), F(9, 10)])
def test_normalized_margin_approaches_sharp_constant(alpha):
    c = (1 - alpha) ** 2 / 4
    for n in (1, 2, 10, 100, 1000, 10**4):
        scaled = power_weight(alpha, n) * IntervalScalar.exact(n).pow_rational(2 - alpha)
        assert scaled.lo > c
    assert scaled.hi - c < F(1, 1000)


def test_scaling_invariance_of_verdict():
    base = make_family(LINEAR, 1000)
    scaled = make_family(LINEAR.scaled(F(7, 3)), 1000)
    a = certify_dominance(base, F(1, 2), 1, 1000)
    b = certify_dominance(scaled, F(1, 2), 1, 1000)
    assert a.verdict.state == b.verdict.state and a.min_margin[0] == b.min_margin[0]


def test_precision_policy(monkeypatch):
    assert list(PrecisionPolicy(128, 1024).ladder()) == [128, 256, 512, 1024]
    assert list(PrecisionPolicy(100, 300).ladder()) == [100, 200, 300]
    monkeypatch.setenv("COPSON_PRECISION_CAP", "512")
    assert PrecisionPolicy.from_env().cap == 512
    with pytest.raises(ValueError):
        PrecisionPolicy(256, 128)


# -- scans -------------------------------------------------------------------


def test_alpha_grid_is_exact_and_uniform():
    g = alpha_grid(F(0), F(99, 100), 100)
    assert len(g) == 100 and g[0] == 0 and g[-1] == F(99, 100) and g[1] == F(1, 100)


def test_cubic_scan_all_pass():
    rep = scan_alpha(make_family("cubic", 200), 0, F(1, 2), 11, 200)
    assert rep.boundary_bracket == "all-pass"


def test_linear_scan_passes_above_threshold():
    rep = scan_alpha(make_family(LINEAR, 300), 0, F(99, 100), 34, 300)
    assert all(v.positive for a, v in zip(rep.grid, rep.verdicts) if a >= F(17, 50))


def test_scan_bracket_on_failure():
    seq = make_family(table_family([1, F(1, 1000), 1000]), 2)
    rep = scan_alpha(seq, 0, F(9, 10), 10, 2)
    fail_max, pass_min = rep.boundary_bracket
    assert fail_max == F(9, 10) and pass_min == 0
    assert rep.to_json()["boundary_bracket"] == ["9/10", "0/1"]


def test_scan_errors():
    seq = make_family(UNIT, 10)
    with pytest.raises(AlphaOutOfRange):
        scan_alpha(seq, 0, 1, 5, 10)
    with pytest.raises(ValueError):
        scan_alpha(seq, F(1, 2), F(1, 4), 5, 10)
    with pytest.raises(ValueError):
        scan_alpha(seq, 0, F(1, 2), 1, 10)
