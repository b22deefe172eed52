from fractions import Fraction

import mpmath
import pytest
from conftest import alphas, encloses
from hypothesis import given
from hypothesis import strategies as st

from copson.core import parse_rational, power_of_exact
from copson.errors import AlphaOutOfRange, EmptyTable, IndexBeyondNmax, NonpositiveEntry
from copson.sequences import (
    CUBIC,
    LINEAR,
    UNIT,
    LambdaMuPair,
    Monotonicity,
    classify_monotonicity,
    copson_lambda_mu,
    load_table_csv,
    make_family,
    parse_family,
    power_family,
    table_family,
)

families = st.sampled_from(["unit", "linear", "cubic", "power:2", "power:-1", "power:-3"])


def test_family_examples():
    assert [make_family(UNIT, 5).Q(n) for n in range(1, 6)] == [1, 2, 3, 4, 5]
    assert make_family(LINEAR, 3).Q(3) == 6
    assert make_family(CUBIC, 3).Q(3) == 36


@given(families, st.integers(1, 300))
def test_partial_sums_are_cumulative(spec, n):
    seq = make_family(spec, 300)
    assert seq.Q(0) == 0
    assert seq.Q(n) == seq.Q(n - 1) + seq.q(n)
    assert seq.q(n) > 0 and seq.Q(n) > seq.Q(n - 1)


@given(st.integers(1, 10**6))
def test_closed_forms(n):
    assert 2 * make_family(LINEAR, n).Q(n) == n * (n + 1)
    assert 4 * make_family(CUBIC, n).Q(n) == (n * (n + 1)) ** 2


@given(families, st.fractions(min_value=Fraction(1, 50), max_value=50, max_denominator=50), st.integers(1, 60))
def test_scaling_multiplies_partial_sums(spec, c, n):
    fam = parse_family(spec)
    base, scaled = make_family(fam, 60), make_family(fam.scaled(c), 60)
    assert scaled.Q(n) == c * base.Q(n) and scaled.q(n) == c * base.q(n)


def test_accessor_range():
    seq = make_family(UNIT, 4)
    assert seq.q(5) == 1 and seq.Q(5) == 5  # nmax + 1 is needed by w_nmax
    with pytest.raises(IndexBeyondNmax):
        seq.q(6)
    with pytest.raises(IndexBeyondNmax):
        seq.q(0)


def test_table_errors(tmp_path):
    with pytest.raises(EmptyTable):
        table_family([])
    with pytest.raises(NonpositiveEntry):
        table_family([1, 0, 2])
    with pytest.raises(IndexBeyondNmax):
        make_family(table_family([1, 2]), 2)
    path = tmp_path / "q.csv"
    path.write_text("1\n1/2\n\n0.25\n")
    seq = make_family(load_table_csv(path), 2)
    assert [seq.q(n) for n in (1, 2, 3)] == [1, Fraction(1, 2), Fraction(1, 4)]
    assert seq.Q(3) == Fraction(7, 4)
    with pytest.raises(ValueError):
        parse_family("triangular")


def test_power_family():
    seq = make_family(power_family(-1), 10)
    assert seq.q(4) == Fraction(1, 4) and seq.Q(3) == Fraction(11, 6)
    with pytest.raises(ValueError):
        power_family(Fraction(1, 2))


def test_parse_rational():
    assert parse_rational("17/50") == Fraction(17, 50)
    assert parse_rational("0.34") == Fraction(17, 50)
    assert parse_rational(" 3 ") == 3
    with pytest.raises(TypeError):
        parse_rational(0.34)
    with pytest.raises(ValueError):
        parse_rational("abc")


def test_monotonicity():
    assert classify_monotonicity(make_family(power_family(-1), 50)) is Monotonicity.DECREASING
    assert classify_monotonicity(make_family(CUBIC, 50)) is Monotonicity.INCREASING
    assert classify_monotonicity(make_family(table_family([1, 2, 1]), 2)) is Monotonicity.NEITHER
    assert classify_monotonicity(make_family(UNIT, 50)) is Monotonicity.DECREASING


def test_lambda_mu_unit_alpha0():
    pair = copson_lambda_mu(make_family(UNIT, 20), 0)
    for n in range(1, 20):
        assert pair.lam(n).bounds() == (1, 1)
        assert encloses(pair.mu(n), mpmath.sqrt(n))
    assert pair.mu(0).bounds() == (0, 0)


def test_lambda_mu_linear_half():
    pair = copson_lambda_mu(make_family(LINEAR, 10), Fraction(1, 2))
    assert encloses(pair.lam(4), 4 / mpmath.sqrt(10))
    assert encloses(pair.mu(4), mpmath.root(10, 4))
    assert abs(float(pair.lam(4)) - 1.264911) < 1e-6
    assert abs(float(pair.mu(4)) - 1.778279) < 1e-6


@given(families, alphas, st.integers(1, 100))
def test_lambda_times_power_encloses_q(spec, alpha, n):
    seq = make_family(spec, 100)
    pair = copson_lambda_mu(seq, alpha)
    assert (pair.lam(n) * power_of_exact(seq.Q(n), alpha, 128)).contains(seq.q(n))
    assert pair.lam(n).lo > 0 and pair.mu(n).lo > 0


def test_alpha_range():
    seq = make_family(UNIT, 3)
    for bad in (Fraction(1), Fraction(-1, 10), "2"):
        with pytest.raises(AlphaOutOfRange):
            copson_lambda_mu(seq, bad)


def test_pair_from_tables():
    pair = LambdaMuPair.from_tables([0, 1, 2, 3], [0, 1, 1, 1])
    assert pair.nmax == 2 and pair.lam(3) == 3
    with pytest.raises(IndexBeyondNmax):
        pair.lam(0)
