"""Improved and classical Hardy-Copson weights.

The improved Copson weight for a positive sequence ``q`` with partial sums
``Q`` is ``w_n = Q_n**a / q_n * T_n`` where

    T_n = 1 + (q_n/q_{n+1}) [(1 + q_{n+1}/Q_n)**a - (1 + q_{n+1}/Q_n)**((1+a)/2)]
            - (1 - q_n/Q_n)**((1-a)/2)

and the classical weight is ``(1-a)**2/4 * q_n / Q_n**(2-a)``.  At ``n = 1``
the last power is ``0**positive = 0`` because ``Q_0 = 0``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Sequence

from gmpy2 import mpq

from .core.interval import IntervalScalar, power_of_exact
from .core.poly import gen_binomial
from .errors import IndexBeyondNmax, KTooSmall, NonpositiveLambdaMu, SeriesDomain
from .sequences import LambdaMuPair, WeightSequence, check_alpha


@dataclass(frozen=True)
class WeightValue:
    n: int
    value: IntervalScalar
    classical: IntervalScalar
    margin: IntervalScalar


def classical_constant(alpha: Fraction) -> Fraction:
    return (1 - alpha) ** 2 / 4


def _check_n(seq: WeightSequence, n: int) -> None:
    if not 1 <= n <= seq.nmax:
        raise IndexBeyondNmax(f"n = {n} outside [1, {seq.nmax}]")


@lru_cache(maxsize=64)
def _exponents(alpha: Fraction) -> tuple[Fraction, Fraction, mpq]:
    """``((1+a)/2, (1-a)/2, (1-a)^2/4)``, reused across all ``n``."""
    return (1 + alpha) / 2, (1 - alpha) / 2, mpq(classical_constant(alpha))


def _mpq(x) -> mpq:
    return mpq(x.numerator, x.denominator)


def _t_factor(seq: WeightSequence, alpha: Fraction, n: int, prec: int) -> IntervalScalar:
    # mpq arithmetic is several times faster than Fraction on this hot path
    qn, qn1, Qn = _mpq(seq.q(n)), _mpq(seq.q(n + 1)), _mpq(seq.Q(n))
    g2, g1, _ = _exponents(alpha)
    grow = 1 + qn1 / Qn
    up = power_of_exact(grow, alpha, prec) - power_of_exact(grow, g2, prec)
    down = power_of_exact(1 - qn / Qn, g1, prec)
    return (1 - down) + up * (qn / qn1)


def copson_weight(seq: WeightSequence, alpha, n: int, precision: int = 128) -> IntervalScalar:
    alpha = check_alpha(alpha)
    _check_n(seq, n)
    prefactor = power_of_exact(seq.Q(n), alpha, precision) / seq.q(n)
    return prefactor * _t_factor(seq, alpha, n, precision)


def classical_weight(seq: WeightSequence, alpha, n: int, precision: int = 128) -> IntervalScalar:
    alpha = check_alpha(alpha)
    _check_n(seq, n)
    return power_of_exact(seq.Q(n), alpha - 2, precision) * (classical_constant(alpha) * seq.q(n))


def weight_value(seq: WeightSequence, alpha, n: int, precision: int = 128) -> WeightValue:
    """Improved weight, classical weight and their difference at ``n``."""
    alpha = check_alpha(alpha)
    _check_n(seq, n)
    qn, Qn = _mpq(seq.q(n)), _mpq(seq.Q(n))
    q_pow = power_of_exact(Qn, alpha, precision)
    value = (q_pow / qn) * _t_factor(seq, alpha, n, precision)
    classical = q_pow * (_exponents(alpha)[2] * qn / (Qn * Qn))
    return WeightValue(n, value, classical, value - classical)


def power_weight(alpha, n: int, precision: int = 128) -> IntervalScalar:
    """Improved weight for ``q_n = 1`` written with ``x = 1/n`` (special form at ``n = 1``)."""
    alpha = check_alpha(alpha)
    if n < 1:
        raise IndexBeyondNmax("n must be >= 1")
    g1, g2 = (1 - alpha) / 2, (1 + alpha) / 2
    if n == 1:
        return 1 + power_of_exact(2, alpha, precision) - power_of_exact(2, g2, precision)
    x = Fraction(1, n)
    bracket = (
        1
        + power_of_exact(1 + x, alpha, precision)
        - power_of_exact(1 - x, g1, precision)
        - power_of_exact(1 + x, g2, precision)
    )
    return power_of_exact(n, alpha, precision) * bracket


def kpp_weight(n: int, precision: int = 128) -> IntervalScalar:
    """``2 - sqrt((n-1)/n) - sqrt((n+1)/n)``."""
    if n < 1:
        raise IndexBeyondNmax("n must be >= 1")
    half = Fraction(1, 2)
    return 2 - power_of_exact(Fraction(n - 1, n), half, precision) - power_of_exact(
        Fraction(n + 1, n), half, precision
    )


def master_weight(pair: LambdaMuPair, n: int):
    """``1/lam_n + 1/lam_{n+1} - mu_{n-1}/(lam_n mu_n) - mu_{n+1}/(lam_{n+1} mu_n)``.

    Exact when the pair yields ``Fraction`` values.
    """
    if n < 1:
        raise IndexBeyondNmax("n must be >= 1")
    if n > pair.nmax:
        raise IndexBeyondNmax(f"n = {n} beyond nmax = {pair.nmax}")
    l0, l1 = pair.lam(n), pair.lam(n + 1)
    m_prev, m0, m1 = pair.mu(n - 1), pair.mu(n), pair.mu(n + 1)
    one = Fraction(1)  # keeps int inputs exact
    return one / l0 + one / l1 - m_prev / (l0 * m0) - m1 / (l1 * m0)


# -- series expansion of T_n ------------------------------------------------


def _series_check(seq: WeightSequence, alpha: Fraction, n: int) -> None:
    _check_n(seq, n)
    if seq.q(n + 1) > seq.Q(n):
        raise SeriesDomain(f"q_{n + 1} > Q_{n}: binomial series does not converge")


def series_Ck(seq: WeightSequence, alpha, n: int, k: int) -> Fraction:
    """k-th term (k >= 3) of the binomial expansion of ``T_n``, exactly."""
    alpha = check_alpha(alpha)
    if k < 3:
        raise KTooSmall(f"k = {k}; the residual terms start at k = 3")
    _series_check(seq, alpha, n)
    return _ck(seq, alpha, n, k)


def _ck(seq: WeightSequence, alpha: Fraction, n: int, k: int) -> Fraction:
    qn, qn1, Qn = seq.q(n), seq.q(n + 1), seq.Q(n)
    mixed = qn * qn1 ** (k - 1) / Qn**k
    pure = (qn / Qn) ** k
    return (
        (gen_binomial(alpha, k) - gen_binomial((1 + alpha) / 2, k)) * mixed
        - (-1) ** k * gen_binomial((1 - alpha) / 2, k) * pure
    )


def series_order2(seq: WeightSequence, alpha, n: int) -> Fraction:
    """Quadratic part ``(1-a^2)/8 q_n^2/Q_n^2 - (1-a)(3a-1)/8 q_n q_{n+1}/Q_n^2``."""
    alpha = check_alpha(alpha)
    qn, qn1, Qn = seq.q(n), seq.q(n + 1), seq.Q(n)
    return ((1 - alpha**2) * qn**2 - (1 - alpha) * (3 * alpha - 1) * qn * qn1) / (8 * Qn**2)


def series_tail(seq: WeightSequence, alpha, n: int, K: int) -> tuple[Fraction, Fraction]:
    """``(sum_{k=3..K} C_k, bound on |sum_{k>K} C_k|)`` using ``|C_k| <= 3 r**k``
    with ``r = max(q_n, q_{n+1}) / Q_n``; the bound needs ``r < 1``."""
    alpha = check_alpha(alpha)
    _series_check(seq, alpha, n)
    partial = sum((_ck(seq, alpha, n, k) for k in range(3, K + 1)), Fraction(0))
    r = max(seq.q(n), seq.q(n + 1)) / seq.Q(n)
    if r >= 1:
        raise SeriesDomain("geometric tail bound needs max(q_n, q_{n+1}) < Q_n")
    return partial, 3 * r ** (K + 1) / (1 - r)


# -- remainder decomposition -----------------------------------------------


@dataclass(frozen=True)
class FinSuppVector:
    """Finitely supported ``A`` with ``A_0 = 0`` and ``A_n = 0`` for ``n > N``."""

    entries: tuple

    def __init__(self, entries: Sequence):
        object.__setattr__(self, "entries", tuple(entries))

    @property
    def N(self) -> int:
        return len(self.entries)

    def __getitem__(self, n: int):
        if 1 <= n <= len(self.entries):
            return self.entries[n - 1]
        return 0


class Remainder(NamedTuple):
    lhs: object
    weighted_sum: object
    remainder: object
    sum_of_squares: object

    @property
    def defect(self):
        return self.remainder - self.sum_of_squares


def _sq(x):
    return x.square() if isinstance(x, IntervalScalar) else x * x


def _positive(x) -> bool:
    return x.lo > 0 if isinstance(x, IntervalScalar) else x > 0


def remainder_decomposition(pair: LambdaMuPair, A) -> Remainder:
    """Both sides of the master inequality for finitely supported ``A``.

    ``remainder = lhs - weighted_sum`` is also computed independently as

        sum_{n=2..N} mu_{n-1} mu_n / lam_n (A_n/mu_n - A_{n-1}/mu_{n-1})**2
            + mu_{N+1} A_N**2 / (lam_{N+1} mu_N)

    and the two agree exactly when all inputs are rational.
    """
    if not isinstance(A, FinSuppVector):
        A = FinSuppVector(A)
    N = A.N
    if N < 1:
        raise ValueError("A needs at least one entry")
    lam = {n: pair.lam(n) for n in range(1, N + 2)}
    mu = {n: pair.mu(n) for n in range(0, N + 2)}
    for n in range(1, N + 2):
        if not (_positive(lam[n]) and _positive(mu[n])):
            raise NonpositiveLambdaMu(f"lambda_{n} or mu_{n} is not positive")

    lhs = sum((_sq(A[n] - A[n - 1]) / lam[n] for n in range(1, N + 2)), Fraction(0))
    weighted = sum((master_weight(pair, n) * _sq(A[n]) for n in range(1, N + 1)), Fraction(0))
    sos = sum(
        (mu[n - 1] * mu[n] / lam[n] * _sq(A[n] / mu[n] - A[n - 1] / mu[n - 1]) for n in range(2, N + 1)),
        Fraction(0),
    )
    sos = sos + mu[N + 1] * _sq(A[N]) / (lam[N + 1] * mu[N])
    return Remainder(lhs, weighted, lhs - weighted, sos)


def random_exact_instance(rng: random.Random, max_support: int = 32) -> tuple[LambdaMuPair, FinSuppVector]:
    """Random positive rational ``lam``, ``mu`` (with ``mu_0 = 0``) and rational ``A``."""
    N = rng.randint(1, max_support)

    def pos():
        return Fraction(rng.randint(1, 20), rng.randint(1, 20))

    lam = [Fraction(0)] + [pos() for _ in range(N + 1)]
    mu = [Fraction(0)] + [pos() for _ in range(N + 1)]
    A = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(N)]
    return LambdaMuPair.from_tables(lam, mu), FinSuppVector(A)


def remainder_oracle(trials: int, seed: int, max_support: int = 32) -> list[int]:
    """Indices of seeded random exact instances whose defect is not exactly zero."""
    rng = random.Random(seed)
    bad = []
    for i in range(trials):
        pair, A = random_exact_instance(rng, max_support)
        r = remainder_decomposition(pair, A)
        if r.defect != 0 or r.remainder < 0:
            bad.append(i)
    return bad
