"""The inequality on vectors supported in ``[1, N]`` as a symmetric tridiagonal form.

    sum_{n=1..N+1} |A_n - A_{n-1}|^2 / lam_n - sum_{n=1..N} w_n |A_n|^2 = A^T M A

with ``M_nn = 1/lam_n + 1/lam_{n+1} - w_n`` and ``M_{n,n+1} = -1/lam_{n+1}``.
The boundary difference ``|0 - A_N|^2 / lam_{N+1}`` lives in ``M_NN``.
Entries are ``IntervalScalar`` (certified mode) or ``Fraction`` (exact mode).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .certify import PrecisionPolicy, _policy
from .core.interval import IntervalScalar
from .core.verdict import Method, State, Verdict
from .errors import RangeError, Undecided
from .sequences import WeightSequence, check_alpha, copson_lambda_mu
from .weights import classical_weight, copson_weight


@dataclass(frozen=True)
class TridiagonalForm:
    N: int
    diag: tuple
    offdiag: tuple

    def __post_init__(self):
        if self.N < 1 or len(self.diag) != self.N or len(self.offdiag) != self.N - 1:
            raise RangeError("inconsistent tridiagonal form dimensions")

    def value(self, A: Sequence):
        """``A^T M A`` for ``A = (A_1, ..., A_N)``."""
        if len(A) != self.N:
            raise ValueError(f"vector has {len(A)} entries, form has N={self.N}")
        total = Fraction(0)
        for d, a in zip(self.diag, A):
            if a:
                total = total + d * (a * a)
        for o, a, b in zip(self.offdiag, A, A[1:]):
            if a and b:
                total = total + o * (2 * a * b)
        return total

    @property
    def precision_bits(self) -> int:
        d = self.diag[0]
        return d.precision_bits if isinstance(d, IntervalScalar) else 0

    def shifted(self, delta: Sequence) -> "TridiagonalForm":
        """Form with ``delta_n`` added to the diagonal."""
        return TridiagonalForm(self.N, tuple(d + e for d, e in zip(self.diag, delta)), self.offdiag)


def build_form(lam: Callable[[int], object], weights: Callable[[int], object], N: int) -> TridiagonalForm:
    if N < 1:
        raise RangeError("N must be >= 1")
    inv = [None] + [Fraction(1) / lam(n) for n in range(1, N + 2)]
    diag = tuple(inv[n] + inv[n + 1] - weights(n) for n in range(1, N + 1))
    off = tuple(-inv[n + 1] for n in range(1, N))
    return TridiagonalForm(N, diag, off)


def copson_form(seq: WeightSequence, alpha, N: int, precision: int = 128, classical: bool = False) -> TridiagonalForm:
    """Form of the Copson pair with improved (default) or classical weights."""
    alpha = check_alpha(alpha)
    pair = copson_lambda_mu(seq, alpha, precision)
    weight = classical_weight if classical else copson_weight
    return build_form(pair.lam, lambda n: weight(seq, alpha, n, precision), N)


# -- inertia -----------------------------------------------------------------


def _sign(x) -> int | None:
    if isinstance(x, IntervalScalar):
        return 1 if x.lo > 0 else -1 if x.hi < 0 else None
    return (x > 0) - (x < 0) or None


def _sq(x):
    return x.square() if isinstance(x, IntervalScalar) else x * x


def inertia_below(form: TridiagonalForm, sigma) -> tuple[int, int | None]:
    """``(negative pivots, first undecided pivot index or None)``."""
    sigma = Fraction(sigma)
    count = 0
    d = form.diag[0] - sigma
    for k in range(form.N):
        if k:
            d = form.diag[k] - sigma - _sq(form.offdiag[k - 1]) / d
        s = _sign(d)
        if s is None:
            return count, k + 1
        count += s < 0
    return count, None


def count_eigs_below(form: TridiagonalForm, sigma) -> int:
    """Number of eigenvalues strictly below ``sigma`` (signed pivot count).

    Raises ``Undecided`` if a pivot cannot be given a sign.
    """
    count, stuck = inertia_below(form, sigma)
    if stuck is not None:
        raise Undecided(f"pivot {stuck} straddles zero at sigma={sigma}")
    return count


def certify_psd(
    builder: Callable[[int], TridiagonalForm],
    policy: PrecisionPolicy | None = None,
) -> Verdict:
    """Positive iff no eigenvalue is below 0, escalating precision on a straddle.

    ``builder(precision)`` rebuilds the form at the requested precision.
    """
    policy = _policy(policy)
    for prec in policy.ladder():
        count, stuck = inertia_below(builder(prec), 0)
        if stuck is None:
            break
    if stuck is not None:
        return Verdict(State.UNDECIDED, Method.POINTWISE_INTERVAL, prec, witness=stuck)
    if count:
        return Verdict(State.NONPOSITIVE, Method.POINTWISE_INTERVAL, prec, witness=count)
    return Verdict(State.POSITIVE, Method.POINTWISE_INTERVAL, prec)


def _as_bounds(x) -> tuple[Fraction, Fraction]:
    if isinstance(x, IntervalScalar):
        return x.bounds()
    return Fraction(x), Fraction(x)


def gershgorin(form: TridiagonalForm) -> tuple[Fraction, Fraction]:
    offs = [max(abs(v) for v in _as_bounds(o)) for o in form.offdiag]
    lo = hi = None
    for k in range(form.N):
        dl, dh = _as_bounds(form.diag[k])
        r = (offs[k - 1] if k else 0) + (offs[k] if k < form.N - 1 else 0)
        lo = dl - r if lo is None else min(lo, dl - r)
        hi = dh + r if hi is None else max(hi, dh + r)
    return lo, hi


def min_eig_bracket(form: TridiagonalForm, tol) -> IntervalScalar:
    """Interval of width <= ``tol`` containing the smallest eigenvalue."""
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    lo, hi = gershgorin(form)
    lo, hi = lo - 1, hi + 1  # strictly outside the spectrum
    while hi - lo > tol:
        # off-centre fallbacks when the midpoint sits inside an entry's enclosure
        for frac in (Fraction(1, 2), Fraction(3, 8), Fraction(5, 8)):
            mid = lo + (hi - lo) * frac
            count, stuck = inertia_below(form, mid)
            if stuck is None:
                break
        else:
            raise Undecided(f"cannot separate the smallest eigenvalue below width {hi - lo}")
        if count >= 1:
            hi = mid
        else:
            lo = mid
    return IntervalScalar.from_bounds(lo, hi, form.precision_bits or 128)


def random_vector(rng: random.Random, N: int) -> list[Fraction]:
    return [Fraction(rng.randint(-8, 8), rng.randint(1, 8)) for _ in range(N)]


def random_form_minimum(form: TridiagonalForm, trials: int, seed: int):
    """Smallest ``A^T M A`` over ``trials`` seeded random small-denominator vectors."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    best = None
    for _ in range(trials):
        v = form.value(random_vector(rng, form.N))
        key = v.lo if isinstance(v, IntervalScalar) else v
        if best is None or key < best[0]:
            best = (key, v)
    return best[1]


def random_quadform_test(
    lam: Callable[[int], object],
    weights: Callable[[int], object],
    N: int,
    trials: int,
    seed: int,
):
    return random_form_minimum(build_form(lam, weights, N), trials, seed)


__all__ = [
    "TridiagonalForm",
    "build_form",
    "copson_form",
    "count_eigs_below",
    "inertia_below",
    "certify_psd",
    "gershgorin",
    "min_eig_bracket",
    "random_form_minimum",
    "random_quadform_test",
]
