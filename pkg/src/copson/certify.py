"""Rigorous verdicts: pointwise dominance, lemma positivity and alpha scans."""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .core.interval import IntervalScalar
from .core.poly import certify_poly_positive, poly_identity_check
from .core.rational import parse_rational
from .core.verdict import Method, State, Verdict, rational_str
from .errors import DomainNotContained, RangeError, UnknownLemma
from .lemmas import IDENTITIES, REGISTRY, LemmaEntry, LemmaKind
from .sequences import WeightSequence, check_alpha, copson_lambda_mu
from .weights import classical_weight, master_weight, weight_value

CAP_ENV = "COPSON_PRECISION_CAP"


@dataclass(frozen=True)
class PrecisionPolicy:
    """Start at ``start`` bits and double on an undecided sign, up to ``cap``."""

    start: int = 128
    cap: int = 4096

    def __post_init__(self):
        if self.start < 16 or self.cap < self.start:
            raise ValueError(f"bad precision policy start={self.start} cap={self.cap}")

    @classmethod
    def from_env(cls, start: int = 128, cap: int | None = None) -> "PrecisionPolicy":
        if cap is None:
            cap = int(os.environ.get(CAP_ENV, "4096"))
        return cls(start, cap)

    def ladder(self) -> Iterator[int]:
        p = self.start
        while p < self.cap:
            yield p
            p *= 2
        yield self.cap


def _policy(policy: PrecisionPolicy | None) -> PrecisionPolicy:
    return policy if policy is not None else PrecisionPolicy.from_env()


# -- pointwise dominance ---------------------------------------------------


@dataclass(frozen=True)
class DominanceReport:
    family: str
    alpha: Fraction
    n_lo: int
    n_hi: int
    verdict: Verdict
    min_margin: tuple[int, IntervalScalar]
    precision_bits: int
    elapsed: float = field(default=0.0, compare=False)

    def to_json(self, timing: bool = False) -> dict:
        n_star, margin = self.min_margin
        out = {
            "family": self.family,
            "alpha": rational_str(self.alpha),
            "n_lo": self.n_lo,
            "n_hi": self.n_hi,
            "verdict": self.verdict.to_json(),
            "min_margin": {"n": n_star, "margin": margin.to_json()},
            "precision_bits": self.precision_bits,
        }
        if timing:
            out["elapsed_s"] = round(self.elapsed, 3)
        return out


def _margin_at(seq, alpha, n, prec, route) -> IntervalScalar:
    if route == "direct":
        return weight_value(seq, alpha, n, prec).margin
    pair = copson_lambda_mu(seq, alpha, prec)
    return master_weight(pair, n) - classical_weight(seq, alpha, n, prec)


@dataclass
class _Chunk:
    """Summary of a contiguous block of indices."""

    first_bad: tuple[int, State] | None = None
    first_undecided: int | None = None
    min_n: int = 0
    min_margin: IntervalScalar | None = None
    max_prec: int = 0


def _scan_chunk(seq, alpha, lo, hi, policy, route) -> _Chunk:
    out = _Chunk()
    for n in range(lo, hi + 1):
        state = State.UNDECIDED
        for prec in policy.ladder():
            m = _margin_at(seq, alpha, n, prec, route)
            if m.lo > 0:
                state = State.POSITIVE
            elif m.hi <= 0:
                state = State.NONPOSITIVE
            if state is not State.UNDECIDED:
                break
        out.max_prec = max(out.max_prec, prec)
        if out.min_margin is None or m.lo < out.min_margin.lo:
            out.min_n, out.min_margin = n, m
        if state is State.NONPOSITIVE:
            out.first_bad = (n, state)
            break
        if state is State.UNDECIDED and out.first_undecided is None:
            out.first_undecided = n
    return out


def _chunks(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    size = max(1, -(-(hi - lo + 1) // parts))
    return [(a, min(a + size - 1, hi)) for a in range(lo, hi + 1, size)]


def certify_dominance(
    seq: WeightSequence,
    alpha,
    n_lo: int,
    n_hi: int,
    policy: PrecisionPolicy | None = None,
    jobs: int = 1,
    route: str = "direct",
) -> DominanceReport:
    """Certify ``w_n > classical_n`` for every ``n`` in ``[n_lo, n_hi]``.

    ``route="master"`` evaluates the improved weight through the generic
    (lambda, mu) formula instead of the closed form; both must agree.
    """
    alpha = check_alpha(alpha)
    if not 1 <= n_lo <= n_hi <= seq.nmax:
        raise RangeError(f"need 1 <= n_lo <= n_hi <= nmax, got [{n_lo}, {n_hi}] with nmax={seq.nmax}")
    if route not in ("direct", "master"):
        raise ValueError(f"unknown route {route!r}")
    policy = _policy(policy)
    t0 = time.perf_counter()
    blocks = _chunks(n_lo, n_hi, max(1, jobs) * 4 if jobs > 1 else 1)
    if jobs > 1 and len(blocks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            futs = [ex.submit(_scan_chunk, seq, alpha, a, b, policy, route) for a, b in blocks]
            parts = [f.result() for f in futs]
    else:
        parts = [_scan_chunk(seq, alpha, a, b, policy, route) for a, b in blocks]

    bad = next((p.first_bad for p in parts if p.first_bad), None)
    undecided = next((p.first_undecided for p in parts if p.first_undecided is not None), None)
    best = min((p for p in parts if p.min_margin is not None), key=lambda p: (p.min_margin.lo, p.min_n))
    max_prec = max(p.max_prec for p in parts)
    if bad is not None:
        verdict = Verdict(State.NONPOSITIVE, Method.POINTWISE_INTERVAL, max_prec, witness=bad[0])
    elif undecided is not None:
        verdict = Verdict(State.UNDECIDED, Method.POINTWISE_INTERVAL, max_prec, witness=undecided)
    else:
        verdict = Verdict(State.POSITIVE, Method.POINTWISE_INTERVAL, max_prec, witness=best.min_n)
    return DominanceReport(
        seq.name,
        alpha,
        n_lo,
        n_hi,
        verdict,
        (best.min_n, best.min_margin),
        max_prec,
        time.perf_counter() - t0,
    )


# -- lemma certificates ----------------------------------------------------


def _lookup(lemma_id: str) -> LemmaEntry:
    try:
        return REGISTRY[lemma_id]
    except KeyError:
        raise UnknownLemma(f"unknown lemma id {lemma_id!r}; known: {', '.join(REGISTRY)}") from None


def _contained(inner, outer) -> bool:
    return outer[0] <= inner[0] and inner[1] <= outer[1]


MAX_LEAVES = 1 << 16


def _bisect_positive(entry: LemmaEntry, a: Fraction, b: Fraction, params, prec: int) -> tuple[State, int, object]:
    """Depth-first bisection.  Returns (state, leaves, witness)."""
    min_width = Fraction(1, 1 << min(prec // 2, 200))
    stack = [(a, b)]
    leaves = 0
    tightest = None
    while stack:
        lo, hi = stack.pop()
        val = entry.func(IntervalScalar.from_bounds(lo, hi, prec), params)
        if val.lo > 0:
            leaves += 1
            if tightest is None or val.lo < tightest[0]:
                tightest = (val.lo, (lo, hi))
            continue
        # a rigorous negative point value settles the question
        point = entry.func(IntervalScalar.exact(lo, prec), params)
        if point.hi <= 0:
            return State.NONPOSITIVE, leaves, lo
        if hi - lo <= min_width or leaves + len(stack) >= MAX_LEAVES:
            return State.UNDECIDED, leaves, (lo, hi)
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    return State.POSITIVE, leaves, tightest[1] if tightest else None


def certify_lemma(
    lemma_id: str,
    domain=None,
    policy: PrecisionPolicy | None = None,
    params: dict | None = None,
) -> Verdict:
    """Certify that the registered function is positive on the closed ``domain``.

    ``domain`` defaults to the entry's claimed domain and must lie inside it.
    ``lemma35_gap`` additionally needs ``params={"alpha": ...}``.
    """
    entry = _lookup(lemma_id)
    if domain is None:
        domain = entry.domain
    a, b = (parse_rational(v) for v in domain)
    if not a < b:
        raise ValueError(f"empty domain [{a}, {b}]")
    if not _contained((a, b), entry.domain):
        lo, hi = entry.domain
        raise DomainNotContained(f"[{a}, {b}] is not inside the claimed domain [{lo}, {hi}] of {lemma_id}")
    params = dict(params or {})
    if entry.needs_alpha:
        if "alpha" not in params:
            raise ValueError(f"{lemma_id} needs a parameter alpha")
        params["alpha"] = parse_rational(params["alpha"])
        if not entry.param_domain[0] <= params["alpha"] <= entry.param_domain[1]:
            lo, hi = entry.param_domain
            raise DomainNotContained(f"alpha = {params['alpha']} outside [{lo}, {hi}] for {lemma_id}")

    if entry.kind is LemmaKind.POLYNOMIAL_EXACT:
        return certify_poly_positive(entry.poly, a, b)

    policy = _policy(policy)
    total = 0
    for prec in policy.ladder():
        state, leaves, witness = _bisect_positive(entry, a, b, params, prec)
        total += leaves
        if state is not State.UNDECIDED:
            break
    return Verdict(state, Method.INTERVAL_SUBDIVISION, prec, total, witness)


def certify_identity(identity_id: str) -> bool:
    try:
        p, q = IDENTITIES[identity_id]
    except KeyError:
        raise UnknownLemma(f"unknown identity {identity_id!r}; known: {', '.join(IDENTITIES)}") from None
    return poly_identity_check(p, q)


# -- alpha scans -----------------------------------------------------------


@dataclass(frozen=True)
class ScanReport:
    family: str
    grid: tuple[Fraction, ...]
    verdicts: tuple[Verdict, ...]
    boundary_bracket: object  # "all-pass" or (alpha_fail_max, alpha_pass_min)
    nmax: int

    def to_json(self) -> dict:
        bracket = self.boundary_bracket
        if isinstance(bracket, tuple):
            bracket = [None if v is None else rational_str(v) for v in bracket]
        return {
            "family": self.family,
            "nmax": self.nmax,
            "grid": [
                {"alpha": rational_str(a), "verdict": v.to_json()} for a, v in zip(self.grid, self.verdicts)
            ],
            "boundary_bracket": bracket,
        }


def alpha_grid(lo: Fraction, hi: Fraction, steps: int) -> list[Fraction]:
    """``steps`` equally spaced exact points including both ends."""
    return [lo + i * (hi - lo) / (steps - 1) for i in range(steps)]


def scan_alpha(
    seq: WeightSequence,
    alpha_lo,
    alpha_hi,
    steps: int,
    nmax: int,
    policy: PrecisionPolicy | None = None,
    jobs: int = 1,
) -> ScanReport:
    lo, hi = check_alpha(alpha_lo), check_alpha(alpha_hi)
    if not lo < hi:
        raise ValueError("need alpha_lo < alpha_hi")
    if steps < 2:
        raise ValueError("steps must be >= 2")
    if not 1 <= nmax <= seq.nmax:
        raise RangeError(f"scan nmax {nmax} outside [1, {seq.nmax}]")
    grid = alpha_grid(lo, hi, steps)
    verdicts = tuple(certify_dominance(seq, a, 1, nmax, policy, jobs).verdict for a in grid)
    failing = [a for a, v in zip(grid, verdicts) if not v.positive]
    passing = [a for a, v in zip(grid, verdicts) if v.positive]
    if not failing:
        bracket: object = "all-pass"
    else:
        bracket = (max(failing), min(passing) if passing else None)
    return ScanReport(seq.name, tuple(grid), verdicts, bracket, nmax)


__all__ = [
    "PrecisionPolicy",
    "DominanceReport",
    "ScanReport",
    "certify_dominance",
    "certify_lemma",
    "certify_identity",
    "scan_alpha",
    "alpha_grid",
]
