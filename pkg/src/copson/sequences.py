"""Weight sequences q, partial sums Q, and the Copson (lambda, mu) pair."""

from __future__ import annotations

import csv
import enum
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

from .core.interval import IntervalScalar, power_of_exact
from .core.rational import parse_rational
from .errors import AlphaOutOfRange, EmptyTable, IndexBeyondNmax, NonpositiveEntry


@dataclass(frozen=True)
class Family:
    """Descriptor of a weight family: ``unit``, ``linear``, ``cubic``,
    ``power`` (``q_n = n**exponent``) or ``table`` (explicit values)."""

    kind: str
    exponent: Fraction | None = None
    values: tuple[Fraction, ...] | None = None
    scale: Fraction = Fraction(1)
    label: str | None = None

    @property
    def name(self) -> str:
        base = self.label or {
            "power": f"power:{self.exponent}",
            "table": f"table[{len(self.values or ())}]",
        }.get(self.kind, self.kind)
        return base if self.scale == 1 else f"{base}*{self.scale}"

    def scaled(self, c) -> "Family":
        c = Fraction(c)
        if c <= 0:
            raise NonpositiveEntry("scale factor must be positive")
        return Family(self.kind, self.exponent, self.values, self.scale * c, self.label)


UNIT = Family("unit")
LINEAR = Family("linear")
CUBIC = Family("cubic")


def power_family(p) -> Family:
    p = Fraction(p)
    if p.denominator != 1:
        # n**p must stay rational for q to be exact
        raise ValueError(f"power family needs an integer exponent, got {p}")
    return Family("power", exponent=p)


def table_family(values: Sequence, label: str | None = None) -> Family:
    vals = tuple(parse_rational(v) for v in values)
    if not vals:
        raise EmptyTable("custom table is empty")
    for i, v in enumerate(vals, start=1):
        if v <= 0:
            raise NonpositiveEntry(f"table entry {i} is {v}, must be > 0")
    return Family("table", values=vals, label=label)


def load_table_csv(path: str | Path) -> Family:
    """One positive rational or decimal per line; line ``i`` holds ``q_i``."""
    with open(path, newline="") as fh:
        rows = [r[0].strip() for r in csv.reader(fh) if r and r[0].strip()]
    return table_family(rows, label=f"table:{Path(path).name}")


def parse_family(spec: str) -> Family:
    """Parse ``unit|linear|cubic|power:<p>|table:<file>``."""
    kind, _, arg = spec.partition(":")
    kind = kind.strip().lower()
    if kind in ("unit", "linear", "cubic") and not arg:
        return {"unit": UNIT, "linear": LINEAR, "cubic": CUBIC}[kind]
    if kind == "power" and arg:
        return power_family(parse_rational(arg))
    if kind == "table" and arg:
        return load_table_csv(arg)
    raise ValueError(f"unknown family spec {spec!r}")


class Monotonicity(str, enum.Enum):
    DECREASING = "Decreasing"
    INCREASING = "Increasing"
    NEITHER = "Neither"


@dataclass(frozen=True)
class WeightSequence:
    """Positive sequence ``q_1..q_{nmax+1}`` with exact partial sums ``Q``.

    Accessors run to ``nmax + 1`` because the weight at ``n`` reads
    ``q_{n+1}`` and ``Q_{n+1}``.
    """

    family: Family
    nmax: int
    _q: tuple = field(default=(), repr=False, compare=False)
    _Q: tuple = field(default=(), repr=False, compare=False)

    def _check(self, n: int, lo: int) -> None:
        if not lo <= n <= self.nmax + 1:
            raise IndexBeyondNmax(f"index {n} outside [{lo}, {self.nmax + 1}]")

    def q(self, n: int) -> Fraction:
        self._check(n, 1)
        kind = self.family.kind
        if kind == "unit":
            v = 1
        elif kind == "linear":
            v = n
        elif kind == "cubic":
            v = n**3
        else:
            return self._q[n]
        return self.family.scale * v

    def Q(self, n: int) -> Fraction:
        self._check(n, 0)
        kind = self.family.kind
        if kind == "unit":
            v = n
        elif kind == "linear":
            v = n * (n + 1) // 2
        elif kind == "cubic":
            v = (n * (n + 1) // 2) ** 2
        else:
            return self._Q[n]
        return self.family.scale * v

    @property
    def name(self) -> str:
        return self.family.name


def make_family(family: Family | str, nmax: int) -> WeightSequence:
    if isinstance(family, str):
        family = parse_family(family)
    if nmax < 1:
        raise ValueError("nmax must be >= 1")
    if family.kind in ("unit", "linear", "cubic"):
        return WeightSequence(family, nmax)
    if family.kind == "power":
        p = int(family.exponent)
        qs = [Fraction(n) ** p * family.scale for n in range(1, nmax + 2)]
    elif family.kind == "table":
        vals = family.values or ()
        if not vals:
            raise EmptyTable("custom table is empty")
        if len(vals) < nmax + 1:
            raise IndexBeyondNmax(f"table has {len(vals)} entries, need nmax+1 = {nmax + 1}")
        qs = [v * family.scale for v in vals[: nmax + 1]]
    else:
        raise ValueError(f"unknown family kind {family.kind!r}")
    for i, v in enumerate(qs, start=1):
        if v <= 0:
            raise NonpositiveEntry(f"q_{i} = {v} is not positive")
    Qs = [Fraction(0)]
    for v in qs:
        Qs.append(Qs[-1] + v)
    return WeightSequence(family, nmax, (None, *qs), tuple(Qs))


def classify_monotonicity(seq: WeightSequence, nmax: int | None = None) -> Monotonicity:
    """Non-strict monotonicity of ``q_1..q_{nmax+1}`` (every ``q_{n+1}`` vs ``q_n``
    for ``n <= nmax``, the values the weights read); constant counts as decreasing."""
    nmax = seq.nmax if nmax is None else nmax
    if nmax < 2:
        raise ValueError("nmax must be >= 2")
    dec = inc = True
    prev = seq.q(1)
    for n in range(2, nmax + 2):
        cur = seq.q(n)
        dec = dec and cur <= prev
        inc = inc and cur >= prev
        if not (dec or inc):
            return Monotonicity.NEITHER
        prev = cur
    return Monotonicity.DECREASING if dec else Monotonicity.INCREASING


def check_alpha(alpha) -> Fraction:
    alpha = parse_rational(alpha)
    if not 0 <= alpha < 1:
        raise AlphaOutOfRange(f"alpha = {alpha} is outside [0, 1)")
    return alpha


Accessor = Callable[[int], object]


@dataclass(frozen=True)
class LambdaMuPair:
    """Accessors ``lam(n)`` (n >= 1) and ``mu(n)`` (n >= 0) driving the master weight.

    Values may be ``Fraction`` (exact mode) or ``IntervalScalar``.
    """

    lam: Accessor
    mu: Accessor
    nmax: int
    alpha: Fraction | None = None

    @classmethod
    def from_tables(cls, lam: Sequence, mu: Sequence, alpha=None) -> "LambdaMuPair":
        """``lam[n]`` for ``1 <= n <= N+1`` (``lam[0]`` ignored), ``mu[n]`` for ``0 <= n``."""
        # ints would divide to floats
        lam, mu = ([Fraction(v) if isinstance(v, int) else v for v in tab] for tab in (lam, mu))
        nmax = min(len(lam), len(mu)) - 2

        def get(tab, lo):
            def acc(n):
                if not lo <= n < len(tab):
                    raise IndexBeyondNmax(f"index {n} outside table")
                return tab[n]

            return acc

        return cls(get(lam, 1), get(mu, 0), nmax, alpha)


def copson_lambda_mu(seq: WeightSequence, alpha, precision: int = 128) -> LambdaMuPair:
    """``lam_n = q_n / Q_n**alpha`` and ``mu_n = Q_n**((1-alpha)/2)`` with ``mu_0 = 0``."""
    alpha = check_alpha(alpha)
    half = (1 - alpha) / 2

    def lam(n: int) -> IntervalScalar:
        if n < 1:
            raise IndexBeyondNmax("lambda is defined for n >= 1")
        return power_of_exact(seq.Q(n), -alpha, precision) * seq.q(n)

    def mu(n: int) -> IntervalScalar:
        if n == 0:
            return IntervalScalar.exact(0, precision)
        return power_of_exact(seq.Q(n), half, precision)

    return LambdaMuPair(lam, mu, seq.nmax, alpha)
