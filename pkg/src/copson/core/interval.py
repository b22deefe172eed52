"""Outward-rounded interval arithmetic on MPFR endpoints.

Every operation evaluates the lower endpoint with rounding toward -inf and the
upper endpoint with rounding toward +inf, so the exact result of the real
operation is always enclosed.  MPFR's correctly rounded ``rootn``, ``pow``,
``exp`` and ``log`` make the transcendental operations rigorous as well.
"""

from __future__ import annotations

import decimal
import math
from fractions import Fraction
from functools import lru_cache
from typing import Union

import gmpy2
from gmpy2 import mpfr, mpq, mpz

from ..errors import NonpositiveBase

MIN_PRECISION = 16
DEFAULT_PRECISION = 128

Exact = Union[int, Fraction]


@lru_cache(maxsize=None)
def _contexts(prec: int) -> tuple:
    kw = dict(
        precision=prec,
        emin=gmpy2.get_emin_min(),
        emax=gmpy2.get_emax_max(),
        subnormalize=False,
    )
    return (
        gmpy2.context(round=gmpy2.RoundDown, **kw),
        gmpy2.context(round=gmpy2.RoundUp, **kw),
    )


def _as_mpq(x) -> mpq:
    if isinstance(x, mpq):
        return x
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def round_down(x: Exact, prec: int) -> mpfr:
    q = _as_mpq(x)
    return _contexts(prec)[0].div(q.numerator, q.denominator)


def round_up(x: Exact, prec: int) -> mpfr:
    q = _as_mpq(x)
    return _contexts(prec)[1].div(q.numerator, q.denominator)


def mpfr_to_fraction(x: mpfr) -> Fraction:
    n, d = x.as_integer_ratio()
    return Fraction(int(n), int(d))


def _decimal_digits(prec: int) -> int:
    # one decimal digit beyond what is needed to separate neighbouring floats
    return math.ceil(prec * math.log10(2)) + 2


def format_endpoint(x: mpfr, prec: int, upward: bool) -> str:
    """Decimal string for an endpoint, rounded away from the enclosed set."""
    n, d = x.as_integer_ratio()
    ctx = decimal.Context(
        prec=_decimal_digits(prec),
        rounding=decimal.ROUND_CEILING if upward else decimal.ROUND_FLOOR,
        Emin=decimal.MIN_EMIN,
        Emax=decimal.MAX_EMAX,
    )
    return str(ctx.divide(decimal.Decimal(int(n)), decimal.Decimal(int(d))))


class IntervalScalar:
    """Closed interval ``[lo, hi]`` with MPFR endpoints at ``precision_bits``.

    Arithmetic with ``int`` and ``Fraction`` operands converts them to tight
    enclosures first.  Floats are rejected: they carry no exactness guarantee.
    """

    __slots__ = ("lo", "hi", "precision_bits")

    def __init__(self, lo: mpfr, hi: mpfr, precision_bits: int = DEFAULT_PRECISION):
        if precision_bits < MIN_PRECISION:
            raise ValueError(f"precision_bits must be >= {MIN_PRECISION}")
        if not lo <= hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi
        self.precision_bits = precision_bits

    # construction -----------------------------------------------------

    @classmethod
    def exact(cls, x: Exact, precision_bits: int = DEFAULT_PRECISION) -> "IntervalScalar":
        q = _as_mpq(x)
        dn, up = _contexts(precision_bits)
        return cls(dn.div(q.numerator, q.denominator), up.div(q.numerator, q.denominator), precision_bits)

    @classmethod
    def from_bounds(cls, lo: Exact, hi: Exact, precision_bits: int = DEFAULT_PRECISION) -> "IntervalScalar":
        return cls(round_down(lo, precision_bits), round_up(hi, precision_bits), precision_bits)

    def _coerce(self, other) -> "IntervalScalar":
        if isinstance(other, IntervalScalar):
            return other
        if isinstance(other, (int, Fraction, mpq)):
            return IntervalScalar.exact(other, self.precision_bits)
        return NotImplemented

    # arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = max(self.precision_bits, other.precision_bits)
        dn, up = _contexts(p)
        return IntervalScalar(dn.add(self.lo, other.lo), up.add(self.hi, other.hi), p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = max(self.precision_bits, other.precision_bits)
        dn, up = _contexts(p)
        return IntervalScalar(dn.sub(self.lo, other.hi), up.sub(self.hi, other.lo), p)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other.__sub__(self)

    def __neg__(self):
        # bare ``-x`` would round to the global 53-bit context
        dn, up = _contexts(self.precision_bits)
        return IntervalScalar(dn.minus(self.hi), up.minus(self.lo), self.precision_bits)

    def __pos__(self):
        return self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = max(self.precision_bits, other.precision_bits)
        dn, up = _contexts(p)
        a, b, c, d = self.lo, self.hi, other.lo, other.hi
        if a >= 0 and c >= 0:
            return IntervalScalar(dn.mul(a, c), up.mul(b, d), p)
        lo = min(dn.mul(a, c), dn.mul(a, d), dn.mul(b, c), dn.mul(b, d))
        hi = max(up.mul(a, c), up.mul(a, d), up.mul(b, c), up.mul(b, d))
        return IntervalScalar(lo, hi, p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("divisor interval contains zero")
        p = max(self.precision_bits, other.precision_bits)
        dn, up = _contexts(p)
        a, b, c, d = self.lo, self.hi, other.lo, other.hi
        if a >= 0 and c > 0:
            return IntervalScalar(dn.div(a, d), up.div(b, c), p)
        lo = min(dn.div(a, c), dn.div(a, d), dn.div(b, c), dn.div(b, d))
        hi = max(up.div(a, c), up.div(a, d), up.div(b, c), up.div(b, d))
        return IntervalScalar(lo, hi, p)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other.__truediv__(self)

    def square(self) -> "IntervalScalar":
        dn, up = _contexts(self.precision_bits)
        a, b = self.lo, self.hi
        if a >= 0:
            return IntervalScalar(dn.mul(a, a), up.mul(b, b), self.precision_bits)
        if b <= 0:
            return IntervalScalar(dn.mul(b, b), up.mul(a, a), self.precision_bits)
        return IntervalScalar(mpfr(0), max(up.mul(a, a), up.mul(b, b)), self.precision_bits)

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return IntervalScalar(mpfr(0), max(_contexts(self.precision_bits)[1].minus(self.lo), self.hi), self.precision_bits)

    def __pow__(self, e):
        if isinstance(e, (int, Fraction)):
            return self.pow_rational(Fraction(e))
        if isinstance(e, IntervalScalar):
            return self.pow_interval(e)
        return NotImplemented

    def pow_rational(self, e: Fraction, precision_bits: int | None = None) -> "IntervalScalar":
        """Enclosure of ``{x**e : x in self}`` for rational ``e``; needs ``lo > 0``
        unless ``e`` is a nonnegative integer."""
        p = precision_bits or self.precision_bits
        e = Fraction(e)
        if e == 0:
            return IntervalScalar.exact(1, p)
        if e.denominator == 1 and e > 0 and self.lo <= 0:
            return self._int_pow_signed(int(e), p)
        if self.lo <= 0:
            raise NonpositiveBase(f"base interval [{self.lo}, {self.hi}] is not positive")
        a, b = abs(e.numerator), e.denominator
        # guard bits absorb the amplification of the root error by the power a
        wp = p + a.bit_length() + 8
        dn, up = _contexts(wp)
        if e > 0:
            lo = self._root_pow(dn, self.lo, a, b)
            hi = self._root_pow(up, self.hi, a, b)
        else:
            lo = dn.div(1, self._root_pow(up, self.hi, a, b))
            hi = up.div(1, self._root_pow(dn, self.lo, a, b))
        pdn, pup = _contexts(p)
        return IntervalScalar(pdn.plus(lo), pup.plus(hi), p)

    @staticmethod
    def _root_pow(ctx, x, a, b):
        if b == 1:
            r = x
        elif b == 2:
            r = ctx.sqrt(x)
        else:
            r = ctx.rootn(x, b)
        return r if a == 1 else ctx.pow(r, a)

    def _int_pow_signed(self, k: int, p: int) -> "IntervalScalar":
        dn, up = _contexts(p)
        a, b = self.lo, self.hi
        if k % 2 == 1:
            return IntervalScalar(dn.pow(a, k), up.pow(b, k), p)
        return abs(self)._int_pow_signed(k, p) if a < 0 else IntervalScalar(dn.pow(a, k), up.pow(b, k), p)

    def exp(self) -> "IntervalScalar":
        dn, up = _contexts(self.precision_bits)
        return IntervalScalar(dn.exp(self.lo), up.exp(self.hi), self.precision_bits)

    def log(self) -> "IntervalScalar":
        if self.lo <= 0:
            raise NonpositiveBase("log of a non-positive interval")
        dn, up = _contexts(self.precision_bits)
        return IntervalScalar(dn.log(self.lo), up.log(self.hi), self.precision_bits)

    def pow_interval(self, e: "IntervalScalar") -> "IntervalScalar":
        """``self ** e`` for an interval exponent, through ``exp(e * log(self))``."""
        return (e * self.log()).exp()

    # queries ----------------------------------------------------------

    def width(self) -> mpfr:
        return _contexts(self.precision_bits)[1].sub(self.hi, self.lo)

    def mid(self) -> mpfr:
        ctx = _contexts(self.precision_bits + 1)[0]
        return ctx.div(ctx.add(self.lo, self.hi), 2)

    def is_point(self) -> bool:
        return self.lo == self.hi

    def is_positive(self) -> bool:
        return self.lo > 0

    def is_negative(self) -> bool:
        return self.hi < 0

    def contains(self, x) -> bool:
        if isinstance(x, IntervalScalar):
            return self.lo <= x.lo and x.hi <= self.hi
        q = _as_mpq(x) if not isinstance(x, mpfr) else x
        return self.lo <= q <= self.hi

    def overlaps(self, other: "IntervalScalar") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def hull(self, other: "IntervalScalar") -> "IntervalScalar":
        p = max(self.precision_bits, other.precision_bits)
        return IntervalScalar(min(self.lo, other.lo), max(self.hi, other.hi), p)

    def bounds(self) -> tuple[Fraction, Fraction]:
        return mpfr_to_fraction(self.lo), mpfr_to_fraction(self.hi)

    def decimal_bounds(self) -> tuple[str, str]:
        return (
            format_endpoint(self.lo, self.precision_bits, upward=False),
            format_endpoint(self.hi, self.precision_bits, upward=True),
        )

    def to_json(self) -> dict:
        lo, hi = self.decimal_bounds()
        return {"lo": lo, "hi": hi, "precision_bits": self.precision_bits}

    def __float__(self) -> float:
        return float(self.mid())

    def __repr__(self) -> str:
        lo, hi = self.decimal_bounds()
        return f"IntervalScalar([{lo}, {hi}], p={self.precision_bits})"


def interval_eval_power(base: IntervalScalar, expo: Fraction, precision_bits: int) -> IntervalScalar:
    """Enclosure of ``base ** expo`` at ``precision_bits``; ``base.lo`` must be > 0."""
    if precision_bits < MIN_PRECISION:
        raise ValueError(f"precision_bits must be >= {MIN_PRECISION}")
    if base.lo <= 0:
        raise NonpositiveBase(f"base interval [{base.lo}, {base.hi}] is not positive")
    return base.pow_rational(Fraction(expo), precision_bits)


def _root_pow_bounds(xq: mpq, a: int, b: int, prec: int) -> tuple[mpfr, mpfr]:
    """Directed bounds of ``xq ** (a/b)`` for rational ``xq > 0``, ``b >= 1``."""
    wp = prec + abs(a).bit_length() + 8
    dn, up = _contexts(wp)
    num, den = xq.numerator, xq.denominator
    xl, xh = dn.div(num, den), up.div(num, den)
    k = abs(a)
    if a > 0:
        lo = IntervalScalar._root_pow(dn, xl, k, b)
        hi = IntervalScalar._root_pow(up, xh, k, b)
    else:
        lo = dn.div(1, IntervalScalar._root_pow(up, xh, k, b))
        hi = up.div(1, IntervalScalar._root_pow(dn, xl, k, b))
    pdn, pup = _contexts(prec)
    return pdn.plus(lo), pup.plus(hi)


def power_of_exact(x, expo, precision_bits: int) -> IntervalScalar:
    """Enclosure of ``x ** expo`` for an exact rational ``x >= 0``."""
    xq = _as_mpq(x)
    if not isinstance(expo, Fraction):
        expo = Fraction(expo)
    a, b = expo.numerator, expo.denominator
    if xq <= 0:
        if xq == 0 and a > 0:
            return IntervalScalar(mpfr(0), mpfr(0), precision_bits)
        if xq == 0 and a == 0:
            return IntervalScalar.exact(1, precision_bits)
        raise NonpositiveBase(f"base {x} is not positive")
    if b == 1 and a >= 0:
        # exact power first: keeps rational results tight, e.g. Q_n**2
        return IntervalScalar.exact(xq**a, precision_bits)
    lo, hi = _root_pow_bounds(xq, a, b, precision_bits)
    return IntervalScalar(lo, hi, precision_bits)
