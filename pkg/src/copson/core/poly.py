"""Exact rational polynomials, Sturm chains and sign certificates."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import ZeroPolynomial
from .verdict import Method, State, Verdict


def gen_binomial(beta, k: int) -> Fraction:
    """Generalized binomial coefficient ``beta (beta-1) ... (beta-k+1) / k!``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    beta = Fraction(beta)
    num = Fraction(1)
    for i in range(k):
        num *= beta - i
    return num / math.factorial(k)


class Polynomial:
    """Univariate polynomial with ``Fraction`` coefficients, ``coeffs[i]`` for ``x**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def x(cls) -> "Polynomial":
        return cls([0, 1])

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, x):
        # Horner; works for Fraction and IntervalScalar arguments alike
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            other = Polynomial([other])
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    @staticmethod
    def _lift(v) -> "Polynomial":
        return v if isinstance(v, Polynomial) else Polynomial([v])

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Polynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Polynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def __truediv__(self, c):
        c = Fraction(c)
        return Polynomial(a / c for a in self.coeffs)

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        lead = other.leading()
        dv = other.degree
        while len(rem) - 1 >= dv and rem:
            shift = len(rem) - 1 - dv
            f = rem[-1] / lead
            q[shift] = f
            for j, c in enumerate(other.coeffs):
                rem[shift + j] -= f * c
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        return Polynomial(q), Polynomial(rem)

    def derivative(self) -> "Polynomial":
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def primitive(self) -> "Polynomial":
        """Divide by the positive rational content; the sign pattern is preserved."""
        if self.is_zero():
            return self
        den = math.lcm(*(c.denominator for c in self.coeffs))
        nums = [int(c * den) for c in self.coeffs]
        g = math.gcd(*nums)
        return Polynomial(Fraction(n, g) for n in nums)

    def __repr__(self) -> str:
        if self.is_zero():
            return "Polynomial(0)"
        terms = [f"{c}*x^{i}" for i, c in enumerate(self.coeffs) if c]
        return "Polynomial(" + " + ".join(reversed(terms)) + ")"


def sturm_chain(p: Polynomial) -> list[Polynomial]:
    if p.is_zero():
        raise ZeroPolynomial("Sturm chain of the zero polynomial")
    chain = [p.primitive(), p.derivative().primitive()]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        _, r = chain[-2].divmod(chain[-1])
        chain.append((-r).primitive())
    if chain[-1].is_zero():
        chain.pop()
    return chain


def sign_variations(chain: Sequence[Polynomial], x: Fraction) -> int:
    signs = [v > 0 for v in (q(x) for q in chain) if v != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def _deflate(p: Polynomial, r: Fraction) -> tuple[Polynomial, bool]:
    """Divide out every factor ``(x - r)``; report whether there was one."""
    lin = Polynomial([-r, 1])
    hit = False
    while p(r) == 0:
        p, _ = p.divmod(lin)
        hit = True
    return p, hit


def count_roots(p: Polynomial, a, b) -> int:
    """Number of distinct real roots of ``p`` in the closed interval ``[a, b]``."""
    a, b = Fraction(a), Fraction(b)
    if a > b:
        raise ValueError("need a <= b")
    if p.is_zero():
        raise ZeroPolynomial("root count of the zero polynomial")
    if a == b:
        return int(p(a) == 0)
    p, at_a = _deflate(p, a)
    p, at_b = _deflate(p, b)
    inner = 0
    if p.degree > 0:
        chain = sturm_chain(p)
        inner = sign_variations(chain, a) - sign_variations(chain, b)
    return inner + at_a + at_b


def isolate_root(p: Polynomial, a, b, width=Fraction(1, 2**32)) -> tuple[Fraction, Fraction]:
    """Shrink ``[a, b]`` (which must contain a root) to a bracket of at most ``width``."""
    a, b = Fraction(a), Fraction(b)
    if p(a) == 0:
        return a, a
    while b - a > width:
        m = (a + b) / 2
        if p(m) == 0:
            return m, m
        if count_roots(p, a, m) > 0:
            b = m
        else:
            a = m
    return a, b


def certify_poly_positive(p: Polynomial, a, b) -> Verdict:
    """Exact decision of ``p > 0`` on the closed interval ``[a, b]``."""
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError("need a < b")
    if p.is_zero():
        raise ZeroPolynomial("positivity of the zero polynomial is ill-posed")
    if count_roots(p, a, b) > 0:
        return Verdict(State.NONPOSITIVE, Method.STURM_EXACT, witness=isolate_root(p, a, b))
    if p(a) < 0:
        return Verdict(State.NONPOSITIVE, Method.STURM_EXACT, witness=a)
    return Verdict(State.POSITIVE, Method.STURM_EXACT)


def poly_identity_check(p: Polynomial, q: Polynomial) -> bool:
    return p == q
