"""Registry of the scalar functions whose sign on an interval carries the proofs.

Polynomial entries are decided exactly by Sturm counting.  Transcendental
entries are enclosed with interval arithmetic over a subinterval ``X`` and
decided by bisection.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .core.interval import IntervalScalar
from .core.poly import Polynomial

F = Fraction


class LemmaKind(str, enum.Enum):
    POLYNOMIAL_EXACT = "PolynomialExact"
    TRANSCENDENTAL_INTERVAL = "TranscendentalInterval"


@dataclass(frozen=True)
class LemmaEntry:
    id: str
    kind: LemmaKind
    domain: tuple[Fraction, Fraction]
    description: str
    poly: Polynomial | None = None
    # func(X, params) -> IntervalScalar enclosing the function over X
    func: Callable | None = field(default=None, compare=False)
    param_domain: tuple[Fraction, Fraction] | None = None

    @property
    def needs_alpha(self) -> bool:
        return self.param_domain is not None


# -- polynomials -----------------------------------------------------------

_a = Polynomial.x()
_g1 = (1 - _a) / 2
_g2 = (1 + _a) / 2


def _falling(g: Polynomial, m: int) -> Polynomial:
    """``prod_{i=1..m} (i - g)``."""
    out = Polynomial([1])
    for i in range(1, m + 1):
        out = out * (i - g)
    return out


H = Polynomial([-10395, 46941, -24898, 8654, -1187, 85])
J1 = (_a**2 - 6 * _a + 5) * (7 * _a**2 - 6 * _a + 3) / (24 * 8)
J2 = Polynomial([945, -3840, 8029, -7200, 2515, -480, 31]) / (720 * 32)
F_FACTOR = Polynomial([105, -415, 846, -706, 201, -31])
QUARTIC69 = Polynomial([69, -282, 353, -134, 25])
S_ALPHA = Polynomial([0, -16, 104, -24])
U_ALPHA0 = Polynomial([0, 0, 0, 6, 2])

# product definitions, kept separate from the expanded forms above so the
# identity checks compare two independent constructions
M1_PRODUCT = _g1 * _falling(_g1, 7) - _a * _falling(_a, 7)
J1_PRODUCT = (_g1 * _falling(_g1, 3) + _g2 * _falling(_g2, 3) - _a * _falling(_a, 3)) / 24
J2_PRODUCT = (_g1 * _falling(_g1, 5) + _g2 * _falling(_g2, 5) - _a * _falling(_a, 5)) / 720

IDENTITIES: dict[str, tuple[Polynomial, Polynomial]] = {
    # 2^8 M_1 = (1-a)(3a-1)(13-a) H
    "M1H": (256 * M1_PRODUCT, (1 - _a) * (3 * _a - 1) * (13 - _a) * H),
    # 6! 32 J_2 = (9-a) f
    "J2f": (720 * 32 * J2_PRODUCT, (9 - _a) * F_FACTOR),
}


# -- transcendental enclosures ---------------------------------------------


def _pow_const(base: int, e: IntervalScalar) -> IntervalScalar:
    """``base ** e`` for an exact positive base and an interval exponent."""
    return (e * IntervalScalar.exact(base, e.precision_bits).log()).exp()


def _classical_const(X: IntervalScalar) -> IntervalScalar:
    return (X - 1).square() / 4


def _lemma21_f(X: IntervalScalar, _params) -> IntervalScalar:
    return 1 + _pow_const(2, X) - _pow_const(2, (1 + X) / 2) - _classical_const(X)


def _g_1750(X: IntervalScalar, _params) -> IntervalScalar:
    log2 = IntervalScalar.exact(2, X.precision_bits).log()
    return (8 * X * (2 - X)).log() - ((3 - X) * (1 + X)).log() - (1 - X) / 2 * log2


def _t_linear(X: IntervalScalar, _params) -> IntervalScalar:
    return 1 + (_pow_const(3, X) - _pow_const(3, (X + 1) / 2)) / 2 - _classical_const(X)


def _t_cubic(X: IntervalScalar, _params) -> IntervalScalar:
    return 1 + (_pow_const(3, 2 * X) - _pow_const(3, X + 1)) / 8 - _classical_const(X)


def _lemma35_gap(X: IntervalScalar, params) -> IntervalScalar:
    a = params["alpha"]
    base = 1 + 2 * X
    left = 8 * a * (1 - a) * (2 - a) * base.pow_rational(a - 3)
    right = (3 - a) * (1 - a * a) * base.pow_rational((a - 5) / 2)
    return left - right


_PE = LemmaKind.POLYNOMIAL_EXACT
_TI = LemmaKind.TRANSCENDENTAL_INTERVAL

REGISTRY: dict[str, LemmaEntry] = {
    e.id: e
    for e in [
        LemmaEntry("lemma21_f", _TI, (F(0), F(99, 100)), "1 + 2^a - 2^((1+a)/2) - (a-1)^2/4", func=_lemma21_f),
        LemmaEntry("H", _PE, (F(1, 3), F(1)), "85a^5 - 1187a^4 + 8654a^3 - 24898a^2 + 46941a - 10395", poly=H),
        LemmaEntry("J1", _PE, (F(1, 3), F(99, 100)), "(a^2-6a+5)(7a^2-6a+3)/(4!*8)", poly=J1),
        LemmaEntry("J2", _PE, (F(1, 3), F(99, 100)), "(31a^6 - 480a^5 + ... + 945)/(6!*32)", poly=J2),
        LemmaEntry("f_factor", _PE, (F(27, 50), F(99, 100)), "-31a^5 + 201a^4 - 706a^3 + 846a^2 - 415a + 105", poly=F_FACTOR),
        LemmaEntry("quartic69", _PE, (F(27, 50), F(99, 100)), "25a^4 - 134a^3 + 353a^2 - 282a + 69", poly=QUARTIC69),
        LemmaEntry("S_alpha", _PE, (F(17, 100), F(1, 2)), "-24a^3 + 104a^2 - 16a", poly=S_ALPHA),
        LemmaEntry(
            "G_1750", _TI, (F(17, 50), F(99, 100)), "log(8a(2-a)) - log((3-a)(1+a)) - (1-a)/2 log 2", func=_g_1750
        ),
        LemmaEntry("T_linear", _TI, (F(17, 50), F(99, 100)), "1 + (3^a - 3^((a+1)/2))/2 - (a-1)^2/4", func=_t_linear),
        LemmaEntry("T_cubic", _TI, (F(0), F(1, 2)), "1 + (3^(2a) - 3^(a+1))/8 - (a-1)^2/4", func=_t_cubic),
        LemmaEntry("U_alpha0", _PE, (F(1, 100), F(1, 2)), "2x^4 + 6x^3", poly=U_ALPHA0),
        LemmaEntry(
            "lemma35_gap",
            _TI,
            (F(0), F(1, 2)),
            "8a(1-a)(2-a)(1+2x)^(a-3) - (3-a)(1-a^2)(1+2x)^((a-5)/2), variable x",
            func=_lemma35_gap,
            param_domain=(F(17, 50), F(99, 100)),
        ),
    ]
}
