from fractions import Fraction

import mpmath
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# rationals strictly inside [0, 1) with small denominators
alphas = st.builds(Fraction, st.integers(0, 99), st.just(100)) | st.sampled_from(
    [Fraction(0), Fraction(1, 3), Fraction(17, 50), Fraction(1, 2), Fraction(3, 4), Fraction(99, 100)]
)


def mp(x) -> mpmath.mpf:
    x = Fraction(x)
    return mpmath.mpf(x.numerator) / x.denominator


def encloses(iv, value) -> bool:
    """``value`` (mpmath at higher precision than ``iv``) lies in ``iv``."""
    lo, hi = iv.bounds()
    return mp(lo) <= value <= mp(hi)


@pytest.fixture(autouse=True)
def _mp_precision():
    with mpmath.workprec(600):
        yield
