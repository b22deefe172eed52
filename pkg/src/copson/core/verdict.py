from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Any


class State(str, enum.Enum):
    POSITIVE = "Positive"
    NONPOSITIVE = "NonPositive"
    UNDECIDED = "Undecided"


class Method(str, enum.Enum):
    STURM_EXACT = "SturmExact"
    INTERVAL_SUBDIVISION = "IntervalSubdivision"
    POINTWISE_INTERVAL = "PointwiseInterval"


@dataclass(frozen=True)
class Verdict:
    """Rigorous tri-state outcome plus how it was obtained.

    ``witness`` is where a failure (or the tightest spot) was found: an index
    ``n``, a rational point, or a rational bracket ``(lo, hi)``.
    """

    state: State
    method: Method
    precision_bits: int = 0
    subdivisions: int = 0
    witness: Any = None

    @property
    def positive(self) -> bool:
        return self.state is State.POSITIVE

    def to_json(self) -> dict:
        return {
            "state": self.state.value,
            "method": self.method.value,
            "precision_bits": self.precision_bits,
            "subdivisions": self.subdivisions,
            "witness": witness_to_json(self.witness),
        }


def rational_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def witness_to_json(w):
    if w is None or isinstance(w, bool):
        return w
    if isinstance(w, int):
        return w
    if isinstance(w, Fraction):
        return rational_str(w)
    if isinstance(w, tuple):
        return [witness_to_json(v) for v in w]
    return str(w)
