"""Common result type for truncated series and quadrature evaluators."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class ConvergenceError(ValueError):
    """Raised when no rigorous truncation bound can be produced."""


@dataclass(frozen=True)
class SeriesValue:
    """A numeric value together with an upper bound on its truncation error.

    ``tail_bound`` is an upper bound on ``|true - value|`` for series; for Monte
    Carlo estimates it holds the standard error instead.
    """

    value: complex | float
    tail_bound: float
    terms_used: int

    def __post_init__(self):
        v = self.value
        if isinstance(v, (complex, np.complexfloating)):
            v = complex(v)
        elif not isinstance(v, (int, float)) or isinstance(v, (bool, np.generic)):
            v = float(v)
        object.__setattr__(self, "value", v)
        object.__setattr__(self, "tail_bound", float(self.tail_bound))
        object.__setattr__(self, "terms_used", int(self.terms_used))

    def __float__(self) -> float:
        return float(self.value.real if isinstance(self.value, complex) else self.value)

    def __add__(self, other: "SeriesValue") -> "SeriesValue":
        return SeriesValue(
            self.value + other.value,
            self.tail_bound + other.tail_bound,
            self.terms_used + other.terms_used,
        )

    def __sub__(self, other: "SeriesValue") -> "SeriesValue":
        return SeriesValue(
            self.value - other.value,
            self.tail_bound + other.tail_bound,
            self.terms_used + other.terms_used,
        )

    def scaled(self, factor: float) -> "SeriesValue":
        return SeriesValue(self.value * factor, self.tail_bound * abs(factor), self.terms_used)

    def contains(self, x: complex | float, slack: float = 0.0) -> bool:
        """True if ``x`` lies within the reported bound (plus ``slack``)."""
        return abs(x - self.value) <= self.tail_bound + slack

    def to_dict(self) -> dict:
        v = self.value
        if isinstance(v, complex):
            value = {"re": v.real, "im": v.imag}
        else:
            value = float(v)
        return {
            "value": value,
            "tail_bound": self.tail_bound if math.isfinite(self.tail_bound) else None,
            "terms_used": self.terms_used,
        }
