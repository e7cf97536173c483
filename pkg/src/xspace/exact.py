"""Exact rational combinations of zeta values."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .series import SeriesValue
from .special import zeta


@dataclass(frozen=True)
class ZetaCombination:
    """``constant + sum_s coeffs[s] * zeta(s)`` with rational coefficients, ``s >= 2``."""

    constant: Fraction = Fraction(0)
    coeffs: tuple = field(default=())  # sorted (s, Fraction) pairs, zeros dropped

    def __post_init__(self):
        object.__setattr__(self, "constant", Fraction(self.constant))
        merged: dict[int, Fraction] = {}
        for s, c in self.coeffs:
            if s < 2:
                raise ValueError("zeta(s) needs s >= 2")
            merged[s] = merged.get(s, Fraction(0)) + Fraction(c)
        object.__setattr__(self, "coeffs", tuple(sorted((s, c) for s, c in merged.items() if c)))

    @classmethod
    def zeta(cls, s: int, c=1) -> "ZetaCombination":
        return cls(Fraction(0), ((s, Fraction(c)),))

    @classmethod
    def rational(cls, c) -> "ZetaCombination":
        return cls(Fraction(c))

    def coefficient(self, s: int) -> Fraction:
        return dict(self.coeffs).get(s, Fraction(0))

    def __add__(self, other):
        if not isinstance(other, ZetaCombination):
            other = ZetaCombination.rational(other)
        return ZetaCombination(self.constant + other.constant, self.coeffs + other.coeffs)

    __radd__ = __add__

    def __neg__(self):
        return ZetaCombination(-self.constant, tuple((s, -c) for s, c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, k):
        k = Fraction(k)
        return ZetaCombination(self.constant * k, tuple((s, c * k) for s, c in self.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, k):
        return self * (1 / Fraction(k))

    def evaluate(self) -> SeriesValue:
        total = SeriesValue(float(self.constant), 0.0, 0)
        for s, c in self.coeffs:
            total = total + zeta(s).scaled(float(c))
        return total

    def __float__(self) -> float:
        return float(self.evaluate().value)

    def __str__(self) -> str:
        parts = []
        if self.constant or not self.coeffs:
            parts.append(str(self.constant))
        for s, c in self.coeffs:
            mag = abs(c)
            body = f"zeta({s})" if mag == 1 else f"{mag}*zeta({s})"
            if parts:
                parts.append(("- " if c < 0 else "+ ") + body)
            else:
                parts.append(("-" if c < 0 else "") + body)
        return " ".join(parts)

    def to_dict(self) -> dict:
        return {
            "constant": str(self.constant),
            "zeta": {str(s): str(c) for s, c in self.coeffs},
            "text": str(self),
        }
