"""Exact univariate polynomials with integer coefficients."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

_TERM = re.compile(r"^(?:(\d+)\*?)?(?:([A-Za-z]\w*)(?:\^(\d+))?)?$")


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = [int(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPoly:
    """Polynomial ``sum(coeffs[i] * var**i)``; coefficients stored ascending."""

    coeffs: tuple[int, ...] = ()
    var: str = "t"

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def constant(cls, c: int, var: str = "t") -> "IntPoly":
        return cls((c,), var)

    @classmethod
    def monomial(cls, exponent: int, c: int = 1, var: str = "t") -> "IntPoly":
        return cls((0,) * exponent + (c,), var)

    @classmethod
    def from_terms(cls, terms: dict[int, int], var: str = "t") -> "IntPoly":
        if not terms:
            return cls((), var)
        if min(terms) < 0:
            raise ValueError("negative exponent")
        c = [0] * (max(terms) + 1)
        for e, v in terms.items():
            c[e] += v
        return cls(tuple(c), var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def terms(self) -> dict[int, int]:
        return {i: c for i, c in enumerate(self.coeffs) if c}

    def leading_coefficient(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def _coerce(self, other) -> "IntPoly":
        if isinstance(other, IntPoly):
            if other.var != self.var and other.degree > 0 and self.degree > 0:
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        if isinstance(other, int):
            return IntPoly((other,), self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly(tuple(x + y for x, y in zip(a, b)), self.var)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(tuple(-x for x in self.coeffs), self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return IntPoly((), self.var)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(tuple(out), self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = IntPoly((1,), self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coeffs == _trim((other,))
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        acc = 0 if isinstance(x, (int, Fraction)) else 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if e == 0:
                body = str(abs(c))
            else:
                mono = self.var if e == 1 else f"{self.var}^{e}"
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"IntPoly({str(self)!r}, var={self.var!r})"

    @classmethod
    def parse(cls, text: str, var: str = "t") -> "IntPoly":
        """Parse ``"1 + 2*L - L^3"``; parenthesised factors are not supported."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial")
        if s[0] not in "+-":
            s = "+" + s
        terms: dict[int, int] = {}
        for sign, body in re.findall(r"([+-])([^+-]+)", s):
            m = _TERM.match(body)
            if not m or (m.group(1) is None and m.group(2) is None):
                raise ValueError(f"cannot parse term {body!r}")
            coef = int(m.group(1)) if m.group(1) else 1
            if m.group(2) is None:
                exp = 0
            else:
                if m.group(2) != var:
                    raise ValueError(f"unknown variable {m.group(2)!r} (expected {var!r})")
                exp = int(m.group(3)) if m.group(3) else 1
            terms[exp] = terms.get(exp, 0) + (-coef if sign == "-" else coef)
        consumed = "".join(sg + b for sg, b in re.findall(r"([+-])([^+-]+)", s))
        if consumed != s:
            raise ValueError(f"cannot parse polynomial {text!r}")
        return cls.from_terms(terms, var)


def tate(coeffs: Iterable[int] | dict[int, int] | str) -> IntPoly:
    """Polynomial in the Lefschetz class ``L``."""
    if isinstance(coeffs, str):
        return IntPoly.parse(coeffs, "L")
    if isinstance(coeffs, dict):
        return IntPoly.from_terms(coeffs, "L")
    return IntPoly(tuple(coeffs), "L")
