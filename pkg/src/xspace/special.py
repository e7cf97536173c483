"""Gegenbauer polynomials, sphere data, Bernoulli numbers and zeta values.

Dimensions are even, ``D = 2*lam + 2``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .series import ConvergenceError, SeriesValue


def lam_of(D: int) -> Fraction | int:
    """``lambda = D/2 - 1``."""
    if D < 3:
        raise ValueError("D must be at least 3")
    return D // 2 - 1 if D % 2 == 0 else Fraction(D - 2, 2)


@dataclass(frozen=True)
class Dimension:
    """Even spacetime dimension ``D >= 4`` together with ``lam = D/2 - 1``."""

    D: int

    def __post_init__(self):
        if self.D < 4 or self.D % 2:
            raise ValueError("D must be an even integer >= 4")

    @property
    def lam(self) -> int:
        return self.D // 2 - 1

    @classmethod
    def from_lam(cls, lam: int) -> "Dimension":
        return cls(2 * lam + 2)


def gegenbauer(n: int, lam, x):
    """``C_n^{(lam)}(x)`` by the upward three-term recurrence.

    Works with floats, numpy arrays, ``Fraction`` and ``mpmath`` numbers
    alike; the arithmetic type follows the inputs.

    >>> gegenbauer(2, 1, 0.5)
    0.0
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    one = x * 0 + 1
    if n == 0:
        return one
    c_prev, c = one, 2 * lam * x
    for k in range(2, n + 1):
        c_prev, c = c, (2 * x * (k + lam - 1) * c - (k + 2 * lam - 2) * c_prev) / k
    return c


def gegenbauer_all(nmax: int, lam, x) -> np.ndarray:
    """``[C_0(x), ..., C_nmax(x)]`` stacked along a new leading axis."""
    x = np.asarray(x, dtype=float)
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = 1.0
    if nmax >= 1:
        out[1] = 2 * lam * x
    for k in range(2, nmax + 1):
        out[k] = (2 * x * (k + lam - 1) * out[k - 1] - (k + 2 * lam - 2) * out[k - 2]) / k
    return out


def gegenbauer_norm(n: int, lam) -> float:
    """``int_{-1}^{1} C_n(x)^2 (1-x^2)^{lam-1/2} dx``."""
    if lam <= -0.5:
        raise ValueError("lam must exceed -1/2")
    lam = float(lam)
    log = (
        math.log(math.pi)
        + (1 - 2 * lam) * math.log(2)
        + math.lgamma(n + 2 * lam)
        - math.lgamma(n + 1)
        - math.log(n + lam)
        - 2 * math.lgamma(lam)
    )
    return math.exp(log)


def sphere_volume(D: int) -> float:
    """Surface measure of the unit sphere ``S^{D-1}``: ``2 pi^{D/2} / Gamma(D/2)``."""
    return 2 * math.pi ** (D / 2) / math.gamma(D / 2)


def dim_harmonics(n: int, D: int) -> int:
    """Dimension of degree-``n`` spherical harmonics on ``S^{D-1}``."""
    if n < 0 or D < 3:
        raise ValueError("need n >= 0 and D >= 3")
    second = math.comb(D - 3 + n, n - 2) if n >= 2 else 0
    return math.comb(D - 1 + n, n) - second


def zonal_coeff(D: int, n: int) -> tuple[float, Fraction]:
    """``(c_{D,n}, C_n^{(lam)}(1))``.

    ``c_{D,n} = Vol(S^{D-1}) (D-2) / (2n + D - 2)`` is the factor in the
    reproducing identity for zonal harmonics; the second entry is the exact
    value ``lam * dim H_n / (n + lam)``.
    """
    lam = Fraction(D - 2, 2)
    c = sphere_volume(D) * (D - 2) / (2 * n + D - 2)
    return c, lam * dim_harmonics(n, D) / (n + lam)


def propagator_truncation(lam, rho: float, r: float, cos_theta: float, N: int) -> SeriesValue:
    """Gegenbauer expansion of ``|x - y|^{-2 lam}`` with ``|x| = rho > r = |y|``.

    The tail uses ``|C_n(x)| <= C_n(1) = binom(n + 2 lam - 1, n)`` and the
    fact that consecutive majorant ratios decrease towards ``r/rho``.
    """
    if not r < rho:
        raise ValueError("expansion requires r < rho")
    if abs(cos_theta) > 1:
        raise ValueError("|cos theta| must not exceed 1")
    q = r / rho
    cs = gegenbauer_all(N, lam, cos_theta)
    powers = q ** np.arange(N + 1)
    value = rho ** (-2 * lam) * math.fsum(powers * cs)
    if q == 0:
        return SeriesValue(value, 0.0, N + 1)
    m = N + 1
    lead = math.comb(m + int(2 * lam) - 1, m) * q**m if float(lam).is_integer() else (
        math.exp(math.lgamma(m + 2 * lam) - math.lgamma(m + 1) - math.lgamma(2 * lam)) * q**m
    )
    ratio = q * (m + 2 * lam) / (m + 1)
    if ratio >= 1:
        return SeriesValue(value, math.inf, N + 1)
    return SeriesValue(value, rho ** (-2 * lam) * lead / (1 - ratio), N + 1)


# ---------------------------------------------------------------------------
# Bernoulli numbers


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple[Fraction, ...]:
    # Akiyama-Tanigawa gives b_1 = +1/2; flip it afterwards
    out = []
    a = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    if n >= 1:
        out[1] = Fraction(-1, 2)
    return tuple(out)


def bernoulli(k: int) -> Fraction:
    """Exact Bernoulli number with ``b_1 = -1/2``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    size = max(32, 1 << (k.bit_length()))
    return _bernoulli_table(size)[k]


def bernoulli_polynomial(N: int, x):
    """``B_N(x) = sum_k binom(N, k) b_k x^{N-k}``."""
    acc = 0
    for k in range(N + 1):
        b = bernoulli(k)
        if b:
            acc = acc + math.comb(N, k) * (b if isinstance(x, Fraction) else float(b)) * x ** (N - k)
    return acc


def bernoulli_periodic_sup(N: int) -> float:
    """``sup |B_N({x})|`` over ``x``: attained at ``x = 0`` for even ``N``, bounded by the usual estimate otherwise."""
    if N % 2 == 0:
        return abs(float(bernoulli(N)))
    return 2 * math.factorial(N) / (2 * math.pi) ** N * (math.pi**2 / 6)


@dataclass(frozen=True)
class BernoulliTable:
    """Exact ``b_0..b_order`` (``b_1 = -1/2``) with a Bernoulli polynomial evaluator."""

    order: int

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be nonnegative")

    @property
    def numbers(self) -> tuple[Fraction, ...]:
        return tuple(bernoulli(k) for k in range(self.order + 1))

    def __getitem__(self, k: int) -> Fraction:
        if not 0 <= k <= self.order:
            raise IndexError(k)
        return bernoulli(k)

    def polynomial(self, N: int, x):
        if N > self.order:
            raise ValueError("polynomial degree exceeds the table order")
        return bernoulli_polynomial(N, x)


# ---------------------------------------------------------------------------
# zeta


def zeta(s: int, terms: int = 20, order: int = 14) -> SeriesValue:
    """Riemann zeta at an integer ``s >= 2``.

    Direct sum to ``terms - 1`` plus Euler-Maclaurin tail from ``terms`` with
    ``order/2`` Bernoulli corrections. The reported bound majorizes the first
    omitted correction times two, valid since the remainder alternates and
    decreases in the convergent regime used here.
    """
    if s <= 1:
        raise ConvergenceError("divergent")
    n = terms
    head = math.fsum(k ** (-s) for k in range(1, n))
    tail = [n ** (1 - s) / (s - 1), 0.5 * n ** (-s)]
    rising = s  # (s)_{2j-1} accumulated
    j = 1
    for k in range(2, order + 1, 2):
        # f^{(k-1)}(n) = -(s)_{k-1} n^{-s-k+1}; minus sign from lower endpoint
        tail.append(float(bernoulli(k)) / math.factorial(k) * rising * n ** (-s - k + 1))
        rising *= (s + k - 1) * (s + k)
        j += 1
    k = order + 2
    bound = 2 * abs(float(bernoulli(k))) / math.factorial(k) * rising * n ** (-s - k + 1)
    return SeriesValue(head + math.fsum(tail), bound + 4e-16 * head, n - 1)


@lru_cache(maxsize=None)
def zeta_float(s: int) -> float:
    return zeta(s).value


def harmonic(n: int) -> Fraction:
    return sum((Fraction(1, k) for k in range(1, n + 1)), Fraction(0))
