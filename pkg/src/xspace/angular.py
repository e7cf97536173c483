"""Angular integrals: polygons, l = 0 Gaunt data and star gluing in D = 4."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .oracles import gauss_legendre_weighted
from .special import dim_harmonics, gegenbauer, gegenbauer_all, sphere_volume


def polygon_angular(n: int, k: int, D: int) -> float:
    """Angular integral of a ``k``-gon with every propagator in the degree-``n`` channel.

    ``(lam Vol(S^{D-1}) / (n + lam))^k * dim H_n``; for ``D = 4`` this is
    ``(2 pi^2)^k / (n+1)^{k-2}``.
    """
    if k < 2:
        raise ValueError("a polygon needs k >= 2")
    if n < 0:
        raise ValueError("n must be nonnegative")
    lam = D / 2 - 1
    base = lam * 2 * math.pi ** (lam + 1) / (math.gamma(lam + 1) * (n + lam))
    return base**k * dim_harmonics(n, D)


def selection_allowed(n1: int, n2: int, n3: int) -> bool:
    """Even total degree and the triangle inequalities."""
    if min(n1, n2, n3) < 0:
        return False
    if (n1 + n2 + n3) % 2:
        return False
    return abs(n2 - n3) <= n1 <= n2 + n3 and abs(n1 - n3) <= n2 <= n1 + n3 and abs(n1 - n2) <= n3 <= n1 + n2


@dataclass(frozen=True)
class GauntIndex:
    """Degrees of a triple coupling; only the ``l = 0`` labels are evaluable here."""

    degrees: tuple
    ell: tuple = (0, 0, 0)

    @property
    def J(self) -> float:
        return sum(self.degrees) / 2

    def allowed(self) -> bool:
        return selection_allowed(*self.degrees)


def gaunt_l0(n1: int, n2: int, n3: int, D: int = 4, sign: int = 1) -> float:
    """Closed-form ``l = 0`` coupling of three harmonics on ``S^{D-1}``.

    Zero off the selection domain. Inside it the magnitude is

    ``Gamma(D/2)^{-1} ((J+D-3)! / ((D-3)! Gamma(J+D/2))
    prod_i (n_i+D/2-1) Gamma(J-n_i+D/2-1) / (d_{n_i} (J-n_i)!))^{1/2}``

    with ``J`` half the total degree and ``d_n`` the harmonic dimension.
    In ``D = 4`` it collapses to ``prod (n_i+1)^{-1/2}``. The overall sign is
    conventional and fixed to ``sign``.
    """
    if D < 3:
        raise ValueError("D must be at least 3")
    ns = (n1, n2, n3)
    if not selection_allowed(*ns):
        return 0.0
    J = sum(ns) // 2
    h = D / 2
    log = math.lgamma(J + D - 2) - math.lgamma(D - 2) - math.lgamma(J + h)
    for n in ns:
        log += (
            math.log(n + h - 1) + math.lgamma(J - n + h - 1)
            - math.log(dim_harmonics(n, D)) - math.lgamma(J - n + 1)
        )
    return sign * math.exp(0.5 * log - math.lgamma(h))


def zonal_triple_integral(n1: int, n2: int, n3: int, D: int = 4) -> float:
    """``int_{-1}^{1} C_{n1} C_{n2} C_{n3} (1-x^2)^{lam-1/2} dx``, exact Gauss-Jacobi."""
    lam = D // 2 - 1
    nodes = (n1 + n2 + n3) // 2 + 2
    return gauss_legendre_weighted(
        lambda x: gegenbauer(n1, lam, x) * gegenbauer(n2, lam, x) * gegenbauer(n3, lam, x),
        lam - 0.5,
        nodes,
    )


def banana3_angular(n1: int, n2: int, n3: int) -> float:
    """``int_{(S^3)^2} prod_i C_{n_i}(w1 . w2) dw1 dw2`` in ``D = 4``.

    Rotation invariance fixes ``w1``; the remaining integral is
    ``Vol(S^3) Vol(S^2) int C C C (1-x^2)^{1/2} dx``.
    """
    return sphere_volume(4) * sphere_volume(3) * zonal_triple_integral(n1, n2, n3, 4)


KAPPA = banana3_angular(0, 0, 0)
"""Normalisation of the glued-star coefficients, ``Vol(S^3)^2 = 4 pi^4``."""


@dataclass(frozen=True)
class CouplingCoefficient:
    outer: tuple
    n: int
    value: float

    @property
    def allowed(self) -> bool:
        n1, n2, n3, n4 = self.outer
        return selection_allowed(self.n, n1, n2) and selection_allowed(self.n, n3, n4)


def coupling_K_l0_d4(n: int, n1: int, n2: int, n3: int, n4: int, kappa: float = KAPPA) -> CouplingCoefficient:
    """``kappa (n+1)^{-3} prod_i (n_i+1)^{-1/2}`` on the double selection domain, else 0."""
    if min(n, n1, n2, n3, n4) < 0:
        raise ValueError("degrees must be nonnegative")
    c = CouplingCoefficient((n1, n2, n3, n4), n, 0.0)
    if not c.allowed:
        return c
    value = kappa / (n + 1) ** 3 / math.sqrt((n1 + 1) * (n2 + 1) * (n3 + 1) * (n4 + 1))
    return CouplingCoefficient((n1, n2, n3, n4), n, value)


def gegs_closed_form(n: int, m: int, D: int, c: float) -> float:
    """``int_{S^{D-1}} C_m(w1.w) C_n(w.w2) dw`` for ``w1.w2 = c``: reproducing identity."""
    if n != m:
        return 0.0
    lam = D / 2 - 1
    return lam * sphere_volume(D) / (n + lam) * gegenbauer(n, lam, c)


def gegs_two_point(n: int, m: int, D: int, c: float) -> float:
    """Same integral by explicit quadrature with ``w1`` the north pole.

    Writing ``w = (x, sqrt(1-x^2) eta)``, the integrand is a polynomial in
    ``x``, ``sqrt(1-x^2)`` and ``u = eta_1``; odd powers of ``u`` integrate to
    zero, so Gauss-Jacobi rules in ``x`` and ``u`` are exact.
    """
    lam = D / 2 - 1
    s = math.sqrt(max(0.0, 1 - c * c))
    k = (n + m) // 2 + 2
    xs, wx = _jacobi(k, lam - 0.5)
    us, wu = _jacobi(k, (D - 4) / 2)
    X, U = np.meshgrid(xs, us, indexing="ij")
    arg = c * X + s * np.sqrt(1 - X * X) * U
    vals = gegenbauer_all(max(n, m), lam, X)[m] * gegenbauer_all(n, lam, arg)[n]
    inner = vals @ wu
    return float(sphere_volume(D - 2) * np.dot(wx, inner))


def _jacobi(k: int, a: float):
    from scipy.special import roots_jacobi

    return roots_jacobi(k, a, a)
