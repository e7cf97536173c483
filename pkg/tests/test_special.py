import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from xspace.exact import ZetaCombination
from xspace.oracles import McConfig, gauss_legendre_weighted, sphere_mc
from xspace.series import ConvergenceError, SeriesValue
from xspace.special import (
    BernoulliTable,
    Dimension,
    bernoulli,
    bernoulli_polynomial,
    dim_harmonics,
    gegenbauer,
    gegenbauer_all,
    gegenbauer_norm,
    propagator_truncation,
    sphere_volume,
    zeta,
    zonal_coeff,
)


def taylor_gegenbauer(nmax, lam, x):
    """Oracle: coefficients of (1 - 2 t x + t^2)^(-lam) by exact power-series arithmetic."""
    x = Fraction(x)
    # (1 + u)^(-lam) with u = -2 t x + t^2, expanded in t
    base = [Fraction(0)] * (nmax + 1)
    base[1] = -2 * x
    if nmax >= 2:
        base[2] = Fraction(1)
    out = [Fraction(0)] * (nmax + 1)
    power = [Fraction(1)] + [Fraction(0)] * nmax
    binom = Fraction(1)
    for j in range(nmax + 1):
        for i in range(nmax + 1):
            out[i] += binom * power[i]
        binom = binom * (-lam - j) / (j + 1)
        new = [Fraction(0)] * (nmax + 1)
        for i, a in enumerate(power):
            if a:
                for k, b in enumerate(base):
                    if b and i + k <= nmax:
                        new[i + k] += a * b
        power = new
    return out


# -- Dimension / Bernoulli table ------------------------------------------------


def test_dimension_type():
    assert Dimension(4).lam == 1
    assert Dimension.from_lam(3).D == 8
    for bad in (3, 2, 5):
        with pytest.raises(ValueError):
            Dimension(bad)


def test_bernoulli_examples_and_table():
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(4) == Fraction(-1, 30)
    table = BernoulliTable(40)
    assert all(table[k] == 0 for k in range(3, 41, 2))
    for k in range(2, 41):
        assert float(table[k]) == pytest.approx(float(mpmath.bernoulli(k)), rel=1e-14, abs=0)


def test_bernoulli_polynomial_matches_mpmath():
    for N in range(8):
        for x in (0.0, 0.3, 0.5, 0.9):
            assert bernoulli_polynomial(N, x) == pytest.approx(float(mpmath.bernpoly(N, x)), abs=1e-13)


# -- Gegenbauer ---------------------------------------------------------------


def test_gegenbauer_examples():
    assert gegenbauer(0, 1, 0.3) == 1
    assert gegenbauer(1, 1, 0.5) == pytest.approx(1.0)
    assert gegenbauer(2, 1, 0.5) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("lam", [1, 2, 3])
@pytest.mark.parametrize("x", ["-0.9", "0", "0.7"])
def test_gegenbauer_matches_generating_function(lam, x):
    coeffs = taylor_gegenbauer(15, lam, Fraction(x))
    for n in range(16):
        assert gegenbauer(n, lam, float(Fraction(x))) == pytest.approx(float(coeffs[n]), abs=1e-12, rel=1e-12)
        assert gegenbauer(n, lam, Fraction(x)) == coeffs[n]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 30), st.sampled_from([0.5, 1, 1.5, 2, 3]), st.floats(-1, 1))
def test_gegenbauer_matches_mpmath(n, lam, x):
    # explicit finite sum in 50-digit arithmetic
    with mpmath.workdps(50):
        lm, xx = mpmath.mpf(lam), mpmath.mpf(x)
        ref = float(mpmath.fsum(
            (-1) ** k * mpmath.gamma(n - k + lm) / (mpmath.gamma(lm) * mpmath.factorial(k) * mpmath.factorial(n - 2 * k))
            * (2 * xx) ** (n - 2 * k)
            for k in range(n // 2 + 1)
        ))
    assert gegenbauer(n, lam, x) == pytest.approx(ref, abs=1e-10 * max(1.0, abs(ref)))


def test_gegenbauer_all_rows():
    x = np.linspace(-1, 1, 7)
    table = gegenbauer_all(6, 2, x)
    for n in range(7):
        np.testing.assert_allclose(table[n], [gegenbauer(n, 2, xi) for xi in x], rtol=1e-13, atol=1e-13)


def test_gegenbauer_at_one_is_harmonic_ratio():
    for D in (4, 6, 8):
        lam = D // 2 - 1
        for n in range(31):
            assert gegenbauer(n, lam, Fraction(1)) == Fraction(2 * lam * dim_harmonics(n, D), 2 * (n + lam))
            assert zonal_coeff(D, n)[1] == gegenbauer(n, lam, Fraction(1))


def test_gegenbauer_norm_examples_and_orthogonality():
    assert gegenbauer_norm(0, 1) == pytest.approx(math.pi / 2)
    # int 4 x^2 sqrt(1 - x^2) dx over [-1, 1]
    assert gegenbauer_norm(1, 1) == pytest.approx(math.pi / 2)
    for lam in (1, 2):
        for n in range(11):
            for m in range(11):
                q = gauss_legendre_weighted(lambda x: gegenbauer(n, lam, x) * gegenbauer(m, lam, x), lam - 0.5, 12)
                ref = gegenbauer_norm(n, lam) if n == m else 0.0
                assert q == pytest.approx(ref, abs=1e-10 * max(1, ref))


# -- sphere data ---------------------------------------------------------------


def test_sphere_volume_examples():
    assert sphere_volume(4) == pytest.approx(2 * math.pi**2)
    assert sphere_volume(6) == pytest.approx(math.pi**3)


def test_sphere_volume_monte_carlo():
    # fraction of the cube [-1,1]^4 inside the unit ball gives Vol(S^3)/4
    rng = np.random.default_rng(7)
    pts = rng.uniform(-1, 1, size=(400_000, 4))
    frac = np.mean(np.sum(pts**2, axis=1) <= 1)
    assert 16 * frac * 4 == pytest.approx(sphere_volume(4), rel=0.01)


def test_dim_harmonics_examples():
    assert dim_harmonics(2, 4) == 9
    assert dim_harmonics(0, 7) == 1
    assert dim_harmonics(3, 6) == 50
    assert all(dim_harmonics(n, 4) == (n + 1) ** 2 for n in range(51))


def test_zonal_coeff_d4():
    for n in range(10):
        c, c1 = zonal_coeff(4, n)
        assert c == pytest.approx(2 * math.pi**2 / (n + 1))
        assert c1 == n + 1 == gegenbauer(n, 1, 1.0)


# -- propagator expansion --------------------------------------------------------


def test_propagator_truncation_examples():
    assert propagator_truncation(1, 2.0, 0.0, 0.3, 5).value == pytest.approx(0.25)
    v = propagator_truncation(1, 1.0, 0.5, 1.0, 80)
    assert v.value == pytest.approx(4.0, abs=1e-12)
    with pytest.raises(ValueError, match="expansion requires r < rho"):
        propagator_truncation(1, 1.0, 1.0, 0.0, 5)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31 - 1), st.sampled_from([1, 2]))
def test_propagator_truncation_against_direct(seed, lam):
    rng = np.random.default_rng(seed)
    D = 2 * lam + 2
    x, y = rng.standard_normal((2, D))
    rho, r = sorted([np.linalg.norm(x), np.linalg.norm(y)], reverse=True)
    if r > 0.8 * rho:
        r = 0.8 * rho * rng.uniform(0.1, 1)
        y = y / np.linalg.norm(y) * r
        x = x / np.linalg.norm(x) * rho
    else:
        x, y = (x, y) if np.linalg.norm(x) >= np.linalg.norm(y) else (y, x)
    c = float(x @ y / (rho * r))
    direct = float(np.linalg.norm(x - y)) ** (-2 * lam)
    prev = None
    for N in (20, 40, 60, 120):
        v = propagator_truncation(lam, rho, r, c, N)
        assert abs(v.value - direct) <= v.tail_bound + 1e-12 * direct
        prev = v
    assert abs(prev.value - direct) <= 1e-10 * direct


# -- zeta and exact combinations -------------------------------------------------


def test_zeta_values():
    assert zeta(2).value == pytest.approx(math.pi**2 / 6, abs=1e-12)
    for s in range(2, 13):
        z = zeta(s)
        assert abs(z.value - float(mpmath.zeta(s))) <= max(z.tail_bound, 1e-15)
    with pytest.raises(ConvergenceError, match="divergent"):
        zeta(1)


def test_zeta_combination_algebra():
    a = ZetaCombination.zeta(2) - 1
    assert str(a) == "-1 + zeta(2)"
    b = (a * 3 + ZetaCombination.zeta(3, Fraction(1, 2))) / 3
    assert b.coefficient(2) == 1 and b.coefficient(3) == Fraction(1, 6)
    assert float(b) == pytest.approx(math.pi**2 / 6 - 1 + float(mpmath.zeta(3)) / 6, abs=1e-14)
    assert (a - a).coeffs == ()


def test_series_value_arithmetic():
    a = SeriesValue(1.0, 1e-3, 5)
    b = SeriesValue(np.float64(2.0), np.float64(1e-3), np.int64(3))
    c = a + b
    assert type(c.tail_bound) is float and c.tail_bound == pytest.approx(2e-3)
    assert c.contains(3.0015) and not c.contains(3.01)
    assert a.scaled(-2).tail_bound == pytest.approx(2e-3)
