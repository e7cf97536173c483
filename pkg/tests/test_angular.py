import itertools
import math

import numpy as np
import pytest

from xspace.angular import (
    KAPPA,
    GauntIndex,
    banana3_angular,
    coupling_K_l0_d4,
    gaunt_l0,
    gegs_closed_form,
    gegs_two_point,
    polygon_angular,
    selection_allowed,
    zonal_triple_integral,
)
from xspace.oracles import McConfig, sphere_mc
from xspace.special import dim_harmonics, gegenbauer, gegenbauer_all, sphere_volume

TWO_PI2 = 2 * math.pi**2


# -- polygons -----------------------------------------------------------------


def test_polygon_angular_d4_closed_form():
    for k in range(2, 7):
        for n in range(8):
            assert polygon_angular(n, k, 4) == pytest.approx(TWO_PI2**k / (n + 1) ** (k - 2), rel=1e-13)
    assert polygon_angular(1, 3, 4) == pytest.approx(TWO_PI2**3 / 2)
    with pytest.raises(ValueError):
        polygon_angular(0, 1, 4)


@pytest.mark.parametrize("n", [0, 1, 2])
def test_polygon_angular_monte_carlo(n):
    def f(w):
        out = np.ones(len(w))
        for i in range(3):
            c = np.sum(w[:, i] * w[:, (i + 1) % 3], axis=1)
            out = out * gegenbauer_all(n, 1, c)[n]
        return out

    est = sphere_mc(f, 4, McConfig(600_000, 11 + n, 8), points=3)
    exact = polygon_angular(n, 3, 4)
    assert abs(est.value - exact) <= 0.02 * exact
    assert abs(est.value - exact) <= 4 * est.tail_bound + 1e-9 * exact


def test_polygon_angular_other_dimension_by_reproducing_identity():
    # chaining the reproducing identity around a k-gon gives the closed form in any D
    for D in (6, 8):
        lam = D // 2 - 1
        for n in range(5):
            for k in (2, 3, 4):
                c = gegs_closed_form(n, n, D, 1.0) / gegenbauer(n, lam, 1.0)
                chained = c ** (k - 1) * gegenbauer(n, lam, 1.0) * sphere_volume(D)
                assert polygon_angular(n, k, D) == pytest.approx(chained, rel=1e-12)
                assert polygon_angular(n, k, D) == pytest.approx(
                    (lam * sphere_volume(D) / (n + lam)) ** k * dim_harmonics(n, D), rel=1e-12)


# -- Gaunt and couplings ------------------------------------------------------


def test_selection_rule():
    assert selection_allowed(0, 0, 0) and selection_allowed(1, 1, 2)
    assert not selection_allowed(1, 1, 1)
    assert not selection_allowed(0, 1, 3)
    assert GauntIndex((2, 2, 2)).J == 3 and GauntIndex((2, 2, 2)).allowed()


def test_gaunt_examples():
    assert gaunt_l0(0, 0, 0, 4) == pytest.approx(1.0)
    assert gaunt_l0(1, 1, 1, 4) == 0
    assert gaunt_l0(1, 1, 2, 4) == pytest.approx(12 ** -0.5)


def test_gaunt_d4_reduction_and_symmetry():
    for ns in itertools.product(range(7), repeat=3):
        g = gaunt_l0(*ns, 4)
        if selection_allowed(*ns):
            assert g == pytest.approx(math.prod(n + 1 for n in ns) ** -0.5, rel=1e-12)
        else:
            assert g == 0
        for D in (4, 6, 8):
            vals = {round(gaunt_l0(*p, D), 13) for p in itertools.permutations(ns)}
            assert len(vals) == 1


def test_gaunt_selection_matches_zonal_quadrature():
    # the zonal triple integral vanishes exactly where the selection rule fails
    for ns in itertools.product(range(6), repeat=3):
        z = zonal_triple_integral(*ns, 4)
        assert (abs(z) > 1e-10) == selection_allowed(*ns)


def test_coupling_examples():
    assert coupling_K_l0_d4(0, 0, 0, 0, 0).value == pytest.approx(KAPPA)
    assert KAPPA == pytest.approx(4 * math.pi**4)
    r = coupling_K_l0_d4(2, 1, 1, 1, 1).value / coupling_K_l0_d4(0, 0, 0, 0, 0).value
    assert r == pytest.approx(1 / 108)
    assert coupling_K_l0_d4(1, 0, 0, 1, 0).value == 0  # (1,0,0) breaks the rule
    assert coupling_K_l0_d4(2, 1, 2, 2, 2).value == 0  # odd sum in the first vertex
    c = coupling_K_l0_d4(2, 1, 3, 2, 2, kappa=1.0)
    assert c.allowed and c.value == pytest.approx(1 / 27 / math.sqrt(2 * 4 * 3 * 3))
    with pytest.raises(ValueError):
        coupling_K_l0_d4(-1, 0, 0, 0, 0)


# -- the three-edge banana ----------------------------------------------------


def test_banana3_angular_examples():
    assert banana3_angular(0, 0, 0) == pytest.approx(4 * math.pi**4)
    assert banana3_angular(1, 1, 1) == pytest.approx(0, abs=1e-12)


def test_banana3_angular_off_domain_zero():
    for ns in itertools.product(range(7), repeat=3):
        if not selection_allowed(*ns):
            assert abs(banana3_angular(*ns)) < 1e-9


@pytest.mark.parametrize("ns", [(1, 1, 2), (2, 2, 2), (1, 2, 3)])
def test_banana3_angular_monte_carlo(ns):
    def f(w):
        c = np.sum(w[:, 0] * w[:, 1], axis=1)
        table = gegenbauer_all(max(ns), 1, c)
        return table[ns[0]] * table[ns[1]] * table[ns[2]]

    est = sphere_mc(f, 4, McConfig(800_000, 5, 8), points=2)
    assert abs(est.value - banana3_angular(*ns)) <= 4 * est.tail_bound


# -- reproducing identity -----------------------------------------------------


@pytest.mark.parametrize("D", [4, 6])
def test_gegs_two_point_matches_closed_form(D):
    for n in range(6):
        for m in range(6):
            for c in (-0.7, 0.0, 0.35, 1.0):
                exact = gegs_closed_form(n, m, D, c)
                assert gegs_two_point(n, m, D, c) == pytest.approx(exact, abs=1e-10 * max(1, abs(exact)))


def test_gegs_monte_carlo():
    w1 = np.array([0.0, 1.0, 0.0, 0.0])
    w2 = np.array([0.0, 0.2, math.sqrt(0.96), 0.0])
    c = float(w1 @ w2)
    for n, m in [(1, 1), (2, 2), (3, 3), (1, 2), (0, 3)]:
        def f(w, n=n, m=m):
            x = w[:, 0]
            return gegenbauer_all(3, 1, x @ w1)[m] * gegenbauer_all(3, 1, x @ w2)[n]

        est = sphere_mc(f, 4, McConfig(400_000, 17 + n + 5 * m, 8))
        exact = gegs_closed_form(n, m, 4, c)
        assert abs(est.value - exact) <= 4 * est.tail_bound
