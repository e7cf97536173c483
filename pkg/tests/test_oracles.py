import math

import mpmath
import numpy as np
import pytest

from xspace.amplitudes import polygon_two_path_value
from xspace.graphs import Graph, GraphError, acyclic_orientations
from xspace.oracles import (
    McConfig,
    brute_restricted_sum,
    config_sector_mc,
    gauss_legendre_weighted,
    ordered_simplex_quad,
    sphere_mc,
)
from xspace.polylog import PolylogSpec, eval_polylog
from xspace.series import ConvergenceError
from xspace.special import gegenbauer, gegenbauer_norm, sphere_volume

# -- sphere MC -------------------------------------------------------------------


def test_sphere_mc_constant_and_odd():
    one = sphere_mc(lambda w: np.ones(len(w)), 4, McConfig(10_000, 1, 4), points=2)
    assert one.value == pytest.approx(sphere_volume(4) ** 2)
    odd = sphere_mc(lambda w: np.sum(w[:, 0] * w[:, 1], axis=1), 4, McConfig(200_000, 2, 4), points=2)
    assert abs(odd.value) <= 3 * odd.tail_bound


def test_sphere_mc_c1_squared():
    # C_1(x) = 2x, and the reproducing identity gives Vol^2 * 4 <x^2> = Vol^2
    f = lambda w: (2 * np.sum(w[:, 0] * w[:, 1], axis=1)) ** 2  # noqa: E731
    est = sphere_mc(f, 4, McConfig(300_000, 3, 4), points=2)
    assert abs(est.value - sphere_volume(4) ** 2) <= 3 * est.tail_bound


def test_sphere_mc_determinism_and_scaling():
    f = lambda w: w[:, 0, 0] ** 2 + w[:, 0, 1]  # noqa: E731
    a = sphere_mc(f, 4, McConfig(100_000, 9, 4))
    b = sphere_mc(f, 4, McConfig(100_000, 9, 4))
    assert a.value == b.value and a.tail_bound == b.tail_bound
    c = sphere_mc(f, 4, McConfig(200_000, 9, 4))
    assert c.tail_bound / a.tail_bound == pytest.approx(1 / math.sqrt(2), rel=0.2)


def test_mc_config_validation():
    with pytest.raises(ValueError):
        McConfig(0, 1, 1)
    with pytest.raises(ValueError):
        McConfig(10, 1, 0)
    assert sum(n for n, _ in McConfig(11, 0, 4).shards()) == 11


# -- Gauss-Jacobi -------------------------------------------------------------------


def test_gauss_weighted_examples():
    assert gauss_legendre_weighted(lambda x: np.ones_like(x), 0.5, 3) == pytest.approx(math.pi / 2)
    c = lambda n: lambda x: gegenbauer(n, 1, x)  # noqa: E731
    assert gauss_legendre_weighted(lambda x: c(2)(x) ** 2, 0.5, 4) == pytest.approx(gegenbauer_norm(2, 1))
    assert abs(gauss_legendre_weighted(lambda x: c(1)(x) ** 2 * c(2)(x), 0.5, 4)) > 0.1
    assert gauss_legendre_weighted(lambda x: c(1)(x) ** 3, 0.5, 4) == pytest.approx(0, abs=1e-14)
    with pytest.raises(ValueError):
        gauss_legendre_weighted(lambda x: x, 0.5, 0)


def test_gauss_weighted_against_beta_moments():
    # int x^{2j} (1-x^2)^a dx = B(j + 1/2, a + 1)
    for a in (-0.5, 0.5, 1.5):
        q = gauss_legendre_weighted(lambda x: x**6 - x**3 + 2, a, 5)
        ref = float(mpmath.beta(3.5, a + 1) + 2 * mpmath.beta(0.5, a + 1))
        assert q == pytest.approx(ref, rel=1e-12)


# -- ordered simplices --------------------------------------------------------------


def test_simplex_volume():
    for p in range(1, 5):
        v = ordered_simplex_quad(lambda t: np.ones(len(t)), p, 8)
        assert v.value == pytest.approx(1 / math.factorial(p), rel=1e-13)


@pytest.mark.parametrize("k1,k2", [(1, 1), (2, 1), (2, 2), (3, 2)])
def test_simplex_forest_matches_two_path_polygon(k1, k2):
    # t is the lowest radius; each path contributes an ordered chain above it
    s = k1 + k2
    li = np.vectorize(lambda x: eval_polylog(s, x).value)
    parents = [None] + [0 if i == 0 else i for i in range(k1 - 1)] + [0 if i == 0 else k1 - 1 + i for i in range(k2 - 1)]
    v = ordered_simplex_quad(lambda t: li(t[:, 0]), parents, 24)
    amp = polygon_two_path_value(k1, k2)
    # Li_s(t) has a (1-t)^{s-1} log(1-t) corner at t = 1, so Gauss convergence is algebraic
    assert v.value == pytest.approx(amp.numeric.value, rel=1e-5)
    assert abs(v.value - amp.numeric.value) <= v.tail_bound + 1e-9


def test_simplex_refinement_improves():
    f = lambda t: np.exp(t[:, 0] + 2 * t[:, 1])  # noqa: E731
    exact = float(mpmath.quad(lambda y: mpmath.quad(lambda x: mpmath.exp(x + 2 * y), [0, y]), [0, 1]))
    e4 = abs(ordered_simplex_quad(f, 2, 4).value - exact)
    e8 = abs(ordered_simplex_quad(f, 2, 8).value - exact)
    assert e8 < 0.5 * e4
    with pytest.raises(ValueError):
        ordered_simplex_quad(f, [None, 1], 4)


# -- restricted brute sums ------------------------------------------------------------


def test_brute_restricted_examples():
    v = brute_restricted_sum(PolylogSpec("P", (2,), (0.5,)), 100)
    assert v.value == pytest.approx(float(mpmath.polylog(2, 0.5)), abs=1e-12)
    assert brute_restricted_sum(PolylogSpec("T", (2, 2, 2), (0.5, 0.5, 0.5)), 3).value == 0


def test_brute_parity_partition_is_exact():
    base = PolylogSpec("T", (2, 3, 2), (0.6, 0.5, 0.4))
    whole = brute_restricted_sum(base, 40).value
    even = brute_restricted_sum(PolylogSpec("T", base.s, base.z, None, "even"), 40).value
    odd = brute_restricted_sum(PolylogSpec("T", base.s, base.z, None, "odd"), 40).value
    assert even + odd == pytest.approx(whole, rel=1e-15, abs=1e-300)


# -- configuration-space MC -----------------------------------------------------------

EDGE = Graph.banana(1)


def test_config_mc_single_edge_exact():
    # angular averaging leaves 1 / max(r,s)^2, so the ball integral is Vol(S^3)^2 / 12
    est = config_sector_mc(EDGE, None, 4, 1.0, McConfig(400_000, 4, 8))
    assert abs(est.value - math.pi**4 / 3) <= 3 * est.tail_bound
    for o in acyclic_orientations(EDGE):
        s = config_sector_mc(EDGE, o, 4, 1.0, McConfig(400_000, 5, 8))
        assert abs(s.value - math.pi**4 / 6) <= 3 * s.tail_bound


@pytest.mark.slow
def test_config_mc_triangle_sector_additivity():
    g = Graph.polygon(3)
    full = config_sector_mc(g, None, 4, 1.0, McConfig(400_000, 6, 8))
    parts = [config_sector_mc(g, o, 4, 1.0, McConfig(400_000, 7 + i, 8))
             for i, o in enumerate(acyclic_orientations(g))]
    tot = sum(p.value for p in parts)
    se = math.sqrt(full.tail_bound**2 + sum(p.tail_bound**2 for p in parts))
    assert abs(tot - full.value) <= 3 * se
    assert abs(tot - full.value) <= 0.05 * full.value


def test_config_mc_refusals():
    with pytest.raises(ConvergenceError, match="divergent"):
        config_sector_mc(Graph.banana(3), None, 4, 1.0, McConfig(10, 1, 1))
    with pytest.raises(GraphError):
        config_sector_mc(Graph.from_edges([("a", "b"), ("c", "d")]), None, 4, 1.0, McConfig(10, 1, 1))
    with pytest.raises(ValueError):
        config_sector_mc(EDGE, None, 5, 1.0, McConfig(10, 1, 1))
