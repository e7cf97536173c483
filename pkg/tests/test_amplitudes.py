import itertools
import math

import numpy as np
import pytest

from xspace.amplitudes import (
    BANANA3_PREFACTOR,
    STAR_CASES,
    TWO_PI2,
    banana3_amplitude,
    banana3_brute_sums,
    banana3_domain_sums,
    banana3_integrand,
    glue_coefficient,
    glue_two_stars_l0,
    make_star,
    polygon_amplitude_integrand,
    polygon_integrand_by_expansion,
    polygon_two_path_value,
    star_integrand,
)
from xspace.angular import KAPPA, selection_allowed
from xspace.graphs import Graph, GraphError, acyclic_orientations, sector
from xspace.oracles import McConfig, sphere_mc
from xspace.polylog import eval_polylog
from xspace.special import gegenbauer_all, sphere_volume

TRIANGLE = Graph.polygon(3)
SQUARE = Graph.polygon(4)


def sector_point(o, rng):
    """Random radii inside the sector of ``o``, kept away from its walls."""
    while True:
        r = {v: float(x) for v, x in zip(o.graph.vertices, rng.uniform(0.1, 1.0, o.graph.n_vertices))}
        if sector(o).contains(r) and min(abs(a - b) for a, b in itertools.combinations(r.values(), 2)) > 0.05:
            return r


# -- polygons -----------------------------------------------------------------


@pytest.mark.parametrize("g", [TRIANGLE, SQUARE, Graph.polygon(5)])
def test_polygon_integrand_matches_expansion(g):
    rng = np.random.default_rng(1)
    k = g.n_vertices
    for o in acyclic_orientations(g)[:8]:
        r = sector_point(o, rng)
        direct = polygon_amplitude_integrand(k, o, r)
        series = polygon_integrand_by_expansion(k, o, r, 2000)
        assert series == pytest.approx(direct, rel=1e-8)


def test_polygon_integrand_against_angular_mc():
    # angular average of the propagator product at fixed radii
    o = acyclic_orientations(TRIANGLE)[0]
    verts = TRIANGLE.vertices
    r = ranked_radii(o, (0.3, 0.6, 0.9))
    assert sector(o).contains(r)
    rad = np.array([r[v] for v in verts])
    edges = [(verts.index(a), verts.index(b)) for a, b in TRIANGLE.edges]

    def f(w):
        x = w * rad[None, :, None]
        out = np.ones(len(w))
        for a, b in edges:
            out = out / np.sum((x[:, a] - x[:, b]) ** 2, axis=1)
        return out

    est = sphere_mc(f, 4, McConfig(600_000, 21, 8), points=3)
    est_val = est.value * math.prod(rad**3)
    exact = polygon_amplitude_integrand(3, o, r)
    assert est_val == pytest.approx(exact, rel=0.02)
    assert abs(est_val - exact) <= 4 * est.tail_bound * math.prod(rad**3)


def ranked_radii(o, values):
    rel = set(sector(o).relations)
    verts = o.graph.vertices
    order = sorted(verts, key=lambda v: sum((w, v) in rel for w in verts))
    return dict(zip(order, values))


def test_polygon_integrand_edges():
    o = acyclic_orientations(TRIANGLE)[0]
    r = ranked_radii(o, (0.0, 0.5, 0.8))
    assert sector(o).contains(r)
    assert polygon_amplitude_integrand(3, o, r) == 0
    bad = ranked_radii(o, (0.8, 0.5, 0.2))
    with pytest.raises(ValueError):
        polygon_amplitude_integrand(3, o, bad)
    with pytest.raises(GraphError):
        polygon_amplitude_integrand(4, o, r)


def test_two_path_examples():
    sq = polygon_two_path_value(1, 1)
    assert str(sq.exact) == "-1 + zeta(2)"
    assert sq.value(absolute=True) == pytest.approx(2 * math.pi**8 * (math.pi**2 / 6 - 1), rel=1e-12)
    five = polygon_two_path_value(2, 1)
    assert five.prefactor == pytest.approx(2 * math.pi**10)
    assert set(five.exact.to_dict()) >= {"constant"}
    with pytest.raises(ValueError):
        polygon_two_path_value(0, 2)


@pytest.mark.parametrize("k1,k2", [(a, b) for a in range(1, 5) for b in range(1, 5) if a + b <= 5])
def test_two_path_exact_vs_quadrature(k1, k2):
    res = polygon_two_path_value(k1, k2)
    assert abs(float(res.exact) - res.numeric.value) <= 1e-10
    assert res.consistent(1e-12)


def test_amplitude_prefactor_covariance():
    for res in (polygon_two_path_value(2, 2), banana3_amplitude(1e-8)):
        assert res.value(absolute=True) == pytest.approx(res.prefactor * res.value(absolute=False), rel=1e-15)
        assert res.absolute().tail_bound == pytest.approx(res.prefactor * res.numeric.tail_bound)
        assert res.to_dict()["prefactor"] == res.prefactor


# -- stars -----------------------------------------------------------------------


def test_star_exponent_table():
    expected_alpha0 = {"o0": 3, "o1": -3, "o2": -1, "o3": 1}
    for case, dirs in STAR_CASES.items():
        s = make_star(case)
        assert s.alpha0 == expected_alpha0[case]
        assert s.alpha == tuple(1 if d == "out" else 3 for d in dirs)
        assert s.epsilon == tuple(-1 if d == "out" else 1 for d in dirs)
        assert s.r_power == 9
    with pytest.raises(ValueError):
        make_star("o7")
    with pytest.raises(ValueError):
        star_integrand("o0", 1.0, (0.5, 2.0, 2.0))


def test_star_leading_term():
    for case, dirs in STAR_CASES.items():
        t = [2.0 if d == "out" else 0.5 for d in dirs]
        s = make_star(case)
        got = star_integrand(case, 0.7, t, lambda a, b, c: 1.0 if a == b == c == 0 else 0.0, N=4)
        assert got == pytest.approx(0.7**9 * math.prod(ti**a for ti, a in zip(t, s.alpha)))


@pytest.mark.parametrize("case", sorted(STAR_CASES))
def test_star_pointwise_against_propagators(case):
    # angular coefficient prod C_n(w . w_i) must rebuild the propagator product exactly
    rng = np.random.default_rng(len(case) + int(case[1]))
    dirs = STAR_CASES[case]
    r = 0.8
    t = [2.2 if d == "out" else 0.45 for d in dirs]
    w = rng.standard_normal((4, 4))
    w /= np.linalg.norm(w, axis=1, keepdims=True)
    cos = [float(w[0] @ w[i + 1]) for i in range(3)]
    tabs = [gegenbauer_all(70, 1, c) for c in cos]
    series = star_integrand(case, r, t, lambda a, b, c: tabs[0][a] * tabs[1][b] * tabs[2][c], N=70)
    x = r * w[0]
    direct = 1.0
    for i in range(3):
        ri = r * t[i]
        direct /= float(np.sum((x - ri * w[i + 1]) ** 2))
        direct *= ri**3 * r  # measure r_i^3 dr_i with dr_i = r dt_i
    direct *= r**3
    assert series == pytest.approx(direct, rel=1e-10)


@pytest.mark.parametrize("case", sorted(STAR_CASES))
def test_star_angular_average_mc(case):
    # integrating all four directions leaves only the n = 0 channel
    dirs = STAR_CASES[case]
    r = 0.6
    t = [2.5 if d == "out" else 0.35 for d in dirs]
    rad = np.array([r] + [r * ti for ti in t])

    def f(w):
        x = w * rad[None, :, None]
        out = np.ones(len(w))
        for i in range(1, 4):
            out = out / np.sum((x[:, 0] - x[:, i]) ** 2, axis=1)
        return out

    est = sphere_mc(f, 4, McConfig(300_000, 3, 8), points=4)
    scale = r**3 * math.prod((r * ti) ** 3 * r for ti in t)
    s = make_star(case)
    expect = r**9 * math.prod(ti**a for ti, a in zip(t, s.alpha)) * sphere_volume(4) ** 4
    assert est.value * scale == pytest.approx(expect, rel=0.02)


# -- gluing ------------------------------------------------------------------------

T4 = (0.3, 0.4, 3.0, 2.5)


def test_glue_zero_slot_and_warning():
    assert glue_two_stars_l0((0.0, 0.4, 3.0, 2.5), (0.2, 0.5), 6).value == 0
    empty = glue_two_stars_l0(T4, (0.2, 0.5), 0, degrees=(1, 0, 0, 0))
    assert empty.warning and "raise N" in empty.warning and empty.value == 0
    with pytest.raises(ValueError):
        glue_two_stars_l0(T4[:3], (0.2, 0.5), 4)
    with pytest.raises(ValueError):
        glue_two_stars_l0(T4, (0.5, 0.2), 4)


def test_glue_truncation_tail():
    g6 = glue_two_stars_l0(T4, (0.2, 0.5), 6)
    g8 = glue_two_stars_l0(T4, (0.2, 0.5), 8)
    q = max(T4[0], T4[1], 1 / T4[2], 1 / T4[3], 0.5)
    bound = sum((n + 1) ** -3.0 for n in range(7, 10_000)) * q**7 * abs(g6.value)
    assert abs(g8.value - g6.value) <= bound
    assert g6.warning is None and g8.terms > g6.terms


def test_glue_matches_banana_coefficients():
    # matching the outer pairs (n1 = n3, n2 = n4) leaves the banana weight
    for a, b, n in itertools.product(range(7), repeat=3):
        c = glue_coefficient(n, (a, b, a, b))
        if selection_allowed(n, a, b):
            assert c == pytest.approx(BANANA3_PREFACTOR / ((a + 1) * (b + 1) * (n + 1)) ** 3, rel=1e-13)
        else:
            assert c == 0
    assert BANANA3_PREFACTOR == pytest.approx(TWO_PI2**4 * KAPPA)


# -- 3-banana --------------------------------------------------------------------


@pytest.mark.parametrize("t", [0.3, 0.5, 0.7])
def test_banana3_integrand_two_routes(t):
    b = banana3_integrand(t, 400)
    assert b.agree()
    assert abs(b.brute.value - b.polylog.value) <= 1e-8


def test_banana3_domain_sums():
    t = 0.3
    brute = banana3_brute_sums(t, 160)
    closed = banana3_domain_sums(t)
    li6 = eval_polylog(6, t * t).value / t**2
    assert brute["D1"].value == pytest.approx(li6, abs=1e-10)
    assert brute["D2"].value == pytest.approx(li6 - 1, abs=1e-10)
    for key in ("D1", "D2", "D3", "D4", "D5", "total"):
        assert abs(brute[key].value - closed[key].value) <= brute[key].tail_bound + closed[key].tail_bound + 1e-13


def test_banana3_small_t():
    # t^9 times an O(1) integrand: the n = 0 term gives exactly 1 at t -> 0
    for t in (1e-2, 1e-3):
        b = banana3_integrand(t, 40)
        assert b.polylog.value == pytest.approx(1.0, abs=10 * t)
        assert b.brute.value == pytest.approx(b.polylog.value, abs=1e-12)


def test_banana3_rejects_bad_t():
    for t in (0.0, 1.0, -0.2, 1.5):
        with pytest.raises(ValueError):
            banana3_integrand(t)
        with pytest.raises(ValueError):
            banana3_domain_sums(t)


def test_banana3_amplitude_stability():
    eps = 1e-10
    a200 = banana3_amplitude(eps, M=200)
    a400 = banana3_amplitude(eps, M=400)
    assert abs(a200.numeric.value - a400.numeric.value) <= eps
    assert a400.notes["routes_agree"]
    assert abs(a400.notes["polylog_route"]["value"] - a400.numeric.value) <= 2 * eps
    auto = banana3_amplitude(eps)
    assert abs(auto.numeric.value - a400.numeric.value) <= eps
    assert auto.normalized and auto.value(absolute=True) == pytest.approx(BANANA3_PREFACTOR * auto.numeric.value)
