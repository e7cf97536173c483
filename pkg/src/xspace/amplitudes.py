"""Amplitude assembly in D = 4: polygons, trivalent stars, star gluing and the 3-banana."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from scipy import integrate

from .angular import KAPPA, gaunt_l0, polygon_angular, selection_allowed
from .exact import ZetaCombination
from .graphs import Graph, GraphError, Orientation, sector
from .polylog import PolylogSpec, eval_polylog, eval_restricted_polylog, freitas_reduce
from .series import SeriesValue
from .special import zonal_coeff

TWO_PI2 = 2 * math.pi**2


@dataclass(frozen=True)
class AmplitudeResult:
    """Amplitude value with optional exact form.

    ``numeric`` is the normalised value; the absolute value is
    ``prefactor * numeric``. ``exact`` (when present) is the normalised value
    as a zeta combination.
    """

    numeric: SeriesValue
    exact: ZetaCombination | None = None
    prefactor: float = 1.0
    prefactor_text: str = "1"
    normalized: bool = True
    notes: dict = field(default_factory=dict)
    warning: str | None = None

    def value(self, absolute: bool | None = None) -> float:
        absolute = (not self.normalized) if absolute is None else absolute
        v = float(self.numeric.value)
        return v * self.prefactor if absolute else v

    def absolute(self) -> SeriesValue:
        return self.numeric.scaled(self.prefactor)

    def consistent(self, slack: float = 0.0) -> bool:
        if self.exact is None:
            return True
        ex = self.exact.evaluate()
        return abs(ex.value - self.numeric.value) <= ex.tail_bound + self.numeric.tail_bound + slack

    def to_dict(self) -> dict:
        out = {
            "normalized_value": self.numeric.to_dict(),
            "prefactor": self.prefactor,
            "prefactor_text": self.prefactor_text,
            "absolute_value": self.absolute().to_dict(),
            "reported": "normalized" if self.normalized else "absolute",
        }
        if self.exact is not None:
            out["exact"] = self.exact.to_dict()
        if self.notes:
            out["notes"] = self.notes
        if self.warning:
            out["warning"] = self.warning
        return out


# ---------------------------------------------------------------------------
# polygons


def _check_polygon(k: int, o: Orientation):
    g = o.graph
    if g.n_vertices != k or g.n_edges != k or any(g.valence(v) != 2 for v in g.vertices) or not g.is_connected():
        raise GraphError(f"orientation is not on a {k}-gon")
    if not o.is_acyclic():
        raise GraphError("not acyclic")


def polygon_ratio(o: Orientation, r) -> float:
    """``prod_sources r^2 / prod_sinks r^2``, the argument of the polygon polylogarithm."""
    num = math.prod(float(r[v]) ** 2 for v in o.sources())
    den = math.prod(float(r[v]) ** 2 for v in o.sinks())
    return num / den


def polygon_amplitude_integrand(k: int, o: Orientation, r) -> float:
    """Radial integrand of the ``k``-gon in the sector of ``o`` (``D = 4``).

    ``(2 pi^2)^k Li_{k-2}(u) prod_v r_v`` with ``u`` the ratio of squared source
    radii to squared sink radii (so ``0 <= u <= 1`` in the sector). Summing
    the propagator expansions, every edge carries the same degree ``n``, and
    the pass-through vertices of each oriented path cancel out of ``u``.
    """
    _check_polygon(k, o)
    sec = sector(o)
    if not sec.contains(r):
        raise ValueError("radial point lies outside the sector")
    u = polygon_ratio(o, r)
    if u >= 1:
        if k - 2 >= 2:
            li = eval_polylog(k - 2, 1.0).value
        else:
            raise ValueError("integrand is singular where sources and sinks share a radius")
    else:
        li = eval_polylog(k - 2, u).value
    return TWO_PI2**k * li * math.prod(float(r[v]) for v in o.graph.vertices)


def polygon_integrand_by_expansion(k: int, o: Orientation, r, N: int) -> float:
    """Same integrand from truncated propagator expansions and the polygon angular integral."""
    _check_polygon(k, o)
    g = o.graph
    total = 0.0
    base = 1.0
    for s_, t_ in o.directions:
        base *= float(r[t_]) ** -2
    for v in g.vertices:
        base *= float(r[v]) ** 3
    u = polygon_ratio(o, r)
    terms = [polygon_angular(n, k, 4) * u**n for n in range(N + 1)]
    total = math.fsum(terms)
    return base * total


def polygon_two_path_value(k1: int, k2: int, normalized: bool = False) -> AmplitudeResult:
    """Polygon with two oriented paths of ``k1`` and ``k2`` internal vertices.

    After the ordered radial variables along each path are integrated out,
    ``2 pi^{2k} / ((k1-1)! (k2-1)!) int_0^1 Li_{k-2}(t) (1-t)^{k1+k2-2} dt``
    with ``k = k1 + k2 + 2``. Expanding ``(1-t)^p`` binomially reduces the
    integral to moments ``int t^j Li_{k-2}(t)``, each an exact zeta
    combination. The divergent integral over the largest radius has been
    factored out; its power is recorded in ``notes``.
    """
    if k1 < 1 or k2 < 1:
        raise ValueError("each path needs at least one internal vertex")
    k = k1 + k2 + 2
    p = k1 + k2 - 2
    exact = ZetaCombination()
    for j in range(p + 1):
        exact = exact + freitas_reduce(j, k - 2) * ((-1) ** j * math.comb(p, j))
    denom = math.factorial(k1 - 1) * math.factorial(k2 - 1)
    exact = exact / denom
    s = k - 2

    def integrand(t):
        return float(eval_polylog(s, t).value) * (1 - t) ** p if t < 1 else float(eval_polylog(s, 1.0).value) * 0.0**p

    val, err = integrate.quad(integrand, 0.0, 1.0, epsabs=1e-14, epsrel=1e-13, limit=200)
    numeric = SeriesValue(val / denom, err / denom + 1e-15, 0)
    return AmplitudeResult(
        numeric=numeric,
        exact=exact,
        prefactor=2 * math.pi ** (2 * k),
        prefactor_text=f"2*pi^{2 * k}",
        normalized=normalized,
        notes={"k": k, "dropped_radial_power": f"r_w^{2 * k - 1}"},
    )


# ---------------------------------------------------------------------------
# trivalent stars

STAR_CASES = {
    "o0": ("out", "out", "out"),
    "o1": ("in", "in", "in"),
    "o2": ("out", "in", "in"),
    "o3": ("out", "out", "in"),
}


def half_edge_exponents(direction: str) -> tuple[int, int]:
    """``(alpha, epsilon)`` of a half-edge seen from the centre of the star.

    An outgoing edge (centre is the source, ``r <= r_i``) contributes
    ``r^2 t_i^{1 - n}``; an incoming one (``r_i <= r``) contributes
    ``r^2 t_i^{3 + n}``, where ``t_i = r_i / r`` and the measure ``r_i^3 dr_i``
    is included.
    """
    if direction == "out":
        return 1, -1
    if direction == "in":
        return 3, 1
    raise ValueError(f"half-edge direction must be 'out' or 'in', not {direction!r}")


def central_exponent(directions: Sequence[str]) -> int:
    """Power of the central radius before rescaling: ``3 - 2 * (#incoming)``."""
    return 3 - 2 * sum(d == "in" for d in directions)


@dataclass(frozen=True)
class StarIntegrand:
    directions: tuple
    alpha: tuple
    epsilon: tuple
    alpha0: int
    N: int

    @property
    def r_power(self) -> int:
        return 9

    def t_ranges(self) -> list[tuple[float, float]]:
        return [(1.0, math.inf) if d == "out" else (0.0, 1.0) for d in self.directions]


def make_star(case, N: int = 0) -> StarIntegrand:
    if isinstance(case, str):
        if case not in STAR_CASES:
            raise ValueError(f"unknown orientation case {case!r}")
        dirs = STAR_CASES[case]
    else:
        dirs = tuple(case)
    if len(dirs) != 3:
        raise ValueError("a trivalent star has three half-edges")
    ae = [half_edge_exponents(d) for d in dirs]
    return StarIntegrand(tuple(dirs), tuple(a for a, _ in ae), tuple(e for _, e in ae), central_exponent(dirs), N)


def ell0_star_coefficient(n1: int, n2: int, n3: int) -> float:
    """``l = 0`` angular weight of a star: ``prod c_{4,n_i}`` times the ``l = 0`` Gaunt value."""
    return math.prod(zonal_coeff(4, n)[0] for n in (n1, n2, n3)) * gaunt_l0(n1, n2, n3, 4)


def star_integrand(case, r: float, t: Sequence[float], angular: Callable | None = None, N: int = 10) -> float:
    """``r^9 prod t_i^{alpha_i} sum_{n_i <= N} A_n prod t_i^{eps_i n_i}``.

    ``angular(n1, n2, n3)`` supplies the angular coefficients (default: the
    ``l = 0`` channel). Each ``t_i`` must lie on its sector side: ``t_i >= 1``
    for outgoing, ``t_i <= 1`` for incoming half-edges.
    """
    star = make_star(case, N)
    if len(t) != 3:
        raise ValueError("three t values are required")
    for ti, (lo, hi) in zip(t, star.t_ranges()):
        if not lo <= ti <= hi:
            raise ValueError("t outside the sector of this orientation case")
    angular = angular or ell0_star_coefficient
    pw = [np.array([ti ** (e * n) if ti > 0 else float(e * n == 0) for n in range(N + 1)])
          for ti, e in zip(t, star.epsilon)]
    total = 0.0
    parts = []
    for n1 in range(N + 1):
        for n2 in range(N + 1):
            for n3 in range(N + 1):
                a = angular(n1, n2, n3)
                if a:
                    parts.append(a * pw[0][n1] * pw[1][n2] * pw[2][n3])
    total = math.fsum(parts)
    lead = r**9 * math.prod(ti**a for ti, a in zip(t, star.alpha))
    return lead * total


# ---------------------------------------------------------------------------
# gluing two stars


@dataclass(frozen=True)
class GlueResult:
    value: float
    tail_bound: float
    terms: int
    warning: str | None = None


def _power_integral(p: float, lo: float, hi: float) -> float:
    if p == -1:
        return math.log(hi / lo)
    return (hi ** (p + 1) - lo ** (p + 1)) / (p + 1)


def glue_coefficient(n: int, outer: Sequence[int], kappa: float = KAPPA) -> float:
    """Angular weight ``prod c_{4,n_i} (n_i+1)^{-1/2} * kappa (n+1)^{-3}`` on the double selection domain."""
    n1, n2, n3, n4 = outer
    if not (selection_allowed(n, n1, n2) and selection_allowed(n, n3, n4)):
        return 0.0
    c = math.prod(zonal_coeff(4, m)[0] / math.sqrt(m + 1) for m in outer)
    return c * kappa / (n + 1) ** 3


def glue_two_stars_l0(
    t: Sequence[float],
    sector_bounds: tuple[float, float],
    N: int,
    directions: Sequence[str] = ("in", "in", "out", "out"),
    matched: str = "in",
    degrees: Sequence[int] | None = None,
    kappa: float = KAPPA,
) -> GlueResult:
    """``l = 0`` integrand of two trivalent stars joined along one edge (``D = 4``).

    ``directions`` gives the four unmatched half-edges (two per star) seen
    from their own centre; ``matched`` is the joined edge seen from the
    first star. Sums all selection-allowed ``(n; n_1..n_4)`` with entries
    ``<= N`` (or with the outer degrees fixed to ``degrees``) of

    ``prod_i c_{4,n_i} (n_i+1)^{-1/2} t_i^{alpha_i + eps_i n_i}
    * kappa (n+1)^{-3} int_{lo}^{hi} t^{4 + eps n} dt``.
    """
    if len(t) != 4 or len(directions) != 4:
        raise ValueError("four outer half-edges are required")
    lo, hi = sector_bounds
    if not 0 < lo <= hi:
        raise ValueError("sector bounds must satisfy 0 < lo <= hi")
    _, eps_m = half_edge_exponents(matched)
    ae = [half_edge_exponents(d) for d in directions]
    outer_range = [range(N + 1)] * 4 if degrees is None else [[d] for d in degrees]
    parts = []
    count = 0
    for outer in np.ndindex(*[len(r) for r in outer_range]):
        ns = [outer_range[i][outer[i]] for i in range(4)]
        fac = 1.0
        for ti, (a, e), m in zip(t, ae, ns):
            p = a + e * m
            fac *= ti**p if ti > 0 else float(p == 0)
        if fac == 0:
            continue
        for n in range(N + 1):
            c = glue_coefficient(n, ns, kappa)
            if c:
                count += 1
                parts.append(c * fac * _power_integral(4 + eps_m * n, lo, hi))
    warning = None if count else "selection-empty truncation: raise N"
    value = math.fsum(parts)
    return GlueResult(value, 4e-16 * math.fsum(abs(x) for x in parts), count, warning)


# ---------------------------------------------------------------------------
# 3-banana


def _domain_slice(a: int, nmax: int, total: int | None) -> tuple[np.ndarray, np.ndarray]:
    g = np.arange(nmax + 1)
    b, c = np.meshgrid(g, g, indexing="ij")
    m = ((a + b + c) % 2 == 0) & (a <= b + c) & (b <= a + c) & (c <= a + b)
    if total is not None:
        m &= a + b + c <= total
    return b[m], c[m]


def banana3_domain(nmax: int, total: int | None = None) -> np.ndarray:
    """Selection-allowed ``(n1, n2, n3)`` with entries ``<= nmax`` (and sum ``<= total`` if given)."""
    rows = []
    for a in range(nmax + 1):
        b, c = _domain_slice(a, nmax, total)
        rows.append(np.stack([np.full_like(b, a), b, c], axis=1))
    return np.concatenate(rows)


_DOMAIN_TESTS = {
    "D1": lambda a, b, c: (a == 0) & (c == b),
    "D2": lambda a, b, c: (b == 0) & (a > 0) & (c == a),
    "D3": lambda a, b, c: (a > 0) & (b == a) & (c % 2 == 0) & (c <= 2 * a),
    "D4": lambda a, b, c: (b > 0) & (b < a),
    "D5": lambda a, b, c: (a > 0) & (a < b),
}


def _banana3_tail(t: float, N: int) -> float:
    # terms of total degree d number at most (d+1)(d+2)/2 and are below t^d
    m = N + 1
    q = t * ((m + 2) / (m + 1)) ** 2
    return t**m * (m + 1) * (m + 2) / 2 / (1 - q) if q < 1 else math.inf


@dataclass(frozen=True)
class Banana3Integrand:
    brute: SeriesValue
    polylog: SeriesValue
    printed: SeriesValue

    def agree(self, slack: float = 0.0) -> bool:
        return abs(self.brute.value - self.polylog.value) <= self.brute.tail_bound + self.polylog.tail_bound + slack


def _mp_piece(t: float, s: tuple, parity: tuple, eps: float) -> SeriesValue:
    return eval_restricted_polylog(PolylogSpec("MP", s, (t, t), parity), eps)


def _t_piece(t: float, total: str, eps: float) -> SeriesValue:
    return eval_restricted_polylog(PolylogSpec("T", (3, 3, 3), (t, t, t), None, total), eps)


def banana3_brute_sums(t: float, N: int) -> dict[str, SeriesValue]:
    """Brute sums of ``t^{n1+n2+n3} / prod (n_i+1)^3`` over the five subdomains and their union.

    Triples with ``n1+n2+n3 <= N`` are included.
    """
    if not 0 < t < 1:
        raise ValueError("t must lie in (0, 1)")
    tail = _banana3_tail(t, N)
    names = list(_DOMAIN_TESTS)
    parts = {name: [] for name in names}
    counts = dict.fromkeys(names, 0)
    # one slice per n1 keeps memory at O(N^2)
    for a in range(N + 1):
        b, c = _domain_slice(a, N - a, N)
        if not len(b):
            continue
        w = t ** (a + b + c).astype(float) / ((a + 1.0) * (b + 1.0) * (c + 1.0)) ** 3
        covered = np.zeros(len(b), dtype=bool)
        for name in names:
            m = _DOMAIN_TESTS[name](a, b, c)
            if np.any(covered & m):
                raise AssertionError("subdomains overlap")
            covered |= m
            parts[name].extend(w[m].tolist())
            counts[name] += int(m.sum())
        if not covered.all():
            raise AssertionError("subdomains do not cover the selection domain")
    out = {}
    for name in names:
        out[name] = SeriesValue(math.fsum(parts[name]), tail + 4e-16 * math.fsum(parts[name]), counts[name])
    every = [x for name in names for x in parts[name]]
    out["total"] = SeriesValue(math.fsum(every), tail + 4e-16 * math.fsum(every), len(every))
    return out


def banana3_domain_sums(t: float, eps: float = 1e-14) -> dict[str, SeriesValue]:
    """Closed forms of the five subdomain sums in terms of polylogarithms.

    With ``m_i = n_i + 1``:

    * ``D1 = t^{-2} Li_6(t^2)``, ``D2 = D1 - 1``;
    * ``D3 = -1 + 2^6 t^{-3} Li^{MP; odd, even}_{3,6}(t, t)``;
    * ``D4 = D5 = t^{-3} Li^{T; odd total}_{3,3,3}(t,t,t) + 1 - t^{-2} Li_6(t^2)``.
    """
    if not 0 < t < 1:
        raise ValueError("t must lie in (0, 1)")
    li6 = eval_polylog(6, t * t, eps).scaled(t**-2)
    one = SeriesValue(1.0, 0.0, 0)
    mp = _mp_piece(t, (3, 6), ("odd", "even"), eps).scaled(64 * t**-3)
    tt = _t_piece(t, "odd", eps).scaled(t**-3)
    d45 = tt + one - li6
    return {
        "D1": li6,
        "D2": li6 - one,
        "D3": mp - one,
        "D4": d45,
        "D5": d45,
        "total": (mp + tt + tt),
    }


def banana3_printed_form(t: float, eps: float = 1e-14) -> SeriesValue:
    """``t^{-3}(2^6 Li^{MP; odd, even}_{6,3}(t,t) + 2 Li^{T; even}_{3,3,3}(t,t,t))`` read literally."""
    mp = _mp_piece(t, (6, 3), ("odd", "even"), eps)
    tt = _t_piece(t, "even", eps)
    return (mp.scaled(64) + tt.scaled(2)).scaled(t**-3)


def banana3_integrand(t: float, N: int = 400, eps: float = 1e-14) -> Banana3Integrand:
    """Two evaluations of ``sum_D t^{n1+n2+n3} / prod (n_i+1)^3``.

    ``brute`` sums the selection domain directly up to total degree ``N``;
    ``polylog`` is ``t^{-3}(2^6 Li^{MP; odd,even}_{3,6}(t,t) + 2 Li^{T; odd}_{3,3,3}(t,t,t))``.
    ``printed`` is the same expression with exponents ``(6,3)`` and an even
    total parity, kept for comparison.
    """
    if not 0 < t < 1:
        raise ValueError("t must lie in (0, 1)")
    brute = banana3_brute_sums(t, N)["total"]
    poly = banana3_domain_sums(t, eps)["total"]
    return Banana3Integrand(brute, poly, banana3_printed_form(t, eps))


BANANA3_PREFACTOR = TWO_PI2**4 * KAPPA


def _banana3_box_sum(M: int, weight_shift: int) -> tuple[float, float]:
    """``sum_D 1/((n1+n2+n3+shift) prod (n_i+1)^3)`` over triples with entries ``<= M``.

    Returns the sum and a bound on the omitted triples.
    """
    n = np.arange(M + 1, dtype=float)
    inv3 = (n + 1) ** -3
    # table[s, c] = sum over c' <= c with c' == c (mod 2) of inv3[c'] / (s + c' + shift)
    S = np.arange(2 * M + 1, dtype=float)[:, None]
    tab = inv3[None, :] / (S + n[None, :] + weight_shift)
    cum = np.zeros_like(tab)
    cum[:, 0] = tab[:, 0]
    if M >= 1:
        cum[:, 1] = tab[:, 1]
    for c in range(2, M + 1):
        cum[:, c] = cum[:, c - 2] + tab[:, c]
    parts = []
    for a in range(M + 1):
        b = np.arange(M + 1)
        s = a + b
        lo = np.abs(a - b)
        hi = np.minimum(s, M)
        hi = hi - ((hi - lo) % 2)  # same parity as lo
        ok = hi >= lo
        b, s, lo, hi = b[ok], s[ok], lo[ok], hi[ok]
        val = cum[s, hi] - np.where(lo >= 2, cum[s, np.maximum(lo - 2, 0)], 0.0)
        parts.append(inv3[a] * float(np.dot(inv3[b], val)))
    total = math.fsum(parts)
    # omitted triples have max entry > M, hence the other two >= (M+1)/2 in sum
    z3 = 1.2020569031595942
    tail = 3 * (M + 1) ** -2 / 2 * 2 * z3 * (1 / ((M + 1) / 2 + 1) ** 2) / (M + weight_shift)
    return total, tail


def banana3_amplitude(eps: float = 1e-10, M: int | None = None) -> AmplitudeResult:
    """``int_0^1 t^{12} sum_D t^{n1+n2+n3} / prod (n_i+1)^3 dt``, normalised.

    The ``t``-integral is taken term by term, giving
    ``sum_D 1/((n1+n2+n3+13) prod (n_i+1)^3)``. A second, independent
    evaluation integrates the polylogarithm form
    ``t^9 (2^6 Li^{MP}_{3,6} + 2 Li^{T}_{3,3,3})`` term by term over the
    ``(m1, m2)`` and ``(m1, m2, m3)`` series; both are reported in ``notes``.
    """
    if M is None:
        M = 64
        while _banana3_box_sum_tail(M) > eps / 2 and M < 4096:
            M *= 2
    val, tail = _banana3_box_sum(M, 13)
    pv, ptail = _banana3_polylog_route(M)
    numeric = SeriesValue(val, tail + 1e-15, M)
    return AmplitudeResult(
        numeric=numeric,
        prefactor=BANANA3_PREFACTOR,
        prefactor_text="(2 pi^2)^4 * kappa",
        normalized=True,
        notes={
            "box_size": M,
            "polylog_route": {"value": pv, "tail_bound": ptail},
            "routes_agree": abs(pv - val) <= tail + ptail + 1e-14,
        },
    )


def _banana3_box_sum_tail(M: int) -> float:
    z3 = 1.2020569031595942
    return 3 * (M + 1) ** -2 / 2 * 2 * z3 * (1 / ((M + 1) / 2 + 1) ** 2) / (M + 13)


def _banana3_polylog_route(M: int) -> tuple[float, float]:
    """``int_0^1 t^9 (2^6 Li^{MP;odd,even}_{3,6}(t,t) + 2 Li^{T;odd}_{3,3,3}(t,t,t)) dt`` term by term.

    Indices ``m_i <= M + 1``; the bound covers the omitted region.
    """
    K = M + 1
    m = np.arange(1, 2 * K + 2, dtype=float)
    inv3 = m**-3
    # MP part: m1 < m2, m1 odd, m2 even, weight 1/(m1^3 m2^6 (m1+m2+10))
    parts = []
    for m1 in range(1, K + 1, 2):
        m2 = np.arange(m1 + 1, K + 1)
        m2 = m2[m2 % 2 == 0].astype(float)
        parts.append(float(np.sum(1.0 / (m1**3 * m2**6 * (m1 + m2 + 10)))))
    mp = 64 * math.fsum(parts)
    # T part: m1 < m2, m2 - m1 < m3 < m2 + m1, odd total, weight 1/(prod m^3 (sum + 10))
    tparts = []
    for m2 in range(2, K + 1):
        m1 = np.arange(1, m2)
        row = 0.0
        for a in m1:
            m3 = np.arange(m2 - a + 1, m2 + a)
            m3 = m3[(a + m2 + m3) % 2 == 1].astype(float)
            row += float(np.sum(1.0 / (m3**3 * (a + m2 + m3 + 10)))) / a**3
        tparts.append(row / m2**3)
    tt = 2 * math.fsum(tparts)
    z3 = 1.2020569031595942
    # omitted: m2 > K; MP tail <= 64 z3 sum_{m2>K} m2^-6 / 12, T tail <= 2 z3 * 2 sum_{m2>K} m2^-3 ...
    mp_tail = 64 * z3 * (K ** -5 / 5) / 12
    t_tail = 2 * z3 * (2 / K**2) * 2 / (K + 11)
    return mp + tt, mp_tail + t_tail
