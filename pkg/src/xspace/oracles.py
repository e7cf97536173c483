"""Brute-force reference engines used to cross-check the closed forms.

Everything here is deliberately direct: Monte Carlo on spheres and
configuration spaces, fixed-rule Gauss quadrature, tensor quadrature on
ordered simplices and shell-by-shell summation of restricted series.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import special as sps

from .graphs import Graph, GraphError, InducedSubgraph, Orientation, induced_subgraphs, is_biconnected, sector
from .series import ConvergenceError, SeriesValue
from .special import sphere_volume


@dataclass(frozen=True)
class McConfig:
    """Monte Carlo budget; results are a pure function of these three numbers."""

    sample_count: int = 1_000_000
    seed: int = 42
    shard_count: int = 8

    def __post_init__(self):
        if self.sample_count <= 0:
            raise ValueError("sample_count must be positive")
        if self.shard_count <= 0:
            raise ValueError("shard_count must be positive")

    def shards(self) -> list[tuple[int, np.random.Generator]]:
        """``(samples, generator)`` per shard, from independent spawned seed streams."""
        base, extra = divmod(self.sample_count, self.shard_count)
        children = np.random.SeedSequence(self.seed).spawn(self.shard_count)
        return [(base + (i < extra), np.random.default_rng(c)) for i, c in enumerate(children)]


def _combine(sums: list[float], sq_sums: list[float], n: int) -> tuple[float, float]:
    mean = math.fsum(sums) / n
    var = max(math.fsum(sq_sums) / n - mean * mean, 0.0)
    return mean, math.sqrt(var / max(n - 1, 1))


def uniform_sphere(rng: np.random.Generator, shape: tuple, D: int) -> np.ndarray:
    g = rng.standard_normal(shape + (D,))
    return g / np.linalg.norm(g, axis=-1, keepdims=True)


def sphere_mc(f: Callable[[np.ndarray], np.ndarray], D: int, cfg: McConfig, points: int = 1,
              chunk: int = 200_000) -> SeriesValue:
    """Estimate ``int_{(S^{D-1})^points} f`` with the unnormalised surface measure.

    ``f`` receives an array of shape ``(batch, points, D)`` of unit vectors and
    returns ``(batch,)``. ``tail_bound`` holds the standard error.
    """
    vol = sphere_volume(D) ** points
    sums, sqs = [], []
    for n, rng in cfg.shards():
        done = 0
        while done < n:
            b = min(chunk, n - done)
            vals = np.asarray(f(uniform_sphere(rng, (b, points), D)), dtype=float)
            sums.append(float(np.sum(vals)))
            sqs.append(float(np.sum(vals * vals)))
            done += b
    mean, se = _combine(sums, sqs, cfg.sample_count)
    return SeriesValue(vol * mean, vol * se, cfg.sample_count)


def gauss_legendre_weighted(f: Callable, weight_exponent: float, node_count: int) -> float:
    """``int_{-1}^{1} f(x) (1 - x^2)^a dx`` by Gauss-Jacobi quadrature.

    Exact (up to rounding) for polynomial ``f`` of degree ``<= 2 node_count - 1``.
    """
    if node_count < 1:
        raise ValueError("node_count must be positive")
    x, w = sps.roots_jacobi(node_count, weight_exponent, weight_exponent)
    return float(np.dot(w, f(x)))


# ---------------------------------------------------------------------------
# ordered simplices


def _parents(dims) -> list:
    if isinstance(dims, int):
        return [None] + list(range(dims - 1))
    parents = list(dims)
    for i, p in enumerate(parents):
        if p is not None and not 0 <= p < i:
            raise ValueError("each parent must precede its child")
    return parents


def _simplex_rule(f: Callable, parents: list, nodes: int) -> float:
    p = len(parents)
    x, w = np.polynomial.legendre.leggauss(nodes)
    u = 0.5 * (x + 1)
    w = 0.5 * w
    grids = np.meshgrid(*([u] * p), indexing="ij")
    wgrid = np.ones_like(grids[0])
    for i in range(p):
        wgrid = wgrid * w[(slice(None),) * 0 + tuple(slice(None) if j == i else None for j in range(p))]
    t = np.empty(grids[0].shape + (p,))
    jac = np.ones_like(grids[0])
    for i, par in enumerate(parents):
        lo = 0.0 if par is None else t[..., par]
        t[..., i] = lo + (1.0 - lo) * grids[i]
        jac = jac * (1.0 - lo)
    vals = np.asarray(f(t.reshape(-1, p)), dtype=float).reshape(jac.shape)
    return float(np.sum(vals * jac * wgrid))


def ordered_simplex_quad(f: Callable[[np.ndarray], np.ndarray], dims, nodes: int = 24) -> SeriesValue:
    """Integrate ``f`` over a region cut out by a forest of order relations in ``[0,1]^p``.

    ``dims`` is either ``p`` (the chain ``0 <= t_0 <= ... <= t_{p-1} <= 1``) or a
    list of parents: ``parents[i] = j`` imposes ``t_j <= t_i <= 1`` and
    ``None`` imposes ``0 <= t_i <= 1``. Each variable is mapped to
    ``t_i = t_j + (1 - t_j) u_i`` and a tensor Gauss-Legendre rule is applied
    in ``u``. The error estimate compares ``nodes`` with ``nodes // 2``.
    """
    parents = _parents(dims)
    if not parents:
        return SeriesValue(float(f(np.zeros((1, 0)))[0]), 0.0, 1)
    fine = _simplex_rule(f, parents, nodes)
    coarse = _simplex_rule(f, parents, max(nodes // 2, 1))
    return SeriesValue(fine, abs(fine - coarse), nodes ** len(parents))


# ---------------------------------------------------------------------------
# restricted sums by total-degree shells


def _compositions(d: int, k: int) -> np.ndarray:
    """All ``(n_1..n_k)`` with ``n_i >= 1`` and sum ``d``, shape ``(count, k)``."""
    if k == 1:
        return np.array([[d]]) if d >= 1 else np.zeros((0, 1), dtype=int)
    if k == 2:
        n1 = np.arange(1, d)
        return np.stack([n1, d - n1], axis=1)
    if k == 3:
        n1, n2 = np.meshgrid(np.arange(1, d), np.arange(1, d), indexing="ij")
        n3 = d - n1 - n2
        m = n3 >= 1
        return np.stack([n1[m], n2[m], n3[m]], axis=1)
    rows = [c for c in itertools.product(range(1, d), repeat=k - 1) if sum(c) < d]
    return np.array([list(c) + [d - sum(c)] for c in rows], dtype=int).reshape(-1, k)


def brute_restricted_sum(spec, Nmax: int) -> SeriesValue:
    """Sum ``spec`` over all index tuples of total degree ``<= Nmax``.

    Shells are accumulated in increasing degree with exactly rounded
    summation. The tail bound counts at most ``d^{k-1}`` tuples per shell and
    is finite only when the combined modulus of the arguments is below 1.
    """
    if Nmax < 1:
        raise ValueError("Nmax must be at least 1")
    k = spec.depth
    z = [complex(x) for x in spec.z]
    use_complex = any(isinstance(x, complex) for x in spec.z) or (
        spec.z_agg is not None and isinstance(spec.z_agg, complex)
    )
    shells = []
    abs_total = 0.0
    for d in range(1, Nmax + 1):
        n = _compositions(d, k)
        if n.size == 0:
            continue
        keep = np.ones(len(n), dtype=bool)
        if spec.domain in ("MP", "AV"):
            keep &= np.all(np.diff(n, axis=1) > 0, axis=1)
        elif spec.domain == "T":
            n1, n2, n3 = n[:, 0], n[:, 1], n[:, 2]
            keep &= (n2 > n1) & (n3 > n2 - n1) & (n3 < n2 + n1)
        for i, par in enumerate(spec.parity):
            if par == "even":
                keep &= n[:, i] % 2 == 0
            elif par == "odd":
                keep &= n[:, i] % 2 == 1
        if spec.total_parity == "even" and d % 2:
            continue
        if spec.total_parity == "odd" and d % 2 == 0:
            continue
        n = n[keep]
        if not len(n):
            continue
        term = np.ones(len(n), dtype=complex)
        for i in range(k):
            term = term * np.power(z[i], n[:, i]) * np.power(n[:, i].astype(float), -float(spec.s[i]))
        if spec.s_agg is not None:
            term = term * complex(spec.z_agg) ** d * float(d) ** (-spec.s_agg)
        abs_total += float(np.sum(np.abs(term)))
        if use_complex:
            shells.append(complex(math.fsum(term.real), math.fsum(term.imag)))
        else:
            shells.append(math.fsum(term.real))
    if use_complex:
        value = complex(math.fsum(v.real for v in shells), math.fsum(v.imag for v in shells))
    else:
        value = math.fsum(shells)
    rho = max(abs(x) for x in z) * (abs(spec.z_agg) if spec.z_agg is not None else 1.0)
    if rho < 1:
        # |term| <= rho^d d^{sum of negative exponents}; at most d^{k-1} tuples
        grow = (k - 1) + sum(max(0, -s) for s in spec.s) - (spec.s_agg if spec.s_agg and spec.s_agg > 0 else 0)
        m = Nmax + 1
        q = rho * (1 + 1 / m) ** max(grow, 0)
        tail = rho**m * m**grow / (1 - q) if q < 1 else math.inf
    else:
        tail = math.inf
    return SeriesValue(value, tail + 4e-16 * abs_total, Nmax)


# ---------------------------------------------------------------------------
# configuration-space Monte Carlo


def spanning_trees(g: Graph) -> list[list[tuple[int, int]]]:
    """Spanning trees of the underlying simple graph, as parent-child index pairs in BFS order from vertex 0."""
    n = g.n_vertices
    simple = [(g.index(a), g.index(b)) for a, b in g.simple_edges()]
    trees = []
    for combo in itertools.combinations(simple, n - 1):
        adj: dict = {i: [] for i in range(n)}
        for a, b in combo:
            adj[a].append(b)
            adj[b].append(a)
        order, seen, queue = [], {0}, [0]
        while queue:
            v = queue.pop(0)
            for w in sorted(adj[v]):
                if w not in seen:
                    seen.add(w)
                    order.append((v, w))
                    queue.append(w)
        if len(seen) == n:
            trees.append(order)
    return trees


def divergence_order(g: Graph, D: int) -> tuple[int, InducedSubgraph | None]:
    """Worst real power-counting degree ``(D-2)|E| - D(|V|-1)`` over biconnected induced subgraphs.

    A value ``>= 0`` means the propagator product is not locally integrable
    near the corresponding diagonal.
    """
    worst, arg = -math.inf, None
    for s in induced_subgraphs(g):
        if s.n_edges and is_biconnected(s):
            w = (D - 2) * s.n_edges - D * (s.n_vertices - 1)
            if w > worst:
                worst, arg = w, s
    return (int(worst) if arg is not None else -D), arg


def config_sector_mc(g: Graph, o: Orientation | None, D: int = 4, radial_cutoff: float = 1.0,
                     cfg: McConfig = McConfig(), chunk: int = 250_000) -> SeriesValue:
    """Monte Carlo for ``int prod_e |x_s(e) - x_t(e)|^{-(D-2)} prod_v d^D x_v`` over ``|x_v| <= R``.

    With ``o`` given the domain is restricted to the radial sector of ``o``
    (``r_v <= r_w`` whenever ``w`` lies above ``v``); ``o = None`` integrates
    the whole ball product.

    Sampling is a mixture over spanning trees: the root is uniform in the
    ball, each child sits at its parent plus a displacement of density
    proportional to ``|d|^{-(D-1)}`` on ``|d| <= 2R``. This absorbs the
    propagator singularities that make plain uniform sampling useless.
    """
    if D % 2 or D < 4:
        raise ValueError("D must be even and at least 4")
    if g.n_vertices == 0:
        raise GraphError("empty graph")
    if not g.is_connected():
        raise GraphError("graph must be connected")
    worst, where = divergence_order(g, D)
    if worst >= 0:
        from .wonderful import singularity_order

        raise ConvergenceError(
            f"divergent configuration: power-counting degree {worst} >= 0 on "
            f"{where!r} (singularity order {singularity_order(where, D)})"
        )
    if o is not None and o.graph != g:
        raise GraphError("orientation belongs to a different graph")
    relations = [] if o is None else [(g.index(v), g.index(w)) for v, w in sector(o).relations]
    lam = D // 2 - 1
    R = float(radial_cutoff)
    vol_s = sphere_volume(D)
    vol_b = vol_s * R**D / D
    n = g.n_vertices
    edges = [(g.index(a), g.index(b)) for a, b in g.edges]
    trees = spanning_trees(g)

    def kern(d):
        return 1.0 / (vol_s * 2 * R * np.linalg.norm(d, axis=-1) ** (D - 1))

    sums, sqs = [], []
    for count, rng in cfg.shards():
        done = 0
        while done < count:
            b = min(chunk, count - done)
            which = rng.integers(len(trees), size=b)
            X = np.zeros((n, b, D))
            X[0] = uniform_sphere(rng, (b,), D) * (R * rng.random(b) ** (1.0 / D))[:, None]
            for ti, tree in enumerate(trees):
                m = which == ti
                k = int(m.sum())
                for par, child in tree:
                    X[child, m] = X[par, m] + uniform_sphere(rng, (k,), D) * (2 * R * rng.random(k))[:, None]
            r = np.linalg.norm(X, axis=2)
            inside = np.all(r <= R, axis=0)
            for v, w in relations:
                inside &= r[v] <= r[w]
            f = np.ones(b)
            for a, c in edges:
                f = f * np.sum((X[a] - X[c]) ** 2, axis=1) ** (-lam)
            dens = np.zeros(b)
            for tree in trees:
                q = np.full(b, 1.0 / vol_b)
                for par, child in tree:
                    q = q * kern(X[child] - X[par])
                dens += q / len(trees)
            w = np.where(inside, f / np.where(inside, dens, 1.0), 0.0)
            sums.append(float(np.sum(w)))
            sqs.append(float(np.sum(w * w)))
            done += b
    mean, se = _combine(sums, sqs, cfg.sample_count)
    return SeriesValue(mean, se, cfg.sample_count)
