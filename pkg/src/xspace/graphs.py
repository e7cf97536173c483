"""Finite multigraphs without looping edges and their combinatorics.

Covers induced subgraphs and quotients, biconnectivity, acyclic orientations
and the radial sectors they cut out, chromatic polynomials, and the graph
Laplacian.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

import numpy as np

from .intpoly import IntPoly

Label = Hashable


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """Multigraph with ordered vertex labels and indexed edges.

    Parallel edges are allowed, looping edges are not. Edge ``i`` is
    ``edges[i]``; the order of ``edges`` is significant.
    """

    vertices: tuple
    edges: tuple = ()
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        vs = tuple(self.vertices)
        es = tuple(tuple(e) for e in self.edges)
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", es)
        if len(set(vs)) != len(vs):
            raise GraphError("vertex labels must be unique")
        index = {v: i for i, v in enumerate(vs)}
        for e in es:
            if len(e) != 2:
                raise GraphError(f"edge {e!r} must have two endpoints")
            a, b = e
            if a not in index or b not in index:
                raise GraphError(f"edge {e!r} uses an undeclared vertex")
            if a == b:
                raise GraphError(f"looping edge at {a!r}")
        object.__setattr__(self, "_index", index)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_edges(cls, edges: Iterable[tuple], vertices: Iterable | None = None) -> "Graph":
        edges = [tuple(e) for e in edges]
        if vertices is None:
            seen: dict = {}
            for a, b in edges:
                seen.setdefault(a, None)
                seen.setdefault(b, None)
            vertices = list(seen)
        return cls(tuple(vertices), tuple(edges))

    @classmethod
    def from_json(cls, data: str | Mapping) -> "Graph":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls(tuple(data["vertices"]), tuple(tuple(e) for e in data["edges"]))
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed graph JSON: {exc}") from exc

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}

    @classmethod
    def polygon(cls, k: int) -> "Graph":
        if k < 2:
            raise GraphError("a polygon needs at least 2 edges")
        vs = tuple(f"v{i}" for i in range(k))
        return cls(vs, tuple((vs[i], vs[(i + 1) % k]) for i in range(k)))

    @classmethod
    def banana(cls, m: int) -> "Graph":
        return cls(("v", "w"), (("v", "w"),) * m)

    @classmethod
    def path(cls, n: int) -> "Graph":
        vs = tuple(f"v{i}" for i in range(n))
        return cls(vs, tuple((vs[i], vs[i + 1]) for i in range(n - 1)))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        vs = tuple(f"v{i}" for i in range(n))
        return cls(vs, tuple(itertools.combinations(vs, 2)))

    # -- basic data -----------------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def index(self, v: Label) -> int:
        return self._index[v]

    def valence(self, v: Label) -> int:
        return sum(v in e for e in self.edges)

    def total_valence(self) -> int:
        return 2 * len(self.edges)

    def neighbors(self, v: Label) -> list:
        out = []
        for a, b in self.edges:
            if a == v and b not in out:
                out.append(b)
            elif b == v and a not in out:
                out.append(a)
        return sorted(out, key=self.index)

    def components(self, vertex_subset: Iterable | None = None) -> list[tuple]:
        """Connected components (vertex tuples in graph order) of the induced subgraph."""
        vs = list(self.vertices) if vertex_subset is None else sorted(set(vertex_subset), key=self.index)
        allowed = set(vs)
        parent = {v: v for v in vs}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            if a in allowed and b in allowed:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[rb] = ra
        groups: dict = {}
        for v in vs:
            groups.setdefault(find(v), []).append(v)
        return sorted((tuple(g) for g in groups.values()), key=lambda g: self.index(g[0]))

    @property
    def b0(self) -> int:
        return len(self.components())

    @property
    def b1(self) -> int:
        return self.n_edges - self.n_vertices + self.b0

    def is_connected(self) -> bool:
        return self.n_vertices > 0 and self.b0 == 1

    def simple_edges(self) -> list[tuple]:
        """One representative per parallel class, oriented by vertex order."""
        seen = []
        for a, b in self.edges:
            key = (a, b) if self.index(a) < self.index(b) else (b, a)
            if key not in seen:
                seen.append(key)
        return seen

    def multiplicity(self, a: Label, b: Label) -> int:
        return sum(set(e) == {a, b} for e in self.edges)

    def remove_vertex(self, v: Label) -> "Graph":
        return Graph(
            tuple(u for u in self.vertices if u != v),
            tuple(e for e in self.edges if v not in e),
        )


# ---------------------------------------------------------------------------
# induced subgraphs and quotients


@dataclass(frozen=True)
class InducedSubgraph:
    """Vertex subset of ``parent`` together with every parent edge inside it."""

    parent: Graph
    vertex_subset: frozenset
    edge_indices: tuple = field(init=False)

    def __post_init__(self):
        vs = frozenset(self.vertex_subset)
        unknown = vs - set(self.parent.vertices)
        if unknown:
            raise GraphError(f"vertices {sorted(map(str, unknown))} not in parent graph")
        object.__setattr__(self, "vertex_subset", vs)
        idx = tuple(i for i, (a, b) in enumerate(self.parent.edges) if a in vs and b in vs)
        object.__setattr__(self, "edge_indices", idx)

    @property
    def vertices(self) -> tuple:
        return tuple(v for v in self.parent.vertices if v in self.vertex_subset)

    @property
    def edges(self) -> tuple:
        return tuple(self.parent.edges[i] for i in self.edge_indices)

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_subset)

    @property
    def n_edges(self) -> int:
        return len(self.edge_indices)

    @property
    def b0(self) -> int:
        return len(self.parent.components(self.vertex_subset)) if self.vertex_subset else 0

    @property
    def b1(self) -> int:
        return self.n_edges - self.n_vertices + self.b0

    def as_graph(self) -> Graph:
        return Graph(self.vertices, self.edges)

    def contains(self, other: "InducedSubgraph") -> bool:
        return other.vertex_subset <= self.vertex_subset

    def __repr__(self) -> str:
        return f"InducedSubgraph({{{', '.join(map(str, self.vertices))}}}, edges={self.n_edges})"

    def sort_key(self):
        return (self.n_vertices, sorted(self.parent.index(v) for v in self.vertex_subset))


def induced_subgraphs(g: Graph, k: int | None = None) -> list[InducedSubgraph]:
    """All induced subgraphs of ``g``, or only those with ``k`` vertices.

    Ordered by size, then lexicographically by vertex positions in ``g``.
    """
    n = g.n_vertices
    if k is not None and (k < 0 or k > n):
        raise GraphError(f"k={k} out of range for a graph with {n} vertices")
    sizes = range(1, n + 1) if k is None else ([k] if k > 0 else [])
    out = []
    for size in sizes:
        for combo in itertools.combinations(g.vertices, size):
            out.append(InducedSubgraph(g, frozenset(combo)))
    return out


def is_biconnected(g: Graph | InducedSubgraph) -> bool:
    """2-vertex-connectivity; a single edge (or parallel edges) counts as biconnected."""
    if isinstance(g, InducedSubgraph):
        g = g.as_graph()
    if g.n_vertices == 0:
        raise GraphError("empty graph")
    if g.n_vertices < 2 or not g.is_connected():
        return False
    if g.n_vertices == 2:
        return True
    return all(g.remove_vertex(v).is_connected() for v in g.vertices)


def _fresh_label(component: Sequence, taken: set) -> str:
    label = "[" + "+".join(map(str, component)) + "]"
    while label in taken:
        label += "'"
    return label


def quotient(g: Graph, gamma: InducedSubgraph) -> Graph:
    """``g // gamma``: each connected component of ``gamma`` becomes one new vertex."""
    if gamma.parent != g:
        raise GraphError("subgraph is not induced in this graph")
    if not gamma.vertex_subset:
        return g
    comps = g.components(gamma.vertex_subset)
    taken = set(g.vertices)
    rename = {}
    for comp in comps:
        label = _fresh_label(comp, taken)
        taken.add(label)
        for v in comp:
            rename[v] = label
    new_vertices = []
    for v in g.vertices:
        nv = rename.get(v, v)
        if nv not in new_vertices:
            new_vertices.append(nv)
    new_edges = []
    for i, (a, b) in enumerate(g.edges):
        if i in gamma.edge_indices:
            continue
        new_edges.append((rename.get(a, a), rename.get(b, b)))
    return Graph(tuple(new_vertices), tuple(new_edges))


# ---------------------------------------------------------------------------
# orientations and sectors


@dataclass(frozen=True)
class Orientation:
    """Direction ``(source, target)`` for each edge of ``graph``."""

    graph: Graph
    directions: tuple

    def __post_init__(self):
        dirs = tuple(tuple(d) for d in self.directions)
        if len(dirs) != self.graph.n_edges:
            raise GraphError("one direction per edge is required")
        for (s, t), e in zip(dirs, self.graph.edges):
            if {s, t} != set(e):
                raise GraphError(f"direction {(s, t)!r} does not match edge {e!r}")
        object.__setattr__(self, "directions", dirs)

    def source(self, i: int) -> Label:
        return self.directions[i][0]

    def target(self, i: int) -> Label:
        return self.directions[i][1]

    def reachability(self) -> dict:
        """``reach[v]`` = set of vertices reachable from ``v`` by a nonempty directed path."""
        succ: dict = {v: set() for v in self.graph.vertices}
        for s, t in self.directions:
            succ[s].add(t)
        reach = {}
        for v in self.graph.vertices:
            seen: set = set()
            stack = list(succ[v])
            while stack:
                u = stack.pop()
                if u not in seen:
                    seen.add(u)
                    stack.extend(succ[u])
            reach[v] = seen
        return reach

    def is_acyclic(self) -> bool:
        reach = self.reachability()
        return all(v not in reach[v] for v in self.graph.vertices)

    def sources(self) -> tuple:
        has_in = {t for _, t in self.directions}
        return tuple(v for v in self.graph.vertices if v not in has_in)

    def sinks(self) -> tuple:
        has_out = {s for s, _ in self.directions}
        return tuple(v for v in self.graph.vertices if v not in has_out)

    def to_json(self) -> list:
        return [list(d) for d in self.directions]


def acyclic_orientations(g: Graph) -> list[Orientation]:
    """Every orientation of ``g`` without a directed cycle.

    Parallel edges must be co-oriented, since opposite copies form a directed
    2-cycle. Enumeration is depth-first over parallel classes in order of first
    appearance, trying the listed direction before the reversed one.
    """
    classes = g.simple_edges()
    n = g.n_vertices
    bit = {v: 1 << i for i, v in enumerate(g.vertices)}
    idx = {v: i for i, v in enumerate(g.vertices)}
    found: list[tuple] = []

    def rec(k: int, reach: list[int], chosen: list[tuple]):
        if k == len(classes):
            found.append(tuple(chosen))
            return
        a, b = classes[k]
        for s, t in ((a, b), (b, a)):
            if reach[idx[t]] & bit[s]:
                continue
            new = reach[:]
            add = reach[idx[t]] | bit[t]
            for w in range(n):
                if w == idx[s] or reach[w] & bit[s]:
                    new[w] |= add
            chosen.append((s, t))
            rec(k + 1, new, chosen)
            chosen.pop()

    rec(0, [0] * n, [])
    out = []
    for choice in found:
        lookup = {frozenset(c): c for c in choice}
        out.append(Orientation(g, tuple(lookup[frozenset(e)] for e in g.edges)))
    return out


def count_acyclic_orientations(g: Graph) -> int:
    """Acyclic orientation count by inclusion-exclusion over source sets.

    Independent of :func:`acyclic_orientations`; used as a cross-check.
    """
    n = g.n_vertices
    adj = [0] * n
    for a, b in g.edges:
        i, j = g.index(a), g.index(b)
        adj[i] |= 1 << j
        adj[j] |= 1 << i

    @lru_cache(maxsize=None)
    def a(mask: int) -> int:
        if mask == 0:
            return 1
        total = 0
        sub = mask
        while sub:
            independent = all(not (adj[i] & sub) for i in range(n) if sub >> i & 1)
            if independent:
                sign = 1 if bin(sub).count("1") % 2 else -1
                total += sign * a(mask & ~sub)
            sub = (sub - 1) & mask
        return total

    return a((1 << n) - 1)


@dataclass(frozen=True)
class Sector:
    """Radial region ``{r_w >= r_v whenever w >=_o v}`` of an acyclic orientation.

    ``relations`` lists every pair ``(v, w)`` with ``v < w`` in the induced
    partial order, i.e. the transitive closure of ``r_source <= r_target``.
    """

    orientation: Orientation
    relations: tuple
    sources: tuple
    sinks: tuple
    multiplicity: int = 1

    def contains(self, radii: Mapping, strict: bool = False) -> bool:
        if strict:
            return all(radii[v] < radii[w] for v, w in self.relations)
        return all(radii[v] <= radii[w] for v, w in self.relations)

    def describe(self) -> str:
        return ", ".join(f"r_{v} <= r_{w}" for v, w in self.relations)


def sector(o: Orientation, multiplicity: int = 1) -> Sector:
    if not o.is_acyclic():
        raise GraphError("not acyclic")
    if multiplicity < 1:
        raise GraphError("multiplicity must be a positive integer")
    g = o.graph
    reach = o.reachability()
    rel = []
    for v in g.vertices:
        for w in g.vertices:
            if w in reach[v]:
                rel.append((v, w))
    rel.sort(key=lambda p: (g.index(p[0]), g.index(p[1])))
    return Sector(o, tuple(rel), o.sources(), o.sinks(), multiplicity)


# ---------------------------------------------------------------------------
# chromatic polynomial


def _canonical(n: int, edges: Iterable[tuple[int, int]]) -> tuple[int, frozenset]:
    return n, frozenset((min(a, b), max(a, b)) for a, b in edges)


@lru_cache(maxsize=200_000)
def _chromatic(n: int, edges: frozenset) -> tuple[int, ...]:
    if not edges:
        return (0,) * n + (1,)
    if len(edges) == n * (n - 1) // 2:
        p = IntPoly((1,))
        for i in range(n):
            p = p * IntPoly((-i, 1))
        return p.coeffs
    e = max(edges)
    deleted = edges - {e}
    a, b = e
    # contract b into a, then relabel vertices above b down by one
    merged = set()
    for x, y in deleted:
        x = a if x == b else x
        y = a if y == b else y
        if x == y:
            continue
        x -= x > b
        y -= y > b
        merged.add((min(x, y), max(x, y)))
    p_del = IntPoly(_chromatic(n, deleted))
    p_con = IntPoly(_chromatic(n - 1, frozenset(merged)))
    return (p_del - p_con).coeffs


def chromatic_polynomial(g: Graph) -> IntPoly:
    """Chromatic polynomial of the underlying simple graph (deletion-contraction)."""
    n, edges = _canonical(g.n_vertices, ((g.index(a), g.index(b)) for a, b in g.edges))
    return IntPoly(_chromatic(n, edges), "t")


def orientation_count_from_chromatic(g: Graph) -> int:
    """``(-1)^|V| P_g(-1)``."""
    return (-1) ** g.n_vertices * chromatic_polynomial(g)(-1)


# ---------------------------------------------------------------------------
# Laplacian and harmonic functions


def graph_laplacian(g: Graph) -> np.ndarray:
    """``(L h)(v) = valence(v) h(v) - sum over incident edges of h(other end)``.

    Parallel edges are counted with multiplicity, so rows sum to zero.
    """
    n = g.n_vertices
    lap = np.zeros((n, n), dtype=np.int64)
    for a, b in g.edges:
        i, j = g.index(a), g.index(b)
        lap[i, i] += 1
        lap[j, j] += 1
        lap[i, j] -= 1
        lap[j, i] -= 1
    return lap


def is_harmonic(g: Graph, h: Mapping, tol: float = 1e-12, at: Iterable | None = None) -> bool:
    """True iff ``h(v)`` is the mean of ``h`` over the edge-neighbours of ``v``.

    Checked at every vertex, or only at the vertices listed in ``at``.
    Isolated vertices impose no condition.
    """
    missing = [v for v in g.vertices if v not in h]
    if missing:
        raise GraphError(f"h is missing vertices {missing!r}")
    vec = np.array([float(h[v]) for v in g.vertices])
    lap = graph_laplacian(g)
    deg = np.diag(lap).astype(float)
    resid = lap @ vec
    scale = np.where(deg > 0, deg, 1.0)
    ok = np.abs(resid / scale) <= tol
    if at is None:
        return bool(np.all(ok))
    return all(bool(ok[g.index(v)]) for v in at)


# ---------------------------------------------------------------------------
# small-graph census


def census(max_vertices: int = 5) -> Iterator[Graph]:
    """All connected simple graphs on labelled vertices ``0..n-1``, ``1 <= n <= max_vertices``."""
    for n in range(1, max_vertices + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            edges = tuple(p for i, p in enumerate(pairs) if mask >> i & 1)
            g = Graph(tuple(range(n)), edges)
            if g.is_connected():
                yield g


def random_multigraph(rng: np.random.Generator, max_vertices: int = 7, max_multiplicity: int = 3) -> Graph:
    """Random loopless multigraph (not necessarily connected)."""
    n = int(rng.integers(1, max_vertices + 1))
    edges = []
    for a, b in itertools.combinations(range(n), 2):
        if rng.random() < 0.5:
            m = int(rng.integers(1, max_multiplicity + 1))
            edges.extend([(a, b) if rng.random() < 0.5 else (b, a)] * m)
    order = rng.permutation(len(edges))
    return Graph(tuple(range(n)), tuple(edges[i] for i in order))
