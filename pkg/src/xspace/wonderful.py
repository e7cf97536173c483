"""Building sets, nests and Grothendieck classes of wonderful compactifications.

Classes live in ``Z[L]`` and are represented by :class:`~xspace.intpoly.IntPoly`
in the variable ``L`` (see :func:`xspace.intpoly.tate`).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .graphs import Graph, GraphError, InducedSubgraph, induced_subgraphs, is_biconnected
from .intpoly import IntPoly, tate

TatePolynomial = IntPoly


@dataclass(frozen=True)
class BuildingSet:
    """Biconnected induced subgraphs with at least one edge, ordered by size then vertex order."""

    graph: Graph
    elements: tuple

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def building_set(g: Graph) -> BuildingSet:
    elems = [s for s in induced_subgraphs(g, None) if s.n_edges >= 1 and is_biconnected(s)]
    return BuildingSet(g, tuple(elems))


def nest_compatible(a: InducedSubgraph, b: InducedSubgraph) -> bool:
    """Disjoint, meeting in exactly one vertex, or nested (by vertex sets)."""
    va, vb = a.vertex_subset, b.vertex_subset
    return len(va & vb) <= 1 or va <= vb or vb <= va


@dataclass(frozen=True)
class GNest:
    elements: tuple

    def __post_init__(self):
        for a, b in itertools.combinations(self.elements, 2):
            if not nest_compatible(a, b):
                raise GraphError(f"{a!r} and {b!r} violate the nest condition")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def union(self) -> InducedSubgraph:
        g = self.elements[0].parent
        return InducedSubgraph(g, frozenset().union(*(e.vertex_subset for e in self.elements)))


def enumerate_gnests(g: Graph) -> list[GNest]:
    """All nonempty pairwise-compatible subsets of the building set.

    Ordered by nest size, then lexicographically by building-set position.
    """
    elems = building_set(g).elements
    m = len(elems)
    ok = [[nest_compatible(elems[i], elems[j]) for j in range(m)] for i in range(m)]
    found: list[tuple[int, ...]] = []

    def rec(start: int, chosen: list[int]):
        for i in range(start, m):
            if all(ok[i][j] for j in chosen):
                chosen.append(i)
                found.append(tuple(chosen))
                rec(i + 1, chosen)
                chosen.pop()

    rec(0, [])
    found.sort(key=lambda c: (len(c), c))
    return [GNest(tuple(elems[i] for i in c)) for c in found]


def diagonal_dimension(gamma: InducedSubgraph, dimX: int) -> int:
    """Dimension of the diagonal of ``gamma`` inside ``(X x X)^V``: ``dimX (2n - |V_gamma| + b0)``."""
    if dimX < 0:
        raise ValueError("dimX must be a nonnegative integer")
    n = gamma.parent.n_vertices
    return dimX * (2 * n - gamma.n_vertices + gamma.b0)


@dataclass(frozen=True)
class NestWeight:
    """Codimension data of a nest.

    ``r[i]`` belongs to ``nest.elements[i]``. The exponent vectors ``mu`` with
    ``1 <= mu_i <= r_i - 1`` are produced by :meth:`mus`.
    """

    nest: GNest
    r: tuple
    quotient_vertex_count: int

    def ranges(self) -> list[range]:
        return [range(1, ri) for ri in self.r]

    def mus(self) -> Iterator[tuple]:
        return itertools.product(*self.ranges())

    def is_empty(self) -> bool:
        return any(ri <= 1 for ri in self.r)

    def norm_series(self) -> IntPoly:
        """``sum_{mu in M_N} L^{|mu|}``, a product of geometric pieces."""
        out = tate([1])
        for ri in self.r:
            out = out * tate([0] + [1] * max(ri - 1, 0))
        return out


def nest_weights(nest: GNest, dimX: int) -> NestWeight:
    g = nest.elements[0].parent
    ambient = 2 * g.n_vertices * dimX
    rs = []
    for gamma in nest.elements:
        subs = [e for e in nest.elements if e.vertex_subset < gamma.vertex_subset]
        if subs:
            delta = InducedSubgraph(g, frozenset().union(*(e.vertex_subset for e in subs)))
            upper = diagonal_dimension(delta, dimX)
        else:
            upper = ambient
        rs.append(upper - diagonal_dimension(gamma, dimX))
    u = nest.union()
    return NestWeight(nest, tuple(rs), g.n_vertices - u.n_vertices + u.b0)


def motive_class(g: Graph, xClass: IntPoly, dimX: int) -> IntPoly:
    """Grothendieck class of the wonderful compactification as a polynomial in ``L``.

    ``xClass^{2|V|} + sum_N sum_{mu in M_N} xClass^{|V(G/N)| + |V|} L^{|mu|}``.
    """
    if isinstance(xClass, str):
        xClass = tate(xClass)
    if xClass.degree > 0 and xClass.var != "L":
        raise ValueError("xClass must be a polynomial in L")
    xClass = IntPoly(xClass.coeffs, "L")
    n = g.n_vertices
    total = xClass ** (2 * n)
    for nest in enumerate_gnests(g):
        w = nest_weights(nest, dimX)
        if w.is_empty():
            continue
        total = total + xClass ** (w.quotient_vertex_count + n) * w.norm_series()
    return total


def single_blowup_class(ambient: IntPoly, center: IntPoly, codim: int) -> IntPoly:
    """Class of the blowup of a smooth variety along a smooth centre of codimension ``codim``.

    ``[Y] + [C]([P^{codim-1}] - 1)``. Independent of the nest machinery.
    """
    return ambient + center * tate([0] + [1] * max(codim - 1, 0))


def singularity_order_forms(gamma: InducedSubgraph | Graph, D: int) -> tuple[int, int]:
    """The vertex form and the loop-number form of the singularity order, unchecked."""
    e, v = gamma.n_edges, gamma.n_vertices
    return (D - 2) * e - 2 * D * (v - 1) + 2, 2 * D * gamma.b1 - (D + 2) * e + 2


def singularity_order(gamma: InducedSubgraph | Graph, D: int) -> int:
    """``(D-2)|E| - 2D(|V|-1) + 2``, cross-checked against ``2D b1 - (D+2)|E| + 2``."""
    if not is_biconnected(gamma):
        raise GraphError("subgraph is not biconnected")
    if D < 2 or D % 2:
        raise ValueError("D must be even and at least 2")
    first, second = singularity_order_forms(gamma, D)
    if first != second:
        raise AssertionError(f"singularity order forms disagree: {first} != {second}")
    return first


@dataclass(frozen=True)
class ConvergenceReport:
    D: int
    cond_i: bool
    value_i: int
    cond_ii: bool
    values_ii: dict
    cond_iii: bool
    value_iii: int

    @property
    def all_pass(self) -> bool:
        return self.cond_i and self.cond_ii and self.cond_iii

    def to_dict(self) -> dict:
        return {
            "D": self.D,
            "i": {"value": self.value_i, "holds": self.cond_i, "condition": "2D-3 > 1"},
            "ii": {
                "values": {str(k): v for k, v in self.values_ii.items()},
                "holds": self.cond_ii,
                "condition": "(2D-2)val(v) - D + 1 > 1 for every vertex",
            },
            "iii": {"value": self.value_iii, "holds": self.cond_iii, "condition": "(2D-2)val(G) - D|V| > 0"},
            "all": self.all_pass,
        }


def convergence_report(g: Graph, D: int) -> ConvergenceReport:
    """Power-counting conditions for convergence of the amplitude at infinity."""
    v_i = 2 * D - 3
    vals = {v: (2 * D - 2) * g.valence(v) - D + 1 for v in g.vertices}
    v_iii = (2 * D - 2) * g.total_valence() - D * g.n_vertices
    return ConvergenceReport(D, v_i > 1, v_i, all(x > 1 for x in vals.values()), vals, v_iii > 0, v_iii)
