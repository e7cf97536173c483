"""
Acyclic orientations, nests and motive classes of small graphs.

Run:  python demos/graph_orientations.py
"""

from xspace.graphs import Graph, acyclic_orientations, chromatic_polynomial, sector
from xspace.intpoly import tate
from xspace.wonderful import enumerate_gnests, motive_class, singularity_order

graphs = {
    "edge": Graph.banana(1),
    "triangle": Graph.polygon(3),
    "square": Graph.polygon(4),
    "3-banana": Graph.banana(3),
    "K4": Graph.complete(4),
}

print(f"{'graph':10s} {'|Omega|':>8s} {'P(-1)':>6s} {'nests':>6s}  chromatic polynomial")
for name, g in graphs.items():
    p = chromatic_polynomial(g)
    print(f"{name:10s} {len(acyclic_orientations(g)):8d} {p(-1):6d} {len(enumerate_gnests(g)):6d}  {p}")

# sectors of the triangle: one total order per orientation
print()
for o in acyclic_orientations(graphs["triangle"]):
    s = sector(o)
    print("sources", s.sources, "sinks", s.sinks, "relations", s.relations)

# motive of the wonderful compactification with X = P^2
x = tate("1+L+L^2")
print()
for name in ("edge", "triangle", "3-banana"):
    print(f"{name:10s}", motive_class(graphs[name], x, 2))

print()
for D in (4, 6):
    print(f"D={D}: singularity order of the 3-banana = {singularity_order(graphs['3-banana'], D)}")
