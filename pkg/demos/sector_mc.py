"""
Configuration-space Monte Carlo over the sectors of small graphs.

The sector pieces of the single edge should each be pi^4/6.

Run:  python demos/sector_mc.py [samples]
"""

import math
import sys

from xspace.graphs import Graph, acyclic_orientations
from xspace.oracles import McConfig, config_sector_mc

samples = int(sys.argv[1]) if len(sys.argv) > 1 else 400_000

for name, g in (("edge", Graph.banana(1)), ("triangle", Graph.polygon(3))):
    full = config_sector_mc(g, None, 4, 1.0, McConfig(samples, 1, 8))
    parts = [config_sector_mc(g, o, 4, 1.0, McConfig(samples, 2 + i, 8))
             for i, o in enumerate(acyclic_orientations(g))]
    total = sum(p.value for p in parts)
    se = math.sqrt(full.tail_bound**2 + sum(p.tail_bound**2 for p in parts))
    print(f"{name}: full {full.value:.4f} +/- {full.tail_bound:.4f}")
    for o, p in zip(acyclic_orientations(g), parts):
        print(f"   {o.directions}  {p.value:.4f} +/- {p.tail_bound:.4f}")
    print(f"   sum of sectors {total:.4f}  ({abs(total - full.value) / se:.2f} sigma)")

print("edge exact", math.pi**4 / 3)
