"""
Restricted polylogarithms next to the brute shell sum.

Run:  python demos/polylog_tables.py
"""

import math

from xspace.oracles import brute_restricted_sum
from xspace.polylog import PolylogSpec, eml_decompose_T, eval_restricted_polylog, freitas_reduce

specs = [
    PolylogSpec("P", (2,), (1.0,)),
    PolylogSpec("MP", (3, 6), (0.5, 0.5), ("odd", "even")),
    PolylogSpec("T", (3, 3, 3), (0.7, 0.7, 0.7)),
    PolylogSpec("T", (3, 3, 3), (0.7, 0.7, 0.7), None, "odd"),
    PolylogSpec("MT", (2, 2), (1.0, 1.0), None, "any", 2, 1.0),
]

print(f"{'spec':58s} {'series':>22s} {'tail':>9s} {'brute':>22s}")
for spec in specs:
    v = eval_restricted_polylog(spec)
    label = f"{spec.domain} s={spec.s} z={spec.z} {spec.parity} {spec.total_parity}"
    b = brute_restricted_sum(spec, 120) if max(abs(z) for z in spec.z) < 1 else None
    bs = f"{b.value:22.16f}" if b else f"{'-':>22s}"
    print(f"{label:58s} {v.value:22.16f} {v.tail_bound:9.1e} {bs}")

# Euler-Maclaurin split of the T sum: AV, MT and integral pieces
print()
d = eml_decompose_T(3, 3, 3, 0.7, 6)
for kind in ("AV", "MT", "integral"):
    part = math.fsum(t.contribution for t in d.terms if t.kind == kind)
    print(f"{kind:9s} {part: .12f}")
print(f"{'total':9s} {d.total.value: .12f}   remainder bound {d.remainder_bound:.2e}")

print()
for m in range(3):
    for n in range(1, 4):
        print(f"int_0^1 x^{m} Li_{n}(x) dx = {freitas_reduce(m, n)}")
