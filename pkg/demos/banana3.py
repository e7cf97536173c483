"""
The three-edge banana: five subdomain sums and the amplitude.

Run:  python demos/banana3.py
"""

from xspace.amplitudes import banana3_amplitude, banana3_brute_sums, banana3_domain_sums, banana3_integrand

t = 0.5
brute = banana3_brute_sums(t, 300)
closed = banana3_domain_sums(t)
print(f"t = {t}")
for key in ("D1", "D2", "D3", "D4", "D5", "total"):
    print(f"  {key:6s} brute {brute[key].value:.15f}   closed {closed[key].value:.15f}")

print()
for t in (0.1, 0.3, 0.5, 0.7, 0.9):
    b = banana3_integrand(t, 600)
    print(f"t={t:.1f}  brute {b.brute.value:.12f}  polylog {b.polylog.value:.12f}  printed {b.printed.value:.6g}")

amp = banana3_amplitude(1e-12)
print()
print("normalised amplitude", amp.numeric.value, "+/-", amp.numeric.tail_bound)
print("second route        ", amp.notes["polylog_route"]["value"])
print("prefactor", amp.prefactor_text, "=", amp.prefactor)
print("absolute            ", amp.value(absolute=True))
