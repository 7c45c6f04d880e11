"""
Two ways to find a chromatic number
===================================

The cluster solver uses DSATUR branch and bound. The oracle counts
colorings by inclusion-exclusion over vertex subsets. They share no code,
so agreement is a real check.
"""

import time

from localsim import generate_clique_path, generate_gnp
from localsim.algorithms import exact_min_coloring
from localsim.verify import brute_force_chromatic, verify_coloring

g = generate_clique_path(4, 3, 10)
colors, chi = exact_min_coloring(g)
print("K4 - path - K3:", g.n, "vertices, chi =", chi)
print("canonical coloring:", [colors[v] for v in sorted(colors)])

for seed in range(5):
    h = generate_gnp(16, 0.4, seed)
    t0 = time.perf_counter()
    _, fast = exact_min_coloring(h)
    t1 = time.perf_counter()
    slow, witness = brute_force_chromatic(h)
    t2 = time.perf_counter()
    assert verify_coloring(h, witness).passed
    print(f"seed {seed}: solver {fast} ({t1 - t0:.4f}s)  oracle {slow} ({t2 - t1:.4f}s)")
