"""
Coloring a random graph in a constant number of LOCAL rounds
============================================================

Sample G(n, p), run the whole randomized procedure inside the simulator,
then check the output with the independent verifiers.
"""

from localsim import generate_gnp
from localsim.algorithms import PipelineParams, pipeline, pipeline_rounds
from localsim.verify import verify_coloring, verify_decomposition

# a graph of moderate density; every vertex knows n and its own ID
g = generate_gnp(400, 0.1, seed=7)
print("vertices:", g.n, " max degree:", g.max_degree)

params = PipelineParams()
print("fixed schedule:", pipeline_rounds(params), "rounds, the last one purely local")

res = pipeline(g, params, seed=1)

# the dominating set and the split into A (near D) and B (low degree)
print("|D| =", len(res.D), " |A| =", len(res.A), " |B| =", len(res.B), " t =", res.t)

nd = res.decomposition
print("decomposition: d =", nd.d, " c =", nd.c, " clusters:", len(nd.clusters))

col = verify_coloring(g, res.coloring)
dec = verify_decomposition(g, nd)
print("coloring legal:", col.passed, " colors used:", col.measured["color_count"])
print("decomposition legal:", dec.passed, " widest cluster:", dec.measured["max_cluster_diameter"])

# the round count does not depend on n
print("rounds executed:", res.trace.rounds_executed)
