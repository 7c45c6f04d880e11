"""
How often do the randomized steps succeed?
==========================================

Each experiment draws a fresh graph and run seed per trial and reports
successes along with the measured extremes.
"""

from localsim.harness import trial_harness

runs = [
    ("partition-dominating-size", dict(n=400, p=0.1)),
    ("partition-B-degree", dict(n=400, p=0.1)),
    ("color-termination", dict(n=500, degree=20, epsilon=0.5, round_budget=10)),
    ("dominate-diameter", dict(n=400, p=0.1)),
]

for name, cfg in runs:
    s = trial_harness(name, 20, base_seed=0, **cfg)
    print(f"{name:28s} {s.successes}/{s.trials}")
    for key, ext in s.extremes().items():
        print(f"    {key:24s} min {ext['min']:.1f}  max {ext['max']:.1f}")
