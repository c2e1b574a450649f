"""Import a small Bayesian network as a deterministic model with uniform noise
parents, then compare the exact push-forward with a seeded sample.

    python3 demos/noisy_network.py
"""

from sfm import value
from sfm.prob import bn_import, implied_conditional, marginal, parse_cpt, push_forward, sample, total_variation

CPT = """
# rain and sprinkler both wet the grass
Rain      -                  1  1/5
Rain      -                  0  4/5
Sprinkler Rain=0             1  2/5
Sprinkler Rain=0             0  3/5
Sprinkler Rain=1             1  1/100
Sprinkler Rain=1             0  99/100
Wet       Rain=0,Sprinkler=0 0  1
Wet       Rain=0,Sprinkler=1 1  9/10
Wet       Rain=0,Sprinkler=1 0  1/10
Wet       Rain=1,Sprinkler=0 1  4/5
Wet       Rain=1,Sprinkler=0 0  1/5
Wet       Rain=1,Sprinkler=1 1  99/100
Wet       Rain=1,Sprinkler=1 0  1/100
"""

bn = parse_cpt(CPT)
pm = bn_import(bn)
print("noise nodes:", sorted(set(pm.base.nodes) - set(bn.nodes)))
print("P(Wet | Rain=1, Sprinkler=0) recovered:", {str(k): str(v) for k, v in implied_conditional(pm, "Wet", (1, 0)).items()})

exact = marginal(push_forward(pm), bn.nodes)
wet = sum(p for w, p in exact.items() if w["Wet"] == value(1))
print("exact P(Wet=1):", wet, f"~ {float(wet):.4f}")

n = 100_000
freq = {w: c / n for w, c in sample(pm, seed=42, n=n).items()}
freq = marginal(freq, bn.nodes)
print(f"sampled TV distance at n={n}: {total_variation(exact, freq):.4f}")
