"""
Revising the norms already in force
===================================

Two norms are already enacted: no unattended luggage (n6) and passport
control (n7), which conflicts with n1. Preserving them rules n1 out;
letting the solver reconsider them may swap n7 for n1.
"""

from normnet import datasets
from normnet.ilp import ProblemConfig
from normnet.net import with_costs
from normnet.solve import solve

net = datasets.airport_extended()
print(sorted(net.in_force), sorted(net.relations.exclusivity))

for mode in ("ignore", "preserve", "flexible"):
    r = solve(net, ProblemConfig("mnsplb", "generalisation", budget=5, in_force_mode=mode))
    print(mode, r.objective, [sorted(s) for s in r.optima])

# at w_r = w_c = 1/2 keeping n6 exactly pays for itself, so {n1} and {n1, n6} tie;
# a little more weight on representation breaks the tie
cfg = ProblemConfig("mnsplb", "generalisation", budget=5, weights=("0.6", "0.4"))
for c1 in (0, 6):
    r = solve(with_costs(net, {"n1": c1}), cfg)
    print(f"c1={c1}", [sorted(s) for s in r.optima])
