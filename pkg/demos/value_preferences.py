"""
Norms that promote preferred values
===================================

Values are ranked, most preferred first. Each value is worth more than
all lower-ranked values together, so value support respects the ranking.
"""

from normnet import datasets
from normnet.ilp import ProblemConfig
from normnet.solve import solve
from normnet.values import norm_value_support, system_value_support, value_utilities

net = datasets.airport()
u = value_utilities(net.value_order)
print(u)

support = norm_value_support(net, u)
print(support, system_value_support(support, {"n1", "n4"}))

print(value_utilities(["liberty", "equality", "fraternity", "safety"]))

# only values matter: w_r = w_c = 0
r = solve(net, ProblemConfig("vmnsplb", budget=5, weights=(0, 0, 1)))
print(r.objective, [sorted(s) for s in r.optima])

# a balanced mix
r = solve(net, ProblemConfig("vmnsplb", "generalisation", budget=5, weights=("0.4", "0.3", "0.3")))
print(r.objective, [sorted(s) for s in r.optima])
