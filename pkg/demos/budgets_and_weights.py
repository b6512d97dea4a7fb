"""
Trading representation against cost
===================================

With a budget, the objective mixes normalised representation power with
the share of the budget left unspent. Small changes in costs, budget or
weights can change the chosen norms.
"""

from fractions import Fraction

from normnet import datasets
from normnet.ilp import ProblemConfig
from normnet.net import with_costs
from normnet.solve import solve
from normnet.sweep import budget_range, rows_to_csv, sweep, weight_grid

net = datasets.airport()
base = ProblemConfig("mnsplb", "inclusion", budget=5, weights=("0.5", "0.5"))

r = solve(net, base)
print("b=5:", r.objective, [sorted(s) for s in r.optima])

# making n1 expensive pushes the solver towards the cheaper safety norms
pricey = with_costs(net, {"n1": 6})
print(rows_to_csv(sweep(pricey, base, budgets=[4, 5, 10])))

# exact rationals expose ties: at b=10 adding n4 to n1 gains exactly what it costs
print(rows_to_csv(sweep(net, base, budgets=budget_range(4, 10, 2))))

# shifting weight from cost to representation
grid = weight_grid(Fraction(1, 4), "mnsplb")
print(rows_to_csv(sweep(net, ProblemConfig("mnsplb", "generalisation", budget=5), weights=grid)))
