"""
Selecting border-control norms
==============================

Five candidate norms for passengers crossing a border, related by
generalisation, exclusivity and substitutability. We check which
combinations are admissible and pick the most representative one.
"""

from normnet import Norm, RelationSet, build_norm_net, soundness_report
from normnet.ilp import ProblemConfig, encode_problem, export_lp
from normnet.representation import generalisation_power, inclusion_power, max_representation
from normnet.solve import SolveOptions, solve

norms = [
    Norm("n1", "permission", "all_passengers", "cross_border", 0, {"free_movement"}),
    Norm("n2", "obligation", "all_passengers", "register_passport", 2, {"safety"}),
    Norm("n3", "obligation", "all_passengers", "fulfil_form", 5, {"safety"}),
    Norm("n4", "obligation", "locals", "fulfil_form", 2, {"safety"}),
    Norm("n5", "obligation", "visitors", "fulfil_form", 2, {"safety"}),
]

# generalisation pairs are (general, specific)
relations = RelationSet.of(
    generalisation=[("n3", "n4"), ("n3", "n5")],
    exclusivity=[("n1", "n2"), ("n1", "n3")],
    substitutability=[("n2", "n3")],
)
net = build_norm_net(norms, relations, value_order=["free_movement", "safety"])

# n3 and n4 overlap: one generalises the other
print(soundness_report(net, {"n3", "n4"}))
print(soundness_report(net, {"n1", "n4"}))

for power in (inclusion_power(net), generalisation_power(net)):
    print(power.kind, dict(power.power), "max:", max_representation(net, power))

# the most representative sound system, under each power function
for rep in ("inclusion", "generalisation"):
    report = solve(net, ProblemConfig("mnsp", rep), SolveOptions())
    print(rep, report.objective, [sorted(s) for s in report.optima])

# the same program as LP text, for an external MILP solver
print(export_lp(encode_problem(net, ProblemConfig("mnsp"))))
