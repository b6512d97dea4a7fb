"""
How relation density affects search effort
==========================================

Random norm nets from a seeded generator, solved exactly. Dense
exclusivity prunes the search; sparse nets leave many sound systems to
explore.
"""

import statistics

from normnet.generate import GeneratorParams, generate_random_net
from normnet.ilp import ProblemConfig
from normnet.solve import brute_force_oracle, solve

for p_x in (0.0, 0.1, 0.3, 0.6):
    nodes = []
    for seed in range(20):
        net = generate_random_net(GeneratorParams(n=16, depth=3, branching=3, p_x=p_x, p_s=0.1, seed=seed))
        nodes.append(solve(net, ProblemConfig("mnsp", "generalisation")).nodes)
    print(f"p_x={p_x}: median nodes {statistics.median(nodes)}, max {max(nodes)}")

# the brute-force oracle gives the same answer by enumeration
net = generate_random_net(GeneratorParams(n=12, depth=2, p_x=0.2, p_s=0.1, seed=3))
cfg = ProblemConfig("mnsplb", budget=15)
a, b = solve(net, cfg), brute_force_oracle(net, cfg)
print(a.objective == b.objective, a.optima == b.optima)
