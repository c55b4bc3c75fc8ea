"""The Goemans-Williamson baseline: low-rank relaxation plus hyperplane rounding.

The relaxation maximizes sum_e w_e (1 - <v_u, v_v>)/2 over unit vectors, an
upper bound on the maximum cut; random hyperplanes then turn the vectors into
partitions.  The classic guarantee is an approximation ratio of 0.87856, but
on small random cubic graphs the rounded cuts are usually much closer to
optimal.
"""

import numpy as np

from qemc import exhaustive_maxcut, generate_regular, gw, gw_round, gw_solve
from qemc.graphs import Graph

# A triangle cannot be fully cut; the relaxation settles at 120-degree
# vectors, worth 3 * (1 - cos 120) / 2 = 2.25 against a true optimum of 2.
triangle = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
solved = gw_solve(triangle, seed=0)
print(f"triangle relaxation: {solved.relaxation_value:.4f} "
      f"(converged in {solved.iterations} ascent steps)")
best, partition = gw_round(solved.embedding, triangle, num_hyperplanes=100, seed=1)
print(f"best rounded cut: {best:g} with blue set {partition.blue_nodes()}\n")

# Random 3-regular instances: compare 10 GW trials against the exact optimum.
print(f"{'N':>4} {'optimum':>8} {'GW max':>7} {'GW mean':>8} {'ratio':>6}")
for num_nodes in (8, 12, 16, 20):
    graph = generate_regular(num_nodes, 3, seed=num_nodes)
    cut_star, _ = exhaustive_maxcut(graph)
    cuts = gw(graph, trials=10, seed=7)
    print(f"{num_nodes:>4} {cut_star:>8g} {max(cuts):>7g} "
          f"{np.mean(cuts):>8.2f} {max(cuts) / cut_star:>6.3f}")

print("\nEvery ratio sits well above the 0.87856 worst-case guarantee.")
