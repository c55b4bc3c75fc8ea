"""Hyperparameter grid search: layers versus Adam step size.

Deeper circuits are more expressive but want smaller steps; the grid shows the
trade-off and the selection rule picks the shallowest circuit that attains the
best average cut.  The GW average serves as the target for the minimal layer
count, mirroring how solver resources get compared against the baseline.
"""

import numpy as np

from qemc import (
    EncodingConfig,
    GridSpec,
    exhaustive_maxcut,
    generate_regular,
    grid_search,
    gw,
)

graph = generate_regular(10, 3, seed=3)
cut_star, _ = exhaustive_maxcut(graph)
gw_mean = float(np.mean(gw(graph, trials=10, seed=5, num_hyperplanes=1)))
print(f"10-node cubic instance: optimum {cut_star:g}, average GW cut {gw_mean:.2f}")

grid = GridSpec(layer_values=(1, 2, 3), step_values=(0.5, 0.7, 0.9, 0.99),
                trials_per_cell=5, iteration_budget=150)
result = grid_search(graph, grid, EncodingConfig(5, 10), seed=11,
                     target=gw_mean)

print("\naverage best cut per cell (rows: layers, columns: step size)")
header = "".join(f"{s:>7}" for s in grid.step_values)
print(f"{'':>7}{header}")
for i, layers in enumerate(grid.layer_values):
    row = "".join(f"{v:>7.2f}" for v in result.mean_table()[i])
    print(f"{layers:>7}{row}")

layers, step = result.best_cell()
print(f"\nselected cell: {layers} layer(s) at step size {step:g} "
      f"(mean cut {result.cell_mean(layers, step):.2f})")
print(f"minimal layers to reach the GW average: {result.min_layers_to_target}")
