"""Resource scaling and a small multi-instance study against GW.

First: the minimal layer count / iteration count at which the average solver
cut reaches a per-graph target, scanned over small cubic instances.  Second: a
desk-scale variant of the many-instances comparison, averaging best-so-far
curves over instances and trials against the matching GW statistics, with an
SVG chart written next to this script.
"""

import os

import numpy as np

from qemc import (
    QemcSettings,
    exhaustive_maxcut,
    generate_regular,
    gw,
    multi_instance_study,
    scaling_study,
)
from qemc.svg import write_line_chart

# -- resource scaling ---------------------------------------------------------
# Targets are each instance's average GW cut, the usual reference level.
graphs = [generate_regular(n, 3, seed=n) for n in (8, 12, 16)]
targets = [float(np.mean(gw(g, trials=10, seed=9, num_hyperplanes=1)))
           for g in graphs]
print("targets (average GW cut):", [f"{t:.1f}" for t in targets])

settings = QemcSettings(layers=3, step_size=0.9, iterations=150, trials=5)
for axis in ("layers", "iterations"):
    rows = scaling_study(graphs, targets, axis, settings,
                         axis_values=[1, 2, 3, 5] if axis == "layers" else None,
                         seed=21)
    for row in rows:
        value = f"{row.minimal_value:g}" if row.reached else "not reached"
        print(f"  N={row.num_nodes:>3} minimal {row.axis}: {value}")

# -- multi-instance study ------------------------------------------------------
# 4 instances x 5 trials at N=16 keeps this quick; the same call scales to
# hundreds of nodes when given more time.
study = multi_instance_study(num_instances=4, num_nodes=16, degree=3,
                             settings=QemcSettings(layers=3, step_size=0.9,
                                                   iterations=120, trials=5),
                             gw_trials=10, seed=33)
print(f"\nN=16 study: avg QEMC {study.avg_qemc_curve[-1]:.2f} vs "
      f"avg GW {study.avg_gw:.2f}")
print(f"            max QEMC {study.max_qemc_curve[-1]:.2f} vs "
      f"max GW {study.max_gw:.2f}")

chart = os.path.join(os.path.dirname(__file__), "study_curves.svg")
iters = range(1, study.iterations + 1)
write_line_chart(chart,
                 [("avg QEMC", iters, study.avg_qemc_curve),
                  ("max QEMC", iters, study.max_qemc_curve),
                  ("avg GW", iters, [study.avg_gw] * study.iterations),
                  ("max GW", iters, [study.max_gw] * study.iterations)],
                 title="best-so-far cut vs iteration",
                 x_label="iteration", y_label="cut")
print(f"chart written to {chart}")
