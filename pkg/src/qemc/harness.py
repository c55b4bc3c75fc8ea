"""Experiment orchestration: grid searches, multi-instance studies, resource scaling.

Every experiment funnels its randomness through one master seed; per-trial
seeds are derived from (experiment, instance, trial) tag paths, so results are
independent of scheduling and replayable from the master seed alone.  Trials,
grid cells and instances are embarrassingly parallel; ``jobs`` bounds the
worker count (default: available cores) and never changes results.
"""

from __future__ import annotations

import csv
import io
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import baselines, core, simulator
from .core import EncodingConfig, OptimizerConfig, RunRecord
from .graphs import Graph, generate_regular
from .seeding import derive_seed
from .simulator import ANALYTIC, PARAMETER_SHIFT, AnsatzConfig

__all__ = [
    "QemcSettings",
    "GridSpec",
    "GridResult",
    "ScalingRow",
    "StudyResult",
    "ResourceEstimate",
    "grid_search",
    "iterations_to_target",
    "scaling_study",
    "multi_instance_study",
    "resource_estimate",
    "write_csv",
]


def _resolve_jobs(jobs) -> int:
    if jobs is None:
        return max(1, os.cpu_count() or 1)
    return max(1, int(jobs))


def _run_train(args):
    graph, ansatz, encoding, optimizer = args
    return core.train(graph, ansatz, encoding, optimizer)


def _run_gw(args):
    graph, trials, seed, num_hyperplanes = args
    return baselines.gw(graph, trials=trials, seed=seed,
                        num_hyperplanes=num_hyperplanes)


def _map_jobs(fn, items, jobs):
    items = list(items)
    jobs = _resolve_jobs(jobs)
    if jobs == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=min(jobs, len(items))) as pool:
        return list(pool.map(fn, items, chunksize=1))


@dataclass(frozen=True)
class QemcSettings:
    """Hyperparameters held fixed across the trials of one experiment arm."""

    layers: int
    step_size: float
    iterations: int
    shots: int | None = None
    gradient_mode: str | None = None    # None: analytic exact / parameter-shift shots
    blue_count: int | None = None       # None: N // 2
    trials: int = 10

    def resolved_mode(self) -> str:
        if self.gradient_mode is not None:
            return self.gradient_mode
        return PARAMETER_SHIFT if self.shots is not None else ANALYTIC


def _setup(graph: Graph, settings: QemcSettings):
    ansatz = AnsatzConfig(simulator.num_qubits_for(graph.num_nodes), settings.layers)
    blue = settings.blue_count if settings.blue_count is not None else graph.num_nodes // 2
    encoding = EncodingConfig(blue, graph.num_nodes)
    return ansatz, encoding


def _optimizer(settings: QemcSettings, seed: int, *, layers_override=None,
               step_override=None, shots_override="unset") -> OptimizerConfig:
    shots = settings.shots if shots_override == "unset" else shots_override
    mode = settings.gradient_mode
    if mode is None:
        mode = PARAMETER_SHIFT if shots is not None else ANALYTIC
    return OptimizerConfig(
        step_size=step_override if step_override is not None else settings.step_size,
        max_iterations=settings.iterations, shots=shots, gradient_mode=mode,
        seed=seed)


# -- grid search -----------------------------------------------------------------


@dataclass(frozen=True)
class GridSpec:
    """Layer/step-size grid with a trial count and iteration budget per cell."""

    layer_values: tuple[int, ...]
    step_values: tuple[float, ...]
    trials_per_cell: int
    iteration_budget: int

    def __post_init__(self):
        object.__setattr__(self, "layer_values", tuple(self.layer_values))
        object.__setattr__(self, "step_values", tuple(self.step_values))
        if not self.layer_values or not self.step_values:
            raise ValueError("layer_values and step_values must be non-empty")
        if self.trials_per_cell < 1:
            raise ValueError("trials_per_cell must be >= 1")


@dataclass(frozen=True)
class GridResult:
    """Final best cuts per (layers, step_size, trial)."""

    spec: GridSpec
    cuts: np.ndarray            # shape (len(layers), len(steps), trials)
    target: float | None
    min_layers_to_target: int | None

    def cell_mean(self, layers: int, step_size: float) -> float:
        i = self.spec.layer_values.index(layers)
        j = self.spec.step_values.index(step_size)
        return float(self.cuts[i, j].mean())

    def mean_table(self) -> np.ndarray:
        return self.cuts.mean(axis=2)

    def best_cell(self) -> tuple[int, float]:
        """(layers, step_size) of the best cell.

        Selection: the minimum layer count attaining the maximal average cut,
        then the step-size attaining it at that layer count; ties in step-size
        go to the larger value.
        """
        means = self.mean_table()
        top = means.max()
        for i, layers in enumerate(self.spec.layer_values):
            row_best = means[i].max()
            if row_best >= top - 1e-12:
                candidates = [j for j, _ in enumerate(self.spec.step_values)
                              if means[i, j] >= row_best - 1e-12]
                j = max(candidates, key=lambda jj: self.spec.step_values[jj])
                return layers, self.spec.step_values[j]
        raise AssertionError("unreachable: some cell attains the maximum")

    def to_csv_rows(self):
        for i, layers in enumerate(self.spec.layer_values):
            for j, step in enumerate(self.spec.step_values):
                for t in range(self.spec.trials_per_cell):
                    yield (layers, step, t, float(self.cuts[i, j, t]))


def grid_search(graph: Graph, grid: GridSpec, encoding: EncodingConfig, seed=0,
                *, shots: int | None = None, gradient_mode: str | None = None,
                target: float | None = None, jobs=None) -> GridResult:
    """Average final best cut per (layers, step-size) cell.

    Layer counts must be sorted for ``min_layers_to_target``, which reports
    the smallest layer count whose best cell reaches ``target``.
    """
    ansatz_for = {layers: AnsatzConfig(simulator.num_qubits_for(graph.num_nodes), layers)
                  for layers in grid.layer_values}
    mode = gradient_mode or (PARAMETER_SHIFT if shots is not None else ANALYTIC)
    items = []
    for layers in grid.layer_values:
        for step in grid.step_values:
            for trial in range(grid.trials_per_cell):
                optimizer = OptimizerConfig(
                    step_size=step, max_iterations=grid.iteration_budget,
                    shots=shots, gradient_mode=mode,
                    seed=derive_seed(seed, "grid", layers, step, trial))
                items.append((graph, ansatz_for[layers], encoding, optimizer))
    records = _map_jobs(_run_train, items, jobs)
    cuts = np.array([r.final_best_cut for r in records]).reshape(
        len(grid.layer_values), len(grid.step_values), grid.trials_per_cell)

    min_layers = None
    if target is not None:
        means = cuts.mean(axis=2)
        for i, layers in enumerate(sorted(grid.layer_values)):
            row = means[grid.layer_values.index(layers)]
            if row.max() >= target:
                min_layers = layers
                break
    return GridResult(spec=grid, cuts=cuts, target=target,
                      min_layers_to_target=min_layers)


def iterations_to_target(record: RunRecord, target_cut: float) -> int | None:
    """Smallest 1-based iteration whose best-so-far cut reaches the target."""
    return record.iterations_to_target(target_cut)


# -- resource scaling --------------------------------------------------------------


@dataclass(frozen=True)
class ScalingRow:
    num_nodes: int
    axis: str
    minimal_value: float | None
    reached: bool


def default_shot_ladder(num_nodes: int) -> tuple[int, ...]:
    """Shot budgets N, N^1.5, N^2, 2N^2, 3N^2 (deduplicated, ascending)."""
    n = num_nodes
    ladder = [n, round(n ** 1.5), n * n, 2 * n * n, 3 * n * n]
    return tuple(sorted(set(int(s) for s in ladder)))


DEFAULT_LAYER_LADDER = (1, 2, 3, 5, 8, 12, 20, 30, 50, 80, 120)


def scaling_study(graph_family, targets, resource_axis: str,
                  settings: QemcSettings, *, axis_values=None, seed=0,
                  jobs=None) -> list[ScalingRow]:
    """Minimal resource on one axis for the average best cut to reach a target.

    ``resource_axis`` is one of ``layers``, ``shots`` or ``iterations``; other
    hyperparameters stay at the supplied settings.  One target per graph.  An
    unreachable target produces a row with ``reached=False`` instead of
    raising.
    """
    graph_family = list(graph_family)
    targets = list(targets)
    if len(targets) != len(graph_family):
        raise ValueError("need exactly one target per graph")
    if resource_axis not in ("layers", "shots", "iterations"):
        raise ValueError(f"unknown resource axis {resource_axis!r}")

    rows = []
    for index, (graph, target) in enumerate(zip(graph_family, targets)):
        if resource_axis == "layers":
            values = list(axis_values) if axis_values is not None else list(DEFAULT_LAYER_LADDER)
            rows.append(_scan_axis(graph, target, "layers", values, index,
                                   settings, seed, jobs))
        elif resource_axis == "shots":
            values = (list(axis_values) if axis_values is not None
                      else list(default_shot_ladder(graph.num_nodes)))
            rows.append(_scan_axis(graph, target, "shots", values, index,
                                   settings, seed, jobs))
        else:
            rows.append(_iterations_row(graph, target, index, settings, seed, jobs))
    return rows


def _scan_axis(graph, target, axis, values, graph_index, settings, seed, jobs):
    blue = settings.blue_count if settings.blue_count is not None else graph.num_nodes // 2
    encoding = EncodingConfig(blue, graph.num_nodes)
    for value in sorted(int(v) for v in values):
        layers = value if axis == "layers" else settings.layers
        ansatz = AnsatzConfig(simulator.num_qubits_for(graph.num_nodes), layers)
        overrides = {"shots_override": value} if axis == "shots" else {}
        items = [(graph, ansatz, encoding,
                  _optimizer(settings, derive_seed(seed, "scaling", axis, graph_index,
                                                   value, trial), **overrides))
                 for trial in range(settings.trials)]
        records = _map_jobs(_run_train, items, jobs)
        mean_cut = float(np.mean([r.final_best_cut for r in records]))
        if mean_cut >= target:
            return ScalingRow(graph.num_nodes, axis, float(value), True)
    return ScalingRow(graph.num_nodes, axis, None, False)


def _iterations_row(graph, target, graph_index, settings, seed, jobs):
    ansatz, encoding = _setup(graph, settings)
    items = [(graph, ansatz, encoding,
              _optimizer(settings, derive_seed(seed, "scaling", "iterations",
                                               graph_index, trial)))
             for trial in range(settings.trials)]
    records = _map_jobs(_run_train, items, jobs)
    mean_curve = np.mean([r.best_cuts for r in records], axis=0)
    hits = np.flatnonzero(mean_curve >= target)
    if hits.size:
        return ScalingRow(graph.num_nodes, "iterations", float(hits[0] + 1), True)
    return ScalingRow(graph.num_nodes, "iterations", None, False)


# -- multi-instance study ------------------------------------------------------------


@dataclass(frozen=True)
class StudyResult:
    """Iteration-indexed QEMC statistics over many instances, with GW levels.

    ``max_qemc_curve`` averages each instance's best trial; ``avg_qemc_curve``
    averages all trials.  ``max_gw``/``avg_gw`` are the matching GW statistics
    (mean of per-instance max; grand mean).
    """

    num_nodes: int
    degree: int
    num_instances: int
    qemc_trials: int
    gw_trials: int
    iterations: int
    max_qemc_curve: np.ndarray
    avg_qemc_curve: np.ndarray
    max_gw: float
    avg_gw: float
    qemc_final_cuts: np.ndarray     # (instances, qemc_trials)
    gw_cuts: np.ndarray             # (instances, gw_trials)

    def to_csv_rows(self):
        for it in range(self.iterations):
            yield (it + 1, "max_qemc", float(self.max_qemc_curve[it]))
            yield (it + 1, "avg_qemc", float(self.avg_qemc_curve[it]))
            yield (it + 1, "max_gw", self.max_gw)
            yield (it + 1, "avg_gw", self.avg_gw)


def multi_instance_study(num_instances: int, num_nodes: int, degree: int,
                         settings: QemcSettings, gw_trials: int = 10, seed=0,
                         *, gw_hyperplanes: int = 1, jobs=None) -> StudyResult:
    """Generate instances, run QEMC and GW trials on each, aggregate statistics.

    GW trials default to a single hyperplane rounding each, so that the max
    and average GW levels stay distinct trial statistics; raise
    ``gw_hyperplanes`` to stabilize individual trials instead.
    """
    if num_instances < 1 or settings.trials < 1 or gw_trials < 1:
        raise ValueError("num_instances and trial counts must be >= 1")
    instances = [generate_regular(num_nodes, degree,
                                  derive_seed(seed, "study", "instance", i))
                 for i in range(num_instances)]

    items = []
    for i, graph in enumerate(instances):
        ansatz, encoding = _setup(graph, settings)
        for trial in range(settings.trials):
            items.append((graph, ansatz, encoding,
                          _optimizer(settings, derive_seed(seed, "study", "qemc",
                                                           i, trial))))
    records = _map_jobs(_run_train, items, jobs)
    best_curves = np.array([r.best_cuts for r in records]).reshape(
        num_instances, settings.trials, settings.iterations)

    gw_items = [(graph, gw_trials, derive_seed(seed, "study", "gw", i), gw_hyperplanes)
                for i, graph in enumerate(instances)]
    gw_cuts = np.array(_map_jobs(_run_gw, gw_items, jobs))

    return StudyResult(
        num_nodes=num_nodes, degree=degree, num_instances=num_instances,
        qemc_trials=settings.trials, gw_trials=gw_trials,
        iterations=settings.iterations,
        max_qemc_curve=best_curves.max(axis=1).mean(axis=0),
        avg_qemc_curve=best_curves.mean(axis=(0, 1)),
        max_gw=float(gw_cuts.max(axis=1).mean()),
        avg_gw=float(gw_cuts.mean()),
        qemc_final_cuts=best_curves[:, :, -1],
        gw_cuts=gw_cuts)


# -- resource accounting ---------------------------------------------------------------


@dataclass(frozen=True)
class ResourceEstimate:
    """Time-to-solution bookkeeping for one run: TTS = O[(T_C + T_Q) * P * I].

    ``classical_time_proxy`` is the per-evaluation edge count M;
    ``quantum_time_proxy`` is gates x shots (gates alone in exact mode).
    """

    num_parameters: int
    iterations: int
    shots: int | None
    layers: int
    gate_count: int
    circuit_executions: int
    expected_circuit_executions: int
    classical_time_proxy: float
    quantum_time_proxy: float
    tts_proxy: float


def resource_estimate(record: RunRecord) -> ResourceEstimate:
    """Derive the TTS decomposition from a run record and audit its counters.

    The expected execution count is 1 per iteration in analytic mode and
    1 + 2P per iteration under parameter shift.
    """
    ansatz = record.ansatz
    p = ansatz.num_parameters
    gates = simulator.gate_count(ansatz)
    iterations = record.iterations_executed
    per_iteration = 1 if record.optimizer.gradient_mode == ANALYTIC else 1 + 2 * p
    shots = record.optimizer.shots
    t_c = float(record.graph_num_edges)
    t_q = float(gates * (shots if shots is not None else 1))
    return ResourceEstimate(
        num_parameters=p, iterations=iterations, shots=shots,
        layers=ansatz.num_layers, gate_count=gates,
        circuit_executions=record.counters.circuit_executions,
        expected_circuit_executions=per_iteration * iterations,
        classical_time_proxy=t_c, quantum_time_proxy=t_q,
        tts_proxy=(t_c + t_q) * p * iterations)


# -- CSV emission -----------------------------------------------------------------------


def write_csv(path_or_buffer, header, rows, *, comments=()) -> None:
    """CSV file with optional '#'-prefixed comment lines carrying the config."""
    own = isinstance(path_or_buffer, (str, os.PathLike))
    fh = open(path_or_buffer, "w", encoding="utf-8", newline="") if own else path_or_buffer
    try:
        for comment in comments:
            fh.write(f"# {comment}\n")
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    finally:
        if own:
            fh.close()


def csv_text(header, rows, *, comments=()) -> str:
    buf = io.StringIO()
    write_csv(buf, header, rows, comments=comments)
    return buf.getvalue()
