"""The qubit-efficient MaxCut algorithm: threshold decoding, cost, training loop.

A graph on N nodes is optimized with ceil(log2 N) qubits.  The measured
probability p(k) of basis state |k> carries node k's color: blue when p(k)
exceeds the threshold 1/(2B), white otherwise, where B is the assumed size of
the blue set.  The cost drives every edge (j, k) toward one endpoint at
probability 0 and the other at 1/B:

    cost = sum over edges  w * [ (|p(j)-p(k)| - 1/B)^2 + (p(j)+p(k) - 1/B)^2 ]

The weight factor is an extension for weighted graphs; unit weights reproduce
the plain sum.  Minimizing with Adam over the circuit angles and decoding the
best histogram seen yields the returned cut.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from . import simulator
from .errors import (
    DegenerateDenominator,
    HistogramTooShort,
    InvalidBlueCount,
    ShapeMismatch,
)
from .graphs import Graph, Partition, cut_value
from .seeding import child_sequence, derive_seed
from .simulator import ANALYTIC, PARAMETER_SHIFT, AnsatzConfig, ProbabilityHistogram

__all__ = [
    "EncodingConfig",
    "OptimizerConfig",
    "RunCounters",
    "RunRecord",
    "decode",
    "cost",
    "cost_gradient_wrt_probs",
    "cost_gradient_params",
    "train",
    "scan_blue_sizes",
    "cut_ratio",
    "rescaled_ratio",
    "default_shots",
]


def default_shots(num_nodes: int) -> int:
    """Default shot budget 3*N^2 for an N-node graph."""
    return 3 * num_nodes * num_nodes


@dataclass(frozen=True)
class EncodingConfig:
    """Probability-threshold encoding: B assumed blue nodes, threshold 1/(2B)."""

    blue_count: int
    num_nodes: int

    def __post_init__(self):
        if self.num_nodes < 2:
            raise InvalidBlueCount("encoding needs at least 2 nodes")
        if not 1 <= self.blue_count <= self.num_nodes // 2:
            raise InvalidBlueCount(
                f"blue_count must be in [1, {self.num_nodes // 2}] "
                f"(the smaller set is blue), got {self.blue_count}")

    @property
    def threshold(self) -> float:
        return 1.0 / (2.0 * self.blue_count)

    @classmethod
    def half(cls, num_nodes: int) -> "EncodingConfig":
        """The B = N/2 default used when nothing is known about the optimum."""
        return cls(num_nodes // 2, num_nodes)


@dataclass(frozen=True)
class OptimizerConfig:
    """Adam hyperparameters and evaluation mode for one training run."""

    step_size: float
    max_iterations: int
    shots: int | None = None              # None = exact probabilities
    gradient_mode: str = ANALYTIC
    seed: int = 0
    beta1: float = 0.9
    beta2: float = 0.99
    epsilon: float = 1e-8

    def __post_init__(self):
        if self.step_size <= 0:
            raise ShapeMismatch("step_size must be positive")
        if self.max_iterations < 0:
            raise ShapeMismatch("max_iterations must be non-negative")
        if self.shots is not None and self.shots < 1:
            raise ShapeMismatch("shots must be a positive integer or None")
        if self.gradient_mode not in (ANALYTIC, PARAMETER_SHIFT):
            raise ShapeMismatch(f"unknown gradient mode {self.gradient_mode!r}")


@dataclass
class RunCounters:
    """Quantum-side resource counters for one run.

    ``gate_applications`` counts gates in executed circuits (gate count per
    execution times executions); classical post-processing such as the
    reverse-sweep gradient is not an execution and does not add to it.
    """

    circuit_executions: int = 0
    shots_total: int = 0
    gate_applications: int = 0


@dataclass(frozen=True, eq=False)
class RunRecord:
    """Per-iteration history and outcome of one training run."""

    costs: np.ndarray
    cuts: np.ndarray
    best_cuts: np.ndarray
    final_params: np.ndarray
    iterations_executed: int
    seed: int
    counters: RunCounters
    graph_num_nodes: int
    graph_num_edges: int
    ansatz: AnsatzConfig
    encoding: EncodingConfig
    optimizer: OptimizerConfig

    @property
    def final_best_cut(self) -> float:
        return float(self.best_cuts[-1]) if self.iterations_executed else 0.0

    def iterations_to_target(self, target_cut: float) -> int | None:
        """Smallest 1-based iteration whose best-so-far cut reaches the target."""
        hits = np.flatnonzero(self.best_cuts >= target_cut)
        return int(hits[0]) + 1 if hits.size else None

    def to_json_dict(self) -> dict:
        return {
            "config": {
                "graph": {"num_nodes": self.graph_num_nodes,
                          "num_edges": self.graph_num_edges},
                "ansatz": {"num_qubits": self.ansatz.num_qubits,
                           "num_layers": self.ansatz.num_layers,
                           "entangler_strides": list(self.ansatz.entangler_strides)},
                "encoding": {"blue_count": self.encoding.blue_count,
                             "num_nodes": self.encoding.num_nodes},
                "optimizer": {"step_size": self.optimizer.step_size,
                              "max_iterations": self.optimizer.max_iterations,
                              "shots": self.optimizer.shots,
                              "gradient_mode": self.optimizer.gradient_mode,
                              "beta1": self.optimizer.beta1,
                              "beta2": self.optimizer.beta2,
                              "epsilon": self.optimizer.epsilon},
            },
            "seed": self.seed,
            "iterations": [
                {"cost": float(c), "cut": float(k), "best_cut": float(b)}
                for c, k, b in zip(self.costs, self.cuts, self.best_cuts)
            ],
            "final_params": [float(x) for x in self.final_params],
            "counters": {
                "circuit_executions": self.counters.circuit_executions,
                "shots_total": self.counters.shots_total,
                "gate_applications": self.counters.gate_applications,
            },
        }


# -- encoding and cost -------------------------------------------------------------


def _check_histogram(histogram: ProbabilityHistogram, num_nodes: int) -> np.ndarray:
    probs = histogram.probs
    if probs.size < num_nodes:
        raise HistogramTooShort(
            f"histogram has {probs.size} entries, graph has {num_nodes} nodes")
    return probs


def decode(histogram: ProbabilityHistogram, encoding: EncodingConfig) -> Partition:
    """Color node k blue iff p(k) strictly exceeds the threshold 1/(2B).

    Histogram entries at indices >= num_nodes are zero padding for graphs
    whose size is not a power of two; they are ignored.
    """
    probs = _check_histogram(histogram, encoding.num_nodes)
    blue = probs[:encoding.num_nodes] > encoding.threshold
    return Partition(blue.astype(np.uint8))


def cost(histogram: ProbabilityHistogram, graph: Graph,
         encoding: EncodingConfig) -> float:
    """Edge-wise mean-squared-error cost; zero exactly when every edge pairs a
    probability-0 endpoint with a probability-1/B endpoint."""
    probs = _check_histogram(histogram, graph.num_nodes)
    pj = probs[graph.edge_u]
    pk = probs[graph.edge_v]
    inv_b = 1.0 / encoding.blue_count
    d = np.abs(pj - pk)
    s = pj + pk
    return float(np.sum(graph.edge_w * ((d - inv_b) ** 2 + (s - inv_b) ** 2)))


def cost_gradient_wrt_probs(histogram: ProbabilityHistogram, graph: Graph,
                            encoding: EncodingConfig) -> np.ndarray:
    """dC/dp(j) for every histogram entry; padded indices get 0.

    At the |p(j)-p(k)| kink the subgradient midpoint sign(0) = 0 is used, so
    symmetric configurations get a vanishing difference term instead of an
    arbitrary sign.
    """
    probs = _check_histogram(histogram, graph.num_nodes)
    pj = probs[graph.edge_u]
    pk = probs[graph.edge_v]
    inv_b = 1.0 / encoding.blue_count
    diff = pj - pk
    sgn = np.sign(diff)
    d_term = 2.0 * (np.abs(diff) - inv_b) * sgn
    s_term = 2.0 * (pj + pk - inv_b)
    grad = np.zeros(probs.size)
    np.add.at(grad, graph.edge_u, graph.edge_w * (d_term + s_term))
    np.add.at(grad, graph.edge_v, graph.edge_w * (-d_term + s_term))
    return grad


def cost_gradient_params(graph: Graph, ansatz: AnsatzConfig,
                         encoding: EncodingConfig, params,
                         histogram: ProbabilityHistogram | None = None) -> np.ndarray:
    """Analytic chain-rule gradient dC/dtheta = (dC/dp) . (dp/dtheta).

    When ``histogram`` is omitted the exact distribution at ``params`` is used
    for the dC/dp factor.
    """
    if histogram is None:
        histogram = simulator.probabilities(ansatz, params)
    weights = cost_gradient_wrt_probs(histogram, graph, encoding)
    return simulator.probability_vjp(ansatz, params, weights)


# -- training ------------------------------------------------------------------------


def train(graph: Graph, ansatz: AnsatzConfig, encoding: EncodingConfig,
          optimizer: OptimizerConfig) -> RunRecord:
    """Optimize the circuit angles with Adam and record the per-iteration history.

    Each iteration evaluates the histogram at the current angles (exact or an
    S-shot sample), records its cost and decoded cut, and takes one Adam step
    from the chain-rule gradient.  Iteration indices count Adam steps starting
    at 1; the pre-initialization state is not recorded.  Deterministic for a
    fixed seed.
    """
    if ansatz.num_qubits != simulator.num_qubits_for(graph.num_nodes):
        raise ShapeMismatch(
            f"ansatz has {ansatz.num_qubits} qubits, graph needs "
            f"{simulator.num_qubits_for(graph.num_nodes)}")
    if encoding.num_nodes != graph.num_nodes:
        raise ShapeMismatch("encoding and graph disagree on num_nodes")

    params = simulator.random_parameters(ansatz, optimizer.seed)
    num_params = ansatz.num_parameters
    gates_per_run = simulator.gate_count(ansatz)
    counters = RunCounters()

    costs = np.empty(optimizer.max_iterations)
    cuts = np.empty(optimizer.max_iterations)
    best_cuts = np.empty(optimizer.max_iterations)

    m = np.zeros(num_params)
    v = np.zeros(num_params)
    best = -np.inf

    for it in range(1, optimizer.max_iterations + 1):
        if optimizer.shots is None:
            hist = simulator.probabilities(ansatz, params)
        else:
            hist = simulator.sample_histogram(
                ansatz, params, optimizer.shots,
                seed=child_sequence(optimizer.seed, "shots", it))
            counters.shots_total += optimizer.shots
        counters.circuit_executions += 1
        counters.gate_applications += gates_per_run

        weights = cost_gradient_wrt_probs(hist, graph, encoding)
        if optimizer.gradient_mode == ANALYTIC:
            grad = simulator.probability_vjp(ansatz, params, weights)
        else:
            jac = simulator.probability_jacobian(
                ansatz, params, PARAMETER_SHIFT, shots=optimizer.shots,
                seed=child_sequence(optimizer.seed, "shift", it))
            grad = jac.T @ weights
            counters.circuit_executions += 2 * num_params
            counters.gate_applications += 2 * num_params * gates_per_run
            if optimizer.shots is not None:
                counters.shots_total += 2 * num_params * optimizer.shots

        costs[it - 1] = cost(hist, graph, encoding)
        cut = cut_value(graph, decode(hist, encoding))
        cuts[it - 1] = cut
        best = max(best, cut)
        best_cuts[it - 1] = best

        m = optimizer.beta1 * m + (1.0 - optimizer.beta1) * grad
        v = optimizer.beta2 * v + (1.0 - optimizer.beta2) * grad * grad
        m_hat = m / (1.0 - optimizer.beta1 ** it)
        v_hat = v / (1.0 - optimizer.beta2 ** it)
        params = params - optimizer.step_size * m_hat / (np.sqrt(v_hat) + optimizer.epsilon)

    return RunRecord(
        costs=costs, cuts=cuts, best_cuts=best_cuts, final_params=params,
        iterations_executed=optimizer.max_iterations, seed=optimizer.seed,
        counters=counters, graph_num_nodes=graph.num_nodes,
        graph_num_edges=graph.num_edges, ansatz=ansatz, encoding=encoding,
        optimizer=optimizer)


def scan_blue_sizes(graph: Graph, ansatz: AnsatzConfig,
                    optimizer: OptimizerConfig, trials_per_blue: int = 1):
    """Train over every blue-set size B = 1 .. floor(N/2) and keep the best.

    Returns ``(blue_count, record)`` for the largest best-so-far cut; ties go
    to the smaller B, whose larger threshold needs fewer shots in practice.
    """
    if trials_per_blue < 1:
        raise ValueError("trials_per_blue must be >= 1")
    best_blue, best_record = None, None
    for blue in range(1, graph.num_nodes // 2 + 1):
        encoding = EncodingConfig(blue, graph.num_nodes)
        for trial in range(trials_per_blue):
            trial_seed = derive_seed(optimizer.seed, "scan_blue", blue, trial)
            cfg = dataclasses.replace(optimizer, seed=trial_seed)
            record = train(graph, ansatz, encoding, cfg)
            if best_record is None or record.final_best_cut > best_record.final_best_cut:
                best_blue, best_record = blue, record
    return best_blue, best_record


# -- quality metrics -----------------------------------------------------------------


def cut_ratio(cut: float, cut_star: float) -> float:
    """Cut divided by the optimal cut."""
    if cut_star <= 0:
        raise DegenerateDenominator("cut_star must be positive")
    return cut / cut_star


def rescaled_ratio(cut: float, cut_star: float, num_edges: int) -> float:
    """(M - 2*Cut) / (M - 2*Cut*): the cut ratio on the signed-energy scale,
    1 at the optimum and 0 for a half-cut."""
    denom = num_edges - 2.0 * cut_star
    if denom == 0:
        raise DegenerateDenominator("num_edges equals twice cut_star")
    return (num_edges - 2.0 * cut) / denom
