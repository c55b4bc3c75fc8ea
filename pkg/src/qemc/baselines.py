"""Goemans-Williamson baseline via low-rank relaxation and hyperplane rounding.

The semidefinite relaxation  max sum_e w_e (1 - <v_u, v_v>) / 2  over unit
vectors is solved in factorized form: one unit-norm row per node, rank
ceil(sqrt(2N)) + 1 by default, which is generically high enough for the
factorized landscape to have no spurious local optima.  Projected gradient
ascent with a backtracking line search never decreases the objective;
randomized hyperplane rounding then extracts cuts from the embedding.

The uniform random-partition baseline and the exhaustive oracle are exposed
here as well, so every reference method lives in one namespace.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, sqrt

import numpy as np

from .graphs import Graph, Partition, cut_value, exhaustive_maxcut, random_star_partition
from .seeding import child_rng, derive_seed

__all__ = [
    "Embedding",
    "GwSolveResult",
    "default_rank",
    "gw_solve",
    "gw_round",
    "gw",
    "random_star_cuts",
    "exhaustive_maxcut",
]


def default_rank(num_nodes: int) -> int:
    return ceil(sqrt(2 * num_nodes)) + 1


@dataclass(frozen=True)
class Embedding:
    """Unit-norm vector per node; rows are the factorized relaxation variable."""

    vectors: np.ndarray

    def __post_init__(self):
        vec = np.asarray(self.vectors, dtype=np.float64)
        if vec.ndim != 2:
            raise ValueError("vectors must be a 2-D array (nodes x rank)")
        norms = np.linalg.norm(vec, axis=1)
        if np.any(np.abs(norms - 1.0) > 1e-8):
            raise ValueError("every embedding row must have unit norm")
        vec.setflags(write=False)
        object.__setattr__(self, "vectors", vec)

    @property
    def num_nodes(self) -> int:
        return self.vectors.shape[0]

    @property
    def rank(self) -> int:
        return self.vectors.shape[1]


@dataclass(frozen=True)
class GwSolveResult:
    embedding: Embedding
    relaxation_value: float
    converged: bool
    iterations: int


def _objective(graph, vectors):
    # sum over edges of w_e * (1 - <v_u, v_v>) / 2, evaluated edge-wise
    inner = np.einsum("ij,ij->i", vectors[graph.edge_u], vectors[graph.edge_v])
    return 0.5 * float(graph.edge_w @ (1.0 - inner))


def _project_rows(grad, vectors):
    radial = np.sum(grad * vectors, axis=1, keepdims=True)
    return grad - radial * vectors


def _normalize_rows(vectors):
    return vectors / np.linalg.norm(vectors, axis=1, keepdims=True)


def gw_solve(graph: Graph, rank: int | None = None, max_iterations: int = 5000,
             tolerance: float = 1e-6, seed=0) -> GwSolveResult:
    """Maximize the relaxation by Riemannian gradient ascent on unit rows.

    Stops when the projected gradient's Frobenius norm drops below
    ``tolerance`` or after ``max_iterations``; a run that hits the iteration
    cap is returned as-is with ``converged=False`` rather than raised.
    """
    if rank is None:
        rank = default_rank(graph.num_nodes)
    if rank < 2:
        raise ValueError("rank must be at least 2")
    weight_matrix = graph.adjacency_matrix()
    rng = child_rng(seed, "gw_solve")
    vectors = _normalize_rows(rng.normal(size=(graph.num_nodes, rank)))

    value = _objective(graph, vectors)
    converged = False
    iterations = 0
    prev_vectors = prev_grad = None
    for iterations in range(1, max_iterations + 1):
        grad = -0.5 * (weight_matrix @ vectors)   # euclidean gradient of the objective
        grad = _project_rows(grad, vectors)
        grad_norm = float(np.linalg.norm(grad))
        if grad_norm < tolerance:
            converged = True
            iterations -= 1
            break
        # Backtracking line search, started from a Barzilai-Borwein guess once
        # curvature information exists; halving guarantees monotone ascent.
        step = 1.0
        if prev_grad is not None:
            dg = grad - prev_grad
            denom = float(np.sum(dg * dg))
            if denom > 0.0:
                step = abs(float(np.sum((vectors - prev_vectors) * dg))) / denom
                step = min(max(step, 1e-9), 1e6)
        prev_vectors, prev_grad = vectors, grad
        accepted = False
        while step > 1e-14:
            candidate = _normalize_rows(vectors + step * grad)
            cand_value = _objective(graph, candidate)
            if cand_value >= value - 1e-12:
                accepted = True
                break
            step *= 0.5
        if not accepted:
            break  # line search stalled; keep the best iterate, flag below
        vectors = candidate
        value = cand_value
    return GwSolveResult(Embedding(vectors), value, converged, iterations)


def gw_round(embedding: Embedding, graph: Graph, num_hyperplanes: int = 100,
             seed=0) -> tuple[float, Partition]:
    """Best cut over random-hyperplane roundings of an embedding.

    Each hyperplane is a standard-normal vector r; node i is blue when
    <v_i, r> > 0 and white otherwise (ties to white).  Deterministic per seed.
    """
    if num_hyperplanes < 1:
        raise ValueError("num_hyperplanes must be >= 1")
    if embedding.num_nodes != graph.num_nodes:
        raise ValueError("embedding and graph disagree on node count")
    rng = child_rng(seed, "gw_round")
    normals = rng.normal(size=(num_hyperplanes, embedding.rank))
    sides = (embedding.vectors @ normals.T) > 0          # nodes x hyperplanes
    crossing = sides[graph.edge_u] != sides[graph.edge_v]
    cuts = graph.edge_w @ crossing
    best = int(np.argmax(cuts))
    partition = Partition(sides[:, best].astype(np.uint8))
    return float(cuts[best]), partition


def random_star_cuts(graph: Graph, trials: int, seed=0,
                     blue_count: int | None = None) -> list[float]:
    """Cuts of ``trials`` uniform random partitions with a fixed blue count.

    Defaults to blue_count = N // 2, the same balance assumption the solver
    makes, which beats naive uniform sampling whenever the optimum is roughly
    balanced.  Running maxima of the returned list give a best-so-far curve.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    blue = blue_count if blue_count is not None else graph.num_nodes // 2
    return [cut_value(graph,
                      random_star_partition(graph.num_nodes, blue,
                                            derive_seed(seed, "random_star", trial)))
            for trial in range(trials)]


def gw(graph: Graph, trials: int = 10, seed=0, *, rank: int | None = None,
       num_hyperplanes: int = 100, max_iterations: int = 5000,
       tolerance: float = 1e-6) -> list[float]:
    """Per-trial best GW cuts; each trial is a fresh random-init solve + rounding."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    cuts = []
    for trial in range(trials):
        solved = gw_solve(graph, rank=rank, max_iterations=max_iterations,
                          tolerance=tolerance,
                          seed=derive_seed(seed, "gw", trial, "solve"))
        best, _ = gw_round(solved.embedding, graph, num_hyperplanes=num_hyperplanes,
                           seed=derive_seed(seed, "gw", trial, "round"))
        cuts.append(best)
    return cuts
