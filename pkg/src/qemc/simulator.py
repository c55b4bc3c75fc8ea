"""Statevector simulation of the strongly-entangling-layers ansatz.

Circuit layout: starting from |0...0>, one uncounted layer of Hadamards, then
each layer applies a general single-qubit rotation to every qubit followed by
a ring of CNOTs with a per-layer stride.  The rotation convention is

    Rot(phi, theta, omega) = RZ(omega) @ RY(theta) @ RZ(phi)

with phi applied first; step-size recommendations elsewhere in the package
were tuned under this convention and the cyclic stride default, so both are
fixed here rather than left configurable per call.

Basis-state index k uses the standard decimal-to-binary mapping with qubit 0
as the most significant bit.  Parameter vectors are flat arrays of length
3 * num_qubits * num_layers in (layer, qubit, slot) order, slots being
(phi, theta, omega).

All functions are pure: no shared mutable state, safe to call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ShapeMismatch
from .seeding import child_sequence

__all__ = [
    "AnsatzConfig",
    "ProbabilityHistogram",
    "num_qubits_for",
    "default_strides",
    "num_parameters",
    "random_parameters",
    "gate_count",
    "run_circuit",
    "probabilities",
    "sample_histogram",
    "probability_jacobian",
    "probability_vjp",
]

ANALYTIC = "analytic"
PARAMETER_SHIFT = "parameter_shift"

_HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / np.sqrt(2.0)
_MZ = np.array([[-0.5j, 0.0], [0.0, 0.5j]], dtype=np.complex128)   # d/da RZ at a=0
_MY = np.array([[0.0, -0.5], [0.5, 0.0]], dtype=np.complex128)     # d/da RY at a=0


def num_qubits_for(num_nodes: int) -> int:
    """Qubits needed to index ``num_nodes`` basis states: ceil(log2 N)."""
    if num_nodes < 2:
        raise ValueError("num_nodes must be at least 2")
    return (num_nodes - 1).bit_length()


def default_strides(num_qubits: int, num_layers: int) -> tuple[int, ...]:
    """Cyclic entangler strides: layer l (1-based) uses ((l-1) mod (n-1)) + 1.

    A single qubit admits no entanglers, so the list is empty for n = 1.
    """
    if num_qubits < 1:
        raise ValueError("num_qubits must be positive")
    if num_qubits == 1:
        return ()
    return tuple(((l - 1) % (num_qubits - 1)) + 1 for l in range(1, num_layers + 1))


@dataclass(frozen=True)
class AnsatzConfig:
    """Circuit shape: qubit count, layer count and per-layer entangler strides."""

    num_qubits: int
    num_layers: int
    entangler_strides: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ShapeMismatch("num_qubits must be positive")
        if self.num_layers < 0:
            raise ShapeMismatch("num_layers must be non-negative")
        strides = self.entangler_strides
        if strides is None:
            strides = default_strides(self.num_qubits, self.num_layers)
        elif self.num_qubits == 1:
            strides = ()  # a single qubit admits no entanglers
        else:
            strides = tuple(int(r) for r in strides)
            if len(strides) != self.num_layers:
                raise ShapeMismatch("need one stride per layer")
            for r in strides:
                if not 1 <= r <= self.num_qubits - 1:
                    raise ShapeMismatch(
                        f"stride {r} outside [1, {self.num_qubits - 1}]")
        object.__setattr__(self, "entangler_strides", strides)

    @property
    def num_parameters(self) -> int:
        return 3 * self.num_qubits * self.num_layers

    @property
    def dim(self) -> int:
        return 1 << self.num_qubits


@dataclass(frozen=True)
class ProbabilityHistogram:
    """Length-2^n probability distribution; ``shots`` is None for exact values."""

    probs: np.ndarray
    shots: int | None = None

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=np.float64)
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    @property
    def is_exact(self) -> bool:
        return self.shots is None

    def __len__(self):
        return int(self.probs.size)


def num_parameters(config: AnsatzConfig) -> int:
    return config.num_parameters


def random_parameters(config: AnsatzConfig, seed) -> np.ndarray:
    """Uniform [0, 2pi) initialization for every angle (seeded)."""
    rng = np.random.default_rng(child_sequence(seed, "init"))
    return rng.uniform(0.0, 2.0 * np.pi, size=config.num_parameters)


def gate_count(config: AnsatzConfig) -> int:
    """Elementary gates per circuit execution (Hadamards + rotations + CNOTs)."""
    n, layers = config.num_qubits, config.num_layers
    cnots_per_layer = n if n >= 2 else 0
    return n + layers * (n + cnots_per_layer)


# -- gate plan -------------------------------------------------------------------

_OP_H = 0       # (kind, qubit)
_OP_ROT = 1     # (kind, qubit, param_base)
_OP_CNOT = 2    # (kind, permutation)


@lru_cache(maxsize=128)
def _cnot_permutation(num_qubits: int, control: int, target: int) -> np.ndarray:
    idx = np.arange(1 << num_qubits, dtype=np.int64)
    control_bit = 1 << (num_qubits - 1 - control)
    target_bit = 1 << (num_qubits - 1 - target)
    perm = np.where(idx & control_bit, idx ^ target_bit, idx)
    perm.setflags(write=False)
    return perm


@lru_cache(maxsize=128)
def _plan(config: AnsatzConfig) -> tuple:
    n = config.num_qubits
    ops = [(_OP_H, q) for q in range(n)]
    for layer in range(config.num_layers):
        base = 3 * n * layer
        for q in range(n):
            ops.append((_OP_ROT, q, base + 3 * q))
        if n >= 2:
            stride = config.entangler_strides[layer]
            for q in range(n):
                ops.append((_OP_CNOT, _cnot_permutation(n, q, (q + stride) % n)))
    return tuple(ops)


def _rot_matrix(phi: float, theta: float, omega: float) -> np.ndarray:
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    return np.array(
        [[np.exp(-0.5j * (phi + omega)) * c, -np.exp(0.5j * (phi - omega)) * s],
         [np.exp(-0.5j * (phi - omega)) * s, np.exp(0.5j * (phi + omega)) * c]])


def _rot_derivatives(phi, theta, omega):
    """d(Rot)/d(phi), d(Rot)/d(theta), d(Rot)/d(omega) as 2x2 matrices."""
    rz_phi = np.array([[np.exp(-0.5j * phi), 0], [0, np.exp(0.5j * phi)]])
    rz_omega = np.array([[np.exp(-0.5j * omega), 0], [0, np.exp(0.5j * omega)]])
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    ry = np.array([[c, -s], [s, c]], dtype=np.complex128)
    return (rz_omega @ ry @ rz_phi @ _MZ,
            rz_omega @ _MY @ ry @ rz_phi,
            _MZ @ rz_omega @ ry @ rz_phi)


def _apply_single(state: np.ndarray, mat: np.ndarray, qubit: int) -> None:
    """In-place 2x2 gate on ``qubit`` (qubit 0 = most significant bit)."""
    view = state.reshape(1 << qubit, 2, -1)
    upper = view[:, 0, :].copy()
    lower = view[:, 1, :]
    view[:, 0, :] = mat[0, 0] * upper + mat[0, 1] * lower
    view[:, 1, :] = mat[1, 0] * upper + mat[1, 1] * lower


def _check_params(config: AnsatzConfig, params) -> np.ndarray:
    p = np.asarray(params, dtype=np.float64).reshape(-1)
    if p.size != config.num_parameters:
        raise ShapeMismatch(
            f"expected {config.num_parameters} parameters, got {p.size}")
    return p


def _run(config: AnsatzConfig, params: np.ndarray) -> np.ndarray:
    state = np.zeros(config.dim, dtype=np.complex128)
    state[0] = 1.0
    for op in _plan(config):
        kind = op[0]
        if kind == _OP_H:
            _apply_single(state, _HADAMARD, op[1])
        elif kind == _OP_ROT:
            base = op[2]
            _apply_single(state, _rot_matrix(*params[base:base + 3]), op[1])
        else:
            state = state[op[1]]
    return state


def run_circuit(config: AnsatzConfig, params) -> np.ndarray:
    """Statevector prepared by the ansatz: complex array of length 2^n."""
    return _run(config, _check_params(config, params))


def probabilities(config: AnsatzConfig, params) -> ProbabilityHistogram:
    """Exact measurement distribution |amplitude|^2."""
    state = run_circuit(config, params)
    return ProbabilityHistogram(np.abs(state) ** 2, shots=None)


def sample_histogram(config: AnsatzConfig, params, shots: int, seed) -> ProbabilityHistogram:
    """Empirical distribution from a multinomial draw of ``shots`` samples."""
    if shots < 1:
        raise ValueError("shots must be a positive integer")
    exact = probabilities(config, params).probs
    rng = np.random.default_rng(seed if isinstance(seed, np.random.SeedSequence)
                                else child_sequence(seed, "sample"))
    counts = rng.multinomial(shots, exact / exact.sum())
    return ProbabilityHistogram(counts / shots, shots=shots)


# -- differentiation ---------------------------------------------------------------


def probability_vjp(config: AnsatzConfig, params, weights) -> np.ndarray:
    """Vector-Jacobian product  g[i] = sum_k weights[k] * d p(k) / d theta[i].

    One reverse sweep uncomputes the circuit gate by gate, so the cost is
    proportional to the gate count rather than gates x parameters.  This is
    the workhorse behind analytic training gradients.
    """
    params = _check_params(config, params)
    w = np.asarray(weights, dtype=np.float64).reshape(-1)
    if w.size != config.dim:
        raise ShapeMismatch(f"expected {config.dim} weights, got {w.size}")
    grad = np.zeros(config.num_parameters)
    psi = _run(config, params)
    lam = w * psi
    state = psi.copy()
    for op in reversed(_plan(config)):
        kind = op[0]
        if kind == _OP_H:
            _apply_single(state, _HADAMARD, op[1])
            _apply_single(lam, _HADAMARD, op[1])
        elif kind == _OP_CNOT:
            state = state[op[1]]
            lam = lam[op[1]]
        else:
            qubit, base = op[1], op[2]
            rot = _rot_matrix(*params[base:base + 3])
            inv = rot.conj().T
            _apply_single(state, inv, qubit)
            for slot, dmat in enumerate(_rot_derivatives(*params[base:base + 3])):
                shifted = state.copy()
                _apply_single(shifted, dmat, qubit)
                grad[base + slot] = 2.0 * np.real(np.vdot(lam, shifted))
            _apply_single(lam, inv, qubit)
    return grad


def _jacobian_analytic(config: AnsatzConfig, params: np.ndarray) -> np.ndarray:
    plan = _plan(config)
    psi = _run(config, params)
    jac = np.empty((config.dim, config.num_parameters))
    # Forward pass storing the state entering each rotation gate.
    entries = []  # (plan position, qubit, param base, state before gate)
    state = np.zeros(config.dim, dtype=np.complex128)
    state[0] = 1.0
    for pos, op in enumerate(plan):
        kind = op[0]
        if kind == _OP_H:
            _apply_single(state, _HADAMARD, op[1])
        elif kind == _OP_ROT:
            entries.append((pos, op[1], op[2], state.copy()))
            _apply_single(state, _rot_matrix(*params[op[2]:op[2] + 3]), op[1])
        else:
            state = state[op[1]]
    for pos, qubit, base, before in entries:
        for slot, dmat in enumerate(_rot_derivatives(*params[base:base + 3])):
            dstate = before.copy()
            _apply_single(dstate, dmat, qubit)
            for op in plan[pos + 1:]:
                kind = op[0]
                if kind == _OP_H:
                    _apply_single(dstate, _HADAMARD, op[1])
                elif kind == _OP_ROT:
                    _apply_single(dstate, _rot_matrix(*params[op[2]:op[2] + 3]), op[1])
                else:
                    dstate = dstate[op[1]]
            jac[:, base + slot] = 2.0 * np.real(np.conj(psi) * dstate)
    return jac


def _jacobian_parameter_shift(config, params, shots, seed):
    def evaluate(p, tag):
        if shots is None:
            return probabilities(config, p).probs
        return sample_histogram(config, p, shots,
                                seed=child_sequence(seed, "shift", *tag)).probs

    jac = np.empty((config.dim, config.num_parameters))
    for i in range(config.num_parameters):
        shifted = params.copy()
        shifted[i] += np.pi / 2.0
        plus = evaluate(shifted, (i, "+"))
        shifted[i] -= np.pi
        minus = evaluate(shifted, (i, "-"))
        jac[:, i] = (plus - minus) / 2.0
    return jac


def probability_jacobian(config: AnsatzConfig, params, mode: str = ANALYTIC,
                         *, shots: int | None = None, seed=None) -> np.ndarray:
    """Matrix of d p(k) / d theta[i], shape (2^n, 3nL).

    ``analytic`` differentiates through the statevector.  ``parameter_shift``
    uses two evaluations per parameter at theta[i] +- pi/2, exact by the shift
    rule because every angle parameterizes a Pauli rotation; with a ``shots``
    budget the two evaluations are sampled instead of exact.
    """
    params = _check_params(config, params)
    if mode == ANALYTIC:
        if shots is not None:
            raise ValueError("analytic mode does not take a shot budget")
        return _jacobian_analytic(config, params)
    if mode == PARAMETER_SHIFT:
        if shots is not None and seed is None:
            raise ValueError("sampled parameter shift needs a seed")
        return _jacobian_parameter_shift(config, params, shots, seed)
    raise ValueError(f"unknown jacobian mode {mode!r}")
