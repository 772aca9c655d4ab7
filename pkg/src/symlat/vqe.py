"""Noiseless statevector VQE over diagonal Hamiltonians.

The ansatz is the standard hardware-efficient circuit: per layer, RY then RZ
rotations on every qubit followed by a circular ladder of CNOTs.  Gradients
are exact: they equal the parameter-shift values and are computed in one
reverse (adjoint) sweep per iteration, which is what makes 18-qubit runs
affordable.  The classical loop is Adam with a decaying step schedule, fully
deterministic in (seed, budget); the best-seen parameters win, so the final
expectation never exceeds the initial one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .backend import adjoint_rot_step, apply_1q, apply_cnot, expectation_diag
from .constraints import ConstraintsMatrix
from .hamiltonian import (build_hamiltonian, decode_indices, energy_table,
                          reduce_gram)

DEFAULT_LAYERS = 3
DEFAULT_BUDGET = 500
DEFAULT_STEP = 0.3
DEFAULT_DECAY = 0.02
_ADAM_BETA1 = 0.9
_ADAM_BETA2 = 0.999
_ADAM_EPS = 1e-8


@dataclass(frozen=True)
class AnsatzSpec:
    """Shape of the layered RY/RZ + CNOT-ring circuit."""

    qubits: int
    layers: int = DEFAULT_LAYERS

    def __post_init__(self) -> None:
        if self.qubits < 1 or self.layers < 1:
            raise ValueError("qubits and layers must be positive")

    @property
    def parameter_count(self) -> int:
        return 2 * self.qubits * self.layers


@dataclass(frozen=True)
class VqeResult:
    """Outcome of one optimization run.

    best_bits is the argmax-probability basis state written as an ordinary
    binary string (qubit n-1 leftmost, qubit 0 rightmost), so
    int(best_bits, 2) == best_index.  expectation_trace holds the expectation
    value at every visited parameter vector, initial point first.
    """

    best_index: int
    best_bits: str
    energy: float
    expectation_trace: np.ndarray = field(repr=False)
    qubits_used: int
    seed: int
    decoded: np.ndarray | None = None
    lattice_vector: np.ndarray | None = None


def zero_state(n: int) -> np.ndarray:
    state = np.zeros(1 << n, dtype=np.complex128)
    state[0] = 1.0
    return state


def _ry(theta: float) -> tuple[complex, complex, complex, complex]:
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    return (complex(c), complex(-s), complex(s), complex(c))


def _rz(theta: float) -> tuple[complex, complex, complex, complex]:
    return (complex(math.cos(theta / 2.0), -math.sin(theta / 2.0)), 0j, 0j,
            complex(math.cos(theta / 2.0), math.sin(theta / 2.0)))


_ROTATIONS = {"ry": _ry, "rz": _rz}


def apply_gate(state: np.ndarray, gate: tuple) -> np.ndarray:
    """Apply one gate, returning a new state.

    Gates are ("ry", theta, qubit), ("rz", theta, qubit) or
    ("cnot", control, target); qubit indices are little endian.
    """
    n_qubits = int(np.log2(state.size))
    out = np.array(state, dtype=np.complex128)
    kind = gate[0]
    if kind in _ROTATIONS:
        _, theta, qubit = gate
        if not 0 <= qubit < n_qubits:
            raise ValueError(f"qubit {qubit} out of range")
        apply_1q(out, qubit, *_ROTATIONS[kind](theta))
    elif kind == "cnot":
        _, control, target = gate
        if not (0 <= control < n_qubits and 0 <= target < n_qubits) or control == target:
            raise ValueError(f"bad CNOT wires ({control}, {target})")
        apply_cnot(out, control, target)
    else:
        raise ValueError(f"unknown gate {kind!r}")
    return out


def ansatz_structure(spec: AnsatzSpec) -> list[tuple]:
    """Gate sequence with parameter slots: ("ry"|"rz", qubit, param_index)
    rotations and ("cnot", control, target) entanglers."""
    gates: list[tuple] = []
    n = spec.qubits
    for layer in range(spec.layers):
        base = layer * 2 * n
        for q in range(n):
            gates.append(("ry", q, base + q))
        for q in range(n):
            gates.append(("rz", q, base + n + q))
        if n >= 2:
            for q in range(n - 1):
                gates.append(("cnot", q, q + 1))
            gates.append(("cnot", n - 1, 0))
    return gates


def run_circuit(spec: AnsatzSpec, params: np.ndarray) -> np.ndarray:
    """Statevector of the ansatz at the given parameters, from |0..0>."""
    params = np.asarray(params, dtype=float)
    if params.shape != (spec.parameter_count,):
        raise ValueError(f"expected {spec.parameter_count} parameters, got {params.shape}")
    state = zero_state(spec.qubits)
    for gate in ansatz_structure(spec):
        if gate[0] == "cnot":
            apply_cnot(state, gate[1], gate[2])
        else:
            apply_1q(state, gate[1], *_ROTATIONS[gate[0]](params[gate[2]]))
    return state


def expectation(state: np.ndarray, table: np.ndarray) -> float:
    """Expectation of a diagonal observable given as a dense table."""
    if state.size != table.size:
        raise ValueError("state and table lengths differ")
    return expectation_diag(state, table)


def energy_and_gradient(spec: AnsatzSpec, params: np.ndarray,
                        table: np.ndarray) -> tuple[float, np.ndarray]:
    """Expectation and its exact gradient in one forward + one adjoint sweep.

    Uses d/dt U(t) = U(t + pi) / 2 for both rotation gates, so each gradient
    entry is Re <lambda| U_kind(pi) |psi> with lambda the back-propagated
    observable state.  Values agree with the parameter-shift rule to
    round-off.
    """
    gates = ansatz_structure(spec)
    psi = zero_state(spec.qubits)
    for gate in gates:
        if gate[0] == "cnot":
            apply_cnot(psi, gate[1], gate[2])
        else:
            apply_1q(psi, gate[1], *_ROTATIONS[gate[0]](params[gate[2]]))
    energy = expectation_diag(psi, table)
    lam = psi * table
    grad = np.zeros(spec.parameter_count)
    for gate in reversed(gates):
        if gate[0] == "cnot":
            apply_cnot(psi, gate[1], gate[2])
            apply_cnot(lam, gate[1], gate[2])
            continue
        kind, qubit, pidx = gate
        grad[pidx] = adjoint_rot_step(psi, lam, qubit, 0 if kind == "ry" else 1,
                                      params[pidx])
    return energy, grad


def parameter_shift_gradient(spec: AnsatzSpec, params: np.ndarray,
                             table: np.ndarray) -> np.ndarray:
    """Reference gradient via the two-point parameter-shift rule.

    Costs two circuit evaluations per parameter; kept as the independent
    check of energy_and_gradient.
    """
    params = np.asarray(params, dtype=float)
    grad = np.zeros(spec.parameter_count)
    for k in range(spec.parameter_count):
        shifted = params.copy()
        shifted[k] = params[k] + math.pi / 2.0
        plus = expectation(run_circuit(spec, shifted), table)
        shifted[k] = params[k] - math.pi / 2.0
        minus = expectation(run_circuit(spec, shifted), table)
        grad[k] = 0.5 * (plus - minus)
    return grad


def _select_output(state: np.ndarray, rng: np.random.Generator,
                   shots: int | None) -> int:
    probs = state.real * state.real + state.imag * state.imag
    if shots is None:
        return int(np.argmax(probs))
    outcomes = rng.choice(probs.size, size=shots, p=probs / probs.sum())
    counts = np.bincount(outcomes, minlength=probs.size)
    return int(np.argmax(counts))


def optimize(table: np.ndarray, spec: AnsatzSpec, seed: int,
             budget: int = DEFAULT_BUDGET, step: float = DEFAULT_STEP,
             decay: float = DEFAULT_DECAY, shots: int | None = None) -> VqeResult:
    """Minimize the diagonal expectation over the ansatz parameters.

    Parameters start uniform in [0, 2*pi); each of the `budget` iterations
    takes one Adam step with learning rate step/(1 + decay*t).  The
    best-seen parameters win, so the final expectation never exceeds the
    initial one.  The output basis state is the argmax-probability state of
    the final statevector, or the modal outcome of `shots` seeded samples
    when a shot count is given.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    if table.size != 1 << spec.qubits:
        raise ValueError("table length does not match the ansatz width")
    rng = np.random.default_rng(seed)
    params = rng.uniform(0.0, 2.0 * math.pi, size=spec.parameter_count)
    first = np.zeros_like(params)
    second = np.zeros_like(params)
    trace = np.empty(budget + 1)
    best_params = params.copy()
    best_value = math.inf
    for t in range(budget):
        value, grad = energy_and_gradient(spec, params, table)
        trace[t] = value
        if value < best_value:
            best_value = value
            best_params = params.copy()
        first = _ADAM_BETA1 * first + (1.0 - _ADAM_BETA1) * grad
        second = _ADAM_BETA2 * second + (1.0 - _ADAM_BETA2) * grad * grad
        corrected = first / (1.0 - _ADAM_BETA1 ** (t + 1))
        scale = np.sqrt(second / (1.0 - _ADAM_BETA2 ** (t + 1))) + _ADAM_EPS
        params -= (step / (1.0 + decay * t)) * corrected / scale
    final_state = run_circuit(spec, params)
    trace[budget] = expectation(final_state, table)
    if trace[budget] < best_value:
        best_value = trace[budget]
        best_params = params
    state = run_circuit(spec, best_params)
    best_index = _select_output(state, rng, shots)
    trace.setflags(write=False)
    return VqeResult(best_index=best_index,
                     best_bits=format(best_index, f"0{spec.qubits}b"),
                     energy=float(table[best_index]),
                     expectation_trace=trace,
                     qubits_used=spec.qubits,
                     seed=seed)


def run_vqe(g: np.ndarray, a: ConstraintsMatrix | None, k: int, seed: int,
            budget: int = DEFAULT_BUDGET, layers: int = DEFAULT_LAYERS,
            step: float = DEFAULT_STEP, decay: float = DEFAULT_DECAY,
            shots: int | None = None) -> VqeResult:
    """Full pipeline: encode the (possibly reduced) problem and optimize.

    With a constraints matrix the search runs over M registers of K qubits
    and the decoded register vector m maps back to the lattice coefficients
    n = A m; without one it runs over all N registers directly.  The zero
    state carries the G_00 penalty in both variants.
    """
    g = np.asarray(g, dtype=float)
    if a is None:
        form = g
    else:
        form = reduce_gram(g, a).entries
    ham = build_hamiltonian(form, k, penalty=float(g[0, 0]))
    table = energy_table(ham)
    spec = AnsatzSpec(qubits=ham.layout.total_qubits, layers=layers)
    result = optimize(table, spec, seed=seed, budget=budget, step=step,
                      decay=decay, shots=shots)
    decoded = decode_indices(np.array([result.best_index]), ham.layout)[0]
    lattice_vector = decoded if a is None else a.entries @ decoded
    return replace(result, decoded=decoded, lattice_vector=lattice_vector)
