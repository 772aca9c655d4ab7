"""Qubit encoding of integer coefficients and diagonal energy tables.

Each integer variable occupies one register of K qubits and takes values in
[-2^(K-1), 2^(K-1)-1]; register i owns qubits [i*K, (i+1)*K), least
significant qubit first.  A quadratic form over d such variables becomes a
diagonal Hamiltonian on d*K qubits, with the all-zero integer vector
penalized by the G_00 entry of the originating lattice so the trivial
solution stops being the ground state.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .constraints import ConstraintsMatrix
from .exceptions import EmptyKernelError, ResourceLimitError

MAX_TABLE_QUBITS = 24
_CHUNK = 1 << 16


@dataclass(frozen=True)
class QubitLayout:
    registers: int
    bits_per_register: int

    def __post_init__(self) -> None:
        if not 1 <= self.bits_per_register <= 8:
            raise ValueError("bits_per_register must be in [1, 8]")
        if self.total_qubits > MAX_TABLE_QUBITS:
            raise ResourceLimitError(
                f"{self.total_qubits} qubits exceed the {MAX_TABLE_QUBITS}-qubit simulator bound")

    @property
    def total_qubits(self) -> int:
        return self.registers * self.bits_per_register


@dataclass(frozen=True)
class ReducedGram:
    """Quadratic form F = A^T G A of the problem restricted to a kernel."""

    entries: np.ndarray = field(repr=False)
    gram: np.ndarray = field(repr=False)
    matrix: ConstraintsMatrix = field(repr=False)


def reduce_gram(g: np.ndarray, a: ConstraintsMatrix) -> ReducedGram:
    """Contract the Gram matrix with a constraints matrix: F = A^T G A."""
    g = np.asarray(g, dtype=float)
    if a.cols == 0:
        raise EmptyKernelError("constraints matrix has no columns; nothing to reduce")
    if g.shape != (a.dim, a.dim):
        raise ValueError(f"dimension mismatch: G is {g.shape}, A has {a.dim} rows")
    f = a.entries.T @ g @ a.entries
    f.setflags(write=False)
    return ReducedGram(entries=f, gram=g, matrix=a)


def decode_register(bits: str) -> int:
    """Integer value of one register from its bit string.

    The string is ordinary binary (most significant qubit leftmost); the
    encoded value is -2^(K-1) + int(bits, 2), a bijection onto
    [-2^(K-1), 2^(K-1)-1].
    """
    k = len(bits)
    if k == 0 or any(c not in "01" for c in bits):
        raise ValueError(f"register bits must be a nonempty 0/1 string, got {bits!r}")
    return -(1 << (k - 1)) + int(bits, 2)


def decode_indices(indices: np.ndarray, layout: QubitLayout) -> np.ndarray:
    """Vectorized decode of basis-state indices to integer rows.

    Column i holds the value of register i (qubit i*K is the least
    significant bit of that register).
    """
    k = layout.bits_per_register
    shifts = np.arange(layout.registers, dtype=np.int64) * k
    mask = (1 << k) - 1
    return ((np.asarray(indices, dtype=np.int64)[:, None] >> shifts) & mask) - (1 << (k - 1))


def zero_state_index(layout: QubitLayout) -> int:
    """Basis-state index whose registers all decode to the integer 0."""
    k = layout.bits_per_register
    reg = 1 << (k - 1)
    return sum(reg << (i * k) for i in range(layout.registers))


def quadratic_energies(form: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """Row-wise m^T F m for a batch of integer coefficient rows."""
    c = coeffs.astype(float)
    return np.einsum("bi,ij,bj->b", c, form, c, optimize=True)


@dataclass(frozen=True)
class DiagonalHamiltonian:
    layout: QubitLayout
    form: np.ndarray = field(repr=False)
    penalty: float

    def energy(self, m: np.ndarray) -> float:
        m = np.asarray(m)
        if not m.any():
            return self.penalty
        return float(m @ self.form @ m)


def build_hamiltonian(form: np.ndarray, k: int, penalty: float) -> DiagonalHamiltonian:
    """Diagonal Hamiltonian of a quadratic form with the zero-state penalty.

    `form` is either the full Gram matrix (d = N registers) or a reduced
    F = A^T G A (d = M registers); `penalty` is the G_00 entry of the
    originating lattice in both cases.
    """
    form = np.asarray(form, dtype=float)
    layout = QubitLayout(registers=form.shape[0], bits_per_register=k)
    return DiagonalHamiltonian(layout=layout, form=form, penalty=float(penalty))


def energy_table(h: DiagonalHamiltonian) -> np.ndarray:
    """Dense energy-per-basis-state table of length 2^(d*K).

    Built in chunks so the peak memory stays at the table itself plus one
    decode block.
    """
    total = h.layout.total_qubits
    if total > MAX_TABLE_QUBITS:
        raise ResourceLimitError(f"energy table would need 2^{total} entries")
    size = 1 << total
    table = np.empty(size, dtype=float)
    for start in range(0, size, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, size), dtype=np.int64)
        table[start:start + idx.size] = quadratic_energies(h.form, decode_indices(idx, h.layout))
    table[zero_state_index(h.layout)] = h.penalty
    table.setflags(write=False)
    return table
