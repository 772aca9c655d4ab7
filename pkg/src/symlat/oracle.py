"""Brute-force shortest-vector oracle and principal-kernel statistics.

The oracle scans the full coefficient box [-2^(K-1), 2^(K-1)-1]^N, the same
range the qubit encoding can represent, so oracle minima and energy-table
minima agree exactly.  Kernel statistics ask whether the shortest vector of
a lattice lies in the kernel of the principal mode and how much longer the
best kernel member is otherwise (the gamma ratio).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import ResourceLimitError
from .hamiltonian import QubitLayout, decode_indices, quadratic_energies
from .spectral import FourierBasis, SpectralData

MEMBERSHIP_TOL = 1e-9
_CHUNK = 1 << 18


@dataclass(frozen=True)
class OracleResult:
    shortest: np.ndarray
    length_sq: float
    enumerated: int


@dataclass(frozen=True)
class KernelStats:
    """gamma >= 1 compares the best kernel member against the true shortest
    vector (both as squared lengths); gamma is None when the box holds no
    nonzero kernel member at all."""

    gamma: float | None
    in_kernel: bool
    oracle: OracleResult = field(repr=False)
    kernel_min_length_sq: float | None = None


def _box_layout(n: int, k: int) -> QubitLayout:
    if n * k > 24:
        raise ResourceLimitError(
            f"enumerating 2^{n * k} coefficient vectors exceeds the desk-scale bound")
    return QubitLayout(registers=n, bits_per_register=k)


def _scan_box(g: np.ndarray, k: int):
    """Yield (indices, coeffs, energies) chunks over the whole box."""
    layout = _box_layout(g.shape[0], k)
    size = 1 << layout.total_qubits
    for start in range(0, size, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, size), dtype=np.int64)
        coeffs = decode_indices(idx, layout)
        yield idx, coeffs, quadratic_energies(g, coeffs)


def brute_force_shortest(g: np.ndarray, k: int) -> OracleResult:
    """Exact shortest nonzero coefficient vector within the box.

    Ties are broken toward the lexicographically smallest coefficient tuple,
    which keeps the result independent of scan order.
    """
    g = np.asarray(g, dtype=float)
    best_energy = np.inf
    best_rows: list[np.ndarray] = []
    total = 0
    for _, coeffs, energies in _scan_box(g, k):
        nonzero = np.any(coeffs != 0, axis=1)
        total += int(nonzero.sum())
        masked = np.where(nonzero, energies, np.inf)
        chunk_min = float(masked.min())
        if chunk_min < best_energy:
            best_energy = chunk_min
            best_rows = [coeffs[i] for i in np.flatnonzero(masked == chunk_min)]
        elif chunk_min == best_energy:
            best_rows.extend(coeffs[i] for i in np.flatnonzero(masked == chunk_min))
    shortest = min((tuple(int(v) for v in row) for row in best_rows))
    return OracleResult(shortest=np.array(shortest, dtype=np.int64),
                        length_sq=best_energy, enumerated=total)


def kernel_stats(g: np.ndarray, u: FourierBasis, spec: SpectralData, k: int) -> KernelStats:
    """Principal-kernel membership of the oracle minimizer, plus gamma.

    Membership uses the scale-aware test |s_q*(n)| <= 1e-9 * N * max|n_i|.
    gamma is the squared length of the best in-kernel nonzero box vector
    divided by the oracle's squared length; when the shortest vector itself
    is in the kernel the two minima coincide and gamma is exactly 1.
    """
    g = np.asarray(g, dtype=float)
    n = g.shape[0]
    row = u.entries[spec.principal]
    best_energy = np.inf
    best_rows: list[np.ndarray] = []
    kernel_min = np.inf
    total = 0
    for _, coeffs, energies in _scan_box(g, k):
        nonzero = np.any(coeffs != 0, axis=1)
        total += int(nonzero.sum())
        masked = np.where(nonzero, energies, np.inf)
        chunk_min = float(masked.min())
        if chunk_min < best_energy:
            best_energy = chunk_min
            best_rows = [coeffs[i] for i in np.flatnonzero(masked == chunk_min)]
        elif chunk_min == best_energy:
            best_rows.extend(coeffs[i] for i in np.flatnonzero(masked == chunk_min))
        svals = np.abs(coeffs @ row)
        member = svals <= MEMBERSHIP_TOL * n * np.abs(coeffs).max(axis=1)
        in_k = member & nonzero
        if in_k.any():
            kernel_min = min(kernel_min, float(energies[in_k].min()))
    shortest = np.array(min(tuple(int(v) for v in r) for r in best_rows), dtype=np.int64)
    oracle = OracleResult(shortest=shortest, length_sq=best_energy, enumerated=total)
    s_short = abs(complex(row @ shortest))
    in_kernel = bool(s_short <= MEMBERSHIP_TOL * n * np.abs(shortest).max())
    if not np.isfinite(kernel_min):
        return KernelStats(gamma=None, in_kernel=in_kernel, oracle=oracle)
    # an in-kernel minimizer makes kernel_min the very same float as
    # best_energy, so the ratio is exactly 1.0 in that case
    return KernelStats(gamma=kernel_min / best_energy, in_kernel=in_kernel,
                       oracle=oracle, kernel_min_length_sq=kernel_min)
