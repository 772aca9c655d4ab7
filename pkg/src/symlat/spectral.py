"""Fourier eigenbases of the shift operators and Gram spectra.

The shift operators of cyclic and nega-cyclic lattices are diagonalized by
fixed, lattice-independent Fourier matrices.  Any commuting Gram matrix is
diagonal in that basis, which splits the squared length of a lattice vector
into non-negative per-mode contributions E_n = sum_q g_q |s_q(n)|^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import NotStructuredError
from .lattice import SymmetryKind

OFFDIAG_RTOL = 1e-8


@dataclass(frozen=True)
class FourierBasis:
    kind: SymmetryKind
    entries: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class SpectralData:
    """Gram eigenvalues indexed by Fourier mode, plus the dominant mode."""

    eigenvalues: np.ndarray
    principal: int


def fourier_basis(kind: SymmetryKind, n: int) -> FourierBasis:
    """Eigenvector matrix U of the shift operator, rows indexed by mode q.

    Cyclic:      U[q, p] = exp(-2*pi*i*p*q/N) / sqrt(N)
    Nega-cyclic: U[q, p] = exp(-pi*i*p*(2q+1)/N) / sqrt(N)
    """
    if n < 2:
        raise ValueError("dimension must be at least 2")
    p = np.arange(n)
    q = np.arange(n)[:, None]
    if kind is SymmetryKind.CYCLIC:
        phase = -2j * np.pi * p * q / n
    else:
        phase = -1j * np.pi * p * (2 * q + 1) / n
    u = np.exp(phase) / np.sqrt(n)
    u.setflags(write=False)
    return FourierBasis(kind=kind, entries=u)


def eigenvalues(g: np.ndarray, u: FourierBasis) -> SpectralData:
    """Extract the Gram eigenvalues g_q = (U G U^dag)_qq.

    Uses the analytic basis rather than a dense eigensolver so that each
    eigenvalue stays paired with its Fourier mode index.  Raises
    NotStructuredError when G does not commute with the shift (off-diagonal
    residual above OFFDIAG_RTOL relative to the largest eigenvalue).
    """
    g = np.asarray(g, dtype=float)
    if g.shape != (u.dim, u.dim):
        raise ValueError(f"dimension mismatch: G is {g.shape}, U is {u.dim}x{u.dim}")
    d = u.entries @ g @ u.entries.conj().T
    eig = np.real(np.diag(d)).copy()
    offdiag = d - np.diag(np.diag(d))
    scale = max(float(np.max(np.abs(eig))), np.finfo(float).tiny)
    residual = float(np.max(np.abs(offdiag)))
    if residual > OFFDIAG_RTOL * scale:
        raise NotStructuredError(
            f"Gram matrix is not {u.kind.value}-structured "
            f"(off-diagonal residual {residual:.3e} vs scale {scale:.3e})")
    eig.setflags(write=False)
    # np.argmax returns the first maximal index: smallest-index tie-break.
    return SpectralData(eigenvalues=eig, principal=int(np.argmax(eig)))


def s_value(u: FourierBasis, q: int, n: np.ndarray) -> complex:
    """Eigenvalue s_q(n) = sum_p U[q, p] n_p of mode q on coefficients n."""
    if not 0 <= q < u.dim:
        raise ValueError(f"mode index {q} out of range for dimension {u.dim}")
    n = np.asarray(n)
    if n.size != u.dim:
        raise ValueError("coefficient vector length does not match dimension")
    return complex(u.entries[q] @ n)


def energy_via_spectrum(spec: SpectralData, u: FourierBasis, n: np.ndarray) -> float:
    """Squared vector length from the mode decomposition sum_q g_q |s_q|^2."""
    s = u.entries @ np.asarray(n)
    return float(spec.eigenvalues @ (s.real**2 + s.imag**2))
