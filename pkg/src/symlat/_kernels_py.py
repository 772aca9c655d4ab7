"""Pure numpy statevector kernels (fallback backend).

Same contract as the compiled module symlat._kernels: states are contiguous
complex128 arrays of length 2^n, qubit q toggles bit q of the basis index
(little endian), and all gate application is in place.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"


def apply_1q(state: np.ndarray, qubit: int, m00: complex, m01: complex,
             m10: complex, m11: complex) -> None:
    """In-place single-qubit gate with matrix [[m00, m01], [m10, m11]]."""
    v = state.reshape(-1, 2, 1 << qubit)
    a = v[:, 0, :].copy()
    b = v[:, 1, :]
    v[:, 0, :] = m00 * a + m01 * b
    v[:, 1, :] = m10 * a + m11 * b


def apply_cnot(state: np.ndarray, control: int, target: int) -> None:
    """In-place controlled-NOT."""
    lo, hi = (control, target) if control < target else (target, control)
    v = state.reshape(-1, 2, 1 << (hi - lo - 1), 2, 1 << lo)
    if control == hi:
        tmp = v[:, 1, :, 0, :].copy()
        v[:, 1, :, 0, :] = v[:, 1, :, 1, :]
        v[:, 1, :, 1, :] = tmp
    else:
        tmp = v[:, 0, :, 1, :].copy()
        v[:, 0, :, 1, :] = v[:, 1, :, 1, :]
        v[:, 1, :, 1, :] = tmp


def expectation_diag(state: np.ndarray, diag: np.ndarray) -> float:
    """<state| D |state> for a real diagonal observable D."""
    probs = state.real * state.real + state.imag * state.imag
    return float(probs @ diag)


def adjoint_rot_step(psi: np.ndarray, lam: np.ndarray, qubit: int, kind: int,
                     theta: float) -> float:
    """One reverse-sweep step for a rotation gate: returns the gradient
    entry Re <lam| U(pi) |psi> and unapplies U(theta) from both states.

    kind 0 is RY, kind 1 is RZ; the gradient uses the pre-update values
    (U(theta+pi) U(-theta) = U(pi) for same-axis rotations).
    """
    pv = psi.reshape(-1, 2, 1 << qubit)
    lv = lam.reshape(-1, 2, 1 << qubit)
    a, b = pv[:, 0, :], pv[:, 1, :]
    la, lb = lv[:, 0, :], lv[:, 1, :]
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    if kind == 0:
        grad = float(np.real(np.vdot(lb, a) - np.vdot(la, b)))
        na, nb = c * a + s * b, c * b - s * a
        pv[:, 0, :], pv[:, 1, :] = na, nb
        nla, nlb = c * la + s * lb, c * lb - s * la
        lv[:, 0, :], lv[:, 1, :] = nla, nlb
    else:
        grad = float(np.imag(np.vdot(la, a)) - np.imag(np.vdot(lb, b)))
        ph = complex(c, s)
        pv[:, 0, :] = ph * a
        pv[:, 1, :] = np.conj(ph) * b
        lv[:, 0, :] = ph * la
        lv[:, 1, :] = np.conj(ph) * lb
    return grad


def overlap_1q(bra: np.ndarray, ket: np.ndarray, qubit: int, m00: complex,
               m01: complex, m10: complex, m11: complex) -> complex:
    """<bra| M_qubit |ket> without materializing the gated state."""
    kv = ket.reshape(-1, 2, 1 << qubit)
    bv = bra.reshape(-1, 2, 1 << qubit)
    a = kv[:, 0, :]
    b = kv[:, 1, :]
    top = np.vdot(bv[:, 0, :], m00 * a + m01 * b)
    bot = np.vdot(bv[:, 1, :], m10 * a + m11 * b)
    return complex(top + bot)
