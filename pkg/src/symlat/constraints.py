"""Closed-form constraints matrices spanning subspaces of the mode kernels.

Integer vectors n with sum_p U[q, p] n_p = 0 form a lattice; for every
admissible (kind, N, q) there are explicitly constructible subspaces of that
lattice, classified by the greatest common divisor of the mode index with the
dimension.  Each subspace is encoded as an integer matrix A with n = A m for
free integer vectors m, so the quadratic form restricts to A^T G A.

The constructions below all reduce to two lifting primitives:

* replicated block: residue classes modulo a period must share a common
  value, optionally after folding several coordinates into one class sum;
* alternating lift: the folded class sums must follow a sign-alternating
  block pattern, the structure inherited from odd-prime sub-problems.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .lattice import SymmetryKind


class Case(enum.Enum):
    CYC1 = "cyclic-1"
    CYC2 = "cyclic-2"
    CYC3 = "cyclic-3"
    CYC4 = "cyclic-4"
    CYC5 = "cyclic-5"
    NEGA_I = "nega-I"
    NEGA_II = "nega-II"
    NEGA_III = "nega-III"
    NEGA_IV = "nega-IV"


@dataclass(frozen=True)
class CaseLabel:
    """Classification of one (kind, N, q) triple.

    divisor is gcd(N, q) for cyclic lattices and gcd(2N, 2q+1) for
    nega-cyclic ones.
    """

    case: Case
    divisor: int


@dataclass(frozen=True)
class ConstraintsMatrix:
    """Integer N x M matrix A; its columns span a kernel subspace."""

    entries: np.ndarray = field(repr=False)
    origin: str
    operator_index: int
    prime: int | None = None

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]


def prime_factors(n: int) -> tuple[int, ...]:
    """Distinct prime factors of n in increasing order; empty for n = 1."""
    if n < 1:
        raise ValueError("prime_factors requires a positive integer")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return tuple(out)


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def classify(kind: SymmetryKind, n: int, q: int) -> CaseLabel:
    """Assign (kind, N, q) to its constraints-matrix case."""
    if not 0 <= q < n:
        raise ValueError(f"mode index {q} out of range for dimension {n}")
    if kind is SymmetryKind.CYCLIC:
        k = math.gcd(n, q)
        if q == 0:
            case = Case.CYC1
        elif k == 1:
            case = Case.CYC2 if (n % 2 == 1 or _is_power_of_two(n)) else Case.CYC3
        else:
            sub = n // k
            case = Case.CYC4 if (sub % 2 == 1 or _is_power_of_two(sub)) else Case.CYC5
        return CaseLabel(case=case, divisor=k)
    ell = math.gcd(2 * n, 2 * q + 1)
    if _is_power_of_two(n):
        case = Case.NEGA_I
    elif ell == 1:
        case = Case.NEGA_II
    elif _is_power_of_two(n // ell) and n // ell >= 2:
        case = Case.NEGA_III
    else:
        case = Case.NEGA_IV
    return CaseLabel(case=case, divisor=ell)


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def _sum_to_zero(n: int) -> np.ndarray:
    # q = 0: the single constraint sum_p n_p = 0, solved for the last entry.
    a = np.zeros((n, n - 1), dtype=np.int64)
    a[: n - 1] = np.eye(n - 1, dtype=np.int64)
    a[n - 1] = -1
    return a


def _block(n: int, p: int) -> np.ndarray:
    # A[i, j] = 1 iff i = j (mod n/p): p equal copies of each free entry.
    width = n // p
    a = np.zeros((n, width), dtype=np.int64)
    for i in range(n):
        a[i, i % width] = 1
    return a


def _signed_block(n: int, p: int) -> np.ndarray:
    # Copies alternate in sign from one block of n/p entries to the next.
    width = n // p
    a = np.zeros((n, width), dtype=np.int64)
    for i in range(n):
        a[i, i % width] = -1 if ((i * p) // n) % 2 else 1
    return a


def _replicated_block(n: int, period: int, p: int) -> np.ndarray:
    """Lift of the block pattern through class sums y_l = sum of n over
    indices congruent to l modulo period.

    Constraints: y_l = w_{l mod period/p} for every l < period.  Entry n_l
    (l < period) is solved for; the remaining n_f and the w_j stay free.
    """
    width = period // p
    m = n - period + width
    a = np.zeros((n, m), dtype=np.int64)
    for j, f in enumerate(range(period, n)):
        a[f, j] = 1
        a[f % period, j] -= 1
    for j in range(width):
        for l in range(j, period, width):
            a[l, n - period + j] += 1
    return a


def _alternating_lift(n: int, period: int, p: int) -> np.ndarray:
    """Lift of the sign-alternating pattern on class-sum differences.

    With half = period/2, the differences z_l = y_l - y_{l+half} must follow
    z_l = (-1)^{floor(l*p/half)} w_{l mod half/p} for l < half.  Entry n_l
    (l < half) is solved for; n_f with f >= half and the w_j stay free.
    Requires period even and p an odd prime dividing half.
    """
    half = period // 2
    width = half // p
    m = n - half + width
    a = np.zeros((n, m), dtype=np.int64)
    for j, f in enumerate(range(half, n)):
        a[f, j] = 1
        r = f % period
        if r >= half:
            a[r - half, j] += 1
        else:
            a[r, j] -= 1
    for j in range(width):
        for l in range(j, half, width):
            sign = -1 if ((l * p) // half) % 2 else 1
            a[l, n - half + j] += sign
    return a


def constraints_for(kind: SymmetryKind, n: int, q: int) -> list[ConstraintsMatrix]:
    """All closed-form constraints matrices for mode q of an N-dim lattice.

    Returns one matrix per (case, prime) pair, never concatenated: each
    matrix parameterizes its own reduced quadratic form.  The list is empty
    exactly when the kernel holds only the zero vector (nega-cyclic
    power-of-two dimensions).
    """
    label = classify(kind, n, q)
    out: list[ConstraintsMatrix] = []

    def add(origin: str, prime: int | None, entries: np.ndarray) -> None:
        out.append(ConstraintsMatrix(entries=_freeze(entries), origin=origin,
                                     operator_index=q, prime=prime))

    if label.case is Case.CYC1:
        add("cyclic-1", None, _sum_to_zero(n))
    elif label.case is Case.CYC2:
        for p in prime_factors(n):
            add("cyclic-2", p, _block(n, p))
    elif label.case is Case.CYC3:
        for p in prime_factors(n):
            add("cyclic-2", p, _block(n, p))
        for p in prime_factors(n // 2):
            if p > 2:
                add("cyclic-3", p, _alternating_lift(n, n, p))
    elif label.case is Case.CYC4:
        period = n // label.divisor
        for p in prime_factors(period):
            add("cyclic-4", p, _replicated_block(n, period, p))
    elif label.case is Case.CYC5:
        period = n // label.divisor
        for p in prime_factors(period // 2):
            if p > 2:
                add("cyclic-3", p, _alternating_lift(n, period, p))
        for p in prime_factors(period):
            add("cyclic-4", p, _replicated_block(n, period, p))
    elif label.case is Case.NEGA_I:
        pass
    elif label.case is Case.NEGA_II:
        for p in prime_factors(n):
            if p > 2:
                add("nega-II", p, _signed_block(n, p))
    elif label.case is Case.NEGA_III:
        add("nega-III", None, _replicated_block(n, 2 * n // label.divisor, 2))
    else:
        period = 2 * n // label.divisor
        for p in prime_factors(period):
            add("nega-IV", p, _replicated_block(n, period, p))
        for p in prime_factors(period // 2):
            if p > 2:
                add("nega-V", p, _alternating_lift(n, period, p))
    return out
