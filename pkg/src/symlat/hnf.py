"""Exact integer kernels of the Fourier-mode operators.

The condition sum_p U[q, p] n_p = 0 over integers n is a statement about
integer relations among roots of unity.  Writing each root as a power of a
primitive root of order `ord` and reducing exponents modulo the cyclotomic
polynomial of that order turns the condition into an exact integer linear
system, whose kernel comes out of a column-style Hermite normal form.  All
arithmetic in this module is arbitrary-precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .constraints import _freeze, _sum_to_zero, ConstraintsMatrix
from .lattice import SymmetryKind

IntMatrix = list[list[int]]

MAX_CYCLOTOMIC_ORDER = 1024


def totient(n: int) -> int:
    """Euler totient: count of 1 <= k < n coprime with n; totient(1) = 1."""
    if n < 1:
        raise ValueError("totient requires a positive integer")
    if n == 1:
        return 1
    return sum(1 for k in range(1, n) if math.gcd(k, n) == 1)


def _poly_divmod(num: tuple[int, ...], den: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    # Exact division of integer polynomials (ascending coefficients); the
    # callers only divide when the remainder's coefficients stay integral.
    num_l = list(num)
    q = [0] * (max(len(num_l) - len(den) + 1, 0))
    lead = den[-1]
    for shift in range(len(num_l) - len(den), -1, -1):
        coeff = num_l[shift + len(den) - 1]
        if coeff % lead != 0:
            raise ArithmeticError("non-exact polynomial division")
        factor = coeff // lead
        q[shift] = factor
        if factor:
            for i, d in enumerate(den):
                num_l[shift + i] -= factor * d
    while len(num_l) > 1 and num_l[-1] == 0:
        num_l.pop()
    return tuple(q), tuple(num_l)


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> tuple[int, ...]:
    """Coefficients (ascending) of the n-th cyclotomic polynomial.

    Computed by dividing x^n - 1 by the cyclotomic polynomials of all proper
    divisors; exact over the integers.
    """
    if not 1 <= n <= MAX_CYCLOTOMIC_ORDER:
        raise ValueError(f"cyclotomic order must be in [1, {MAX_CYCLOTOMIC_ORDER}]")
    if n == 1:
        return (-1, 1)
    num = tuple([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod(num, cyclotomic(d))
            assert rem == (0,), "cyclotomic division left a remainder"
    return num


def _power_mod_cyclotomic(exponent: int, order: int) -> list[int]:
    # x^exponent reduced modulo the order-th cyclotomic polynomial, padded
    # to degree phi(order) - 1.
    phi = len(cyclotomic(order)) - 1
    num = tuple([0] * exponent + [1])
    if exponent < phi:
        coeffs = list(num)
    else:
        _, rem = _poly_divmod(num, cyclotomic(order))
        coeffs = list(rem)
    coeffs += [0] * (phi - len(coeffs))
    return coeffs


@dataclass(frozen=True)
class ReductionMatrix:
    """Row k holds the exact expansion of the k-th kernel-equation root of
    unity over the power basis 1, z, .., z^{phi(order)-1} of z = exp(-2*pi*i/order)."""

    entries: tuple[tuple[int, ...], ...] = field(repr=False)
    order: int

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])


def reduction_matrix(kind: SymmetryKind, n: int, q: int) -> ReductionMatrix:
    """Exponent-reduction matrix for mode q of an N-dim structured lattice.

    The kernel equation involves the roots exp(-2*pi*i*m*k/modulus) for
    k = 0..N-1, with m = q, modulus = N (cyclic) or m = 2q+1, modulus = 2N
    (nega-cyclic).  Dividing out gcd(modulus, m) leaves powers of a primitive
    root of order `ord`; row k is x^(m' k mod ord) reduced mod the ord-th
    cyclotomic polynomial.
    """
    if not 0 <= q < n:
        raise ValueError(f"mode index {q} out of range for dimension {n}")
    if kind is SymmetryKind.CYCLIC:
        if q == 0:
            raise ValueError("cyclic q=0 has no primitive root; use the closed form")
        m, modulus = q, n
    else:
        m, modulus = 2 * q + 1, 2 * n
    g = math.gcd(modulus, m)
    order = modulus // g
    m_red = m // g
    rows = tuple(tuple(_power_mod_cyclotomic((m_red * k) % order, order)) for k in range(n))
    return ReductionMatrix(entries=rows, order=order)


@dataclass(frozen=True)
class HnfResult:
    """Column-style Hermite form H = X U with unimodular U.

    Zero columns of H are collected first; the corresponding columns of U
    span the integer kernel of X exactly.
    """

    h: IntMatrix = field(repr=False)
    u: IntMatrix = field(repr=False)
    kernel_cols: IntMatrix = field(repr=False)


def _col_op(mat: IntMatrix, i: int, j: int, a: int, b: int, c: int, d: int) -> None:
    # columns (i, j) <- (a*col_i + b*col_j, c*col_i + d*col_j)
    for row in mat:
        e, f = row[i], row[j]
        row[i] = a * e + b * f
        row[j] = c * e + d * f


def hnf(x: IntMatrix | np.ndarray) -> HnfResult:
    """Column Hermite normal form over the integers, exact.

    Pivots are placed in the rightmost columns working up the rows
    (Cohen-style column reduction): pivot entries are positive, entries to
    the right of a pivot are reduced modulo it, and every column left of all
    pivots is identically zero.
    """
    if isinstance(x, np.ndarray):
        x = [[int(v) for v in row] for row in x]
    else:
        x = [[int(v) for v in row] for row in x]
    rows = len(x)
    cols = len(x[0]) if rows else 0
    if rows == 0 or cols == 0:
        raise ValueError("hnf requires a nonempty matrix")
    h = [row[:] for row in x]
    u = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    k = cols
    for i in range(rows - 1, -1, -1):
        if k == 0:
            break
        k -= 1
        for j in range(k - 1, -1, -1):
            if h[i][j] == 0:
                continue
            # zero h[i][j] against h[i][k], keeping gcd in column k
            p, s = h[i][k], h[i][j]
            g, a, b = _xgcd(p, s)
            _col_op(h, k, j, a, b, -(s // g), p // g)
            _col_op(u, k, j, a, b, -(s // g), p // g)
        if h[i][k] < 0:
            for row in h:
                row[k] = -row[k]
            for row in u:
                row[k] = -row[k]
        pivot = h[i][k]
        if pivot == 0:
            k += 1
            continue
        for j in range(k + 1, cols):
            f = h[i][j] // pivot
            if f:
                for row in h:
                    row[j] -= f * row[k]
                for row in u:
                    row[j] -= f * row[k]

    kernel = [[u[r][j] for j in range(k)] for r in range(cols)]
    for r in range(rows):
        for j in range(k):
            assert h[r][j] == 0, "kernel column maps to a nonzero vector"
    return HnfResult(h=h, u=u, kernel_cols=kernel)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    # g, s, t with s*a + t*b = g; t forced to 0 when a divides b, keeping
    # the unimodular updates small.
    if a != 0 and b % a == 0:
        return (abs(a), 1 if a > 0 else -1, 0)
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        quot = old_r // r
        old_r, r = r, old_r - quot * r
        old_s, s = s, old_s - quot * s
        old_t, t = t, old_t - quot * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def det_unimodular(u: IntMatrix) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    n = len(u)
    m = [row[:] for row in u]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for swap in range(k + 1, n):
                if m[swap][k] != 0:
                    m[k], m[swap] = m[swap], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def kernel_basis(kind: SymmetryKind, n: int, q: int) -> ConstraintsMatrix:
    """Integer basis of the full kernel of mode q, as a constraints matrix.

    Cyclic q=0 short-circuits to the closed form (single sum-to-zero
    constraint).  Otherwise the transpose of the reduction matrix is brought
    to Hermite form and the kernel columns are read off; the result may have
    zero columns (nega-cyclic power-of-two dimensions).
    """
    if kind is SymmetryKind.CYCLIC and q == 0:
        return ConstraintsMatrix(entries=_freeze(_sum_to_zero(n)), origin="hnf",
                                 operator_index=q, prime=None)
    red = reduction_matrix(kind, n, q)
    x = [[red.entries[k][j] for k in range(red.rows)] for j in range(red.cols)]
    res = hnf(x)
    cols = len(res.kernel_cols[0]) if res.kernel_cols else 0
    a = np.array(res.kernel_cols, dtype=object)
    if a.size and max(abs(int(v)) for v in a.ravel()) > 2**62:
        raise OverflowError("kernel basis entries exceed int64")
    entries = np.array(res.kernel_cols, dtype=np.int64).reshape(n, cols)
    return ConstraintsMatrix(entries=_freeze(entries), origin="hnf",
                             operator_index=q, prime=None)
