import math

import numpy as np
import pytest

from symlat.constraints import constraints_for
from symlat.hnf import (cyclotomic, det_unimodular, hnf, kernel_basis,
                        reduction_matrix, totient)
from symlat.lattice import SymmetryKind
from symlat.spectral import fourier_basis

NEGA = SymmetryKind.NEGACYCLIC
CYC = SymmetryKind.CYCLIC


def brute_totient(n):
    return 1 if n == 1 else sum(1 for k in range(1, n) if math.gcd(k, n) == 1)


def test_totient_examples():
    assert totient(6) == 2
    assert totient(1) == 1
    assert totient(12) == 4
    with pytest.raises(ValueError):
        totient(0)


def test_totient_matches_brute_force():
    for n in range(1, 200):
        assert totient(n) == brute_totient(n)


def test_cyclotomic_small_cases():
    assert cyclotomic(1) == (-1, 1)
    assert cyclotomic(2) == (1, 1)
    assert cyclotomic(3) == (1, 1, 1)
    assert cyclotomic(6) == (1, -1, 1)
    assert cyclotomic(16) == (1, 0, 0, 0, 0, 0, 0, 0, 1)


def test_cyclotomic_degree_and_product():
    # degree phi(n), and the product over divisors reconstructs x^n - 1
    for n in range(1, 40):
        assert len(cyclotomic(n)) - 1 == totient(n)
    n = 24
    prod = (1,)
    for d in range(1, n + 1):
        if n % d == 0:
            phi_d = cyclotomic(d)
            out = [0] * (len(prod) + len(phi_d) - 1)
            for i, a in enumerate(prod):
                for j, b in enumerate(phi_d):
                    out[i + j] += a * b
            prod = tuple(out)
    assert prod == tuple([-1] + [0] * (n - 1) + [1])


def test_cyclotomic_roots_numerically():
    for n in (5, 8, 12, 15):
        coeffs = cyclotomic(n)
        for k in range(1, n + 1):
            if math.gcd(k, n) == 1:
                z = np.exp(2j * np.pi * k / n)
                value = sum(c * z**i for i, c in enumerate(coeffs))
                assert abs(value) <= 1e-9


def test_cyclotomic_bounds():
    with pytest.raises(ValueError):
        cyclotomic(0)
    with pytest.raises(ValueError):
        cyclotomic(2000)


def test_reduction_matrix_cyclic_five():
    r = reduction_matrix(CYC, 5, 1)
    assert r.entries[:4] == ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
    assert r.entries[4] == (-1, -1, -1, -1)


def test_reduction_matrix_nega_three():
    r = reduction_matrix(NEGA, 3, 0)
    assert r.order == 6
    assert r.entries[2] == (-1, 1)


def test_reduction_matrix_nega_eight_is_identity_block():
    r = reduction_matrix(NEGA, 8, 0)
    assert r.order == 16
    for k in range(8):
        assert r.entries[k] == tuple(1 if j == k else 0 for j in range(8))


def test_reduction_matrix_rejects_cyclic_zero():
    with pytest.raises(ValueError):
        reduction_matrix(CYC, 6, 0)


@pytest.mark.parametrize("kind", [CYC, NEGA])
def test_reduction_rows_reproduce_exponentials(kind):
    for n in range(2, 17):
        for q in range(n):
            if kind is CYC and q == 0:
                continue
            r = reduction_matrix(kind, n, q)
            z = np.exp(-2j * np.pi / r.order)
            if kind is CYC:
                m, modulus = q, n
            else:
                m, modulus = 2 * q + 1, 2 * n
            for k in range(n):
                target = np.exp(-2j * np.pi * m * k / modulus)
                value = sum(c * z**j for j, c in enumerate(r.entries[k]))
                assert abs(value - target) <= 1e-9


def test_hnf_kernel_of_single_row():
    res = hnf([[2, 4]])
    assert len(res.kernel_cols[0]) == 1
    col = [res.kernel_cols[0][0], res.kernel_cols[1][0]]
    assert col in ([2, -1], [-2, 1])
    assert det_unimodular(res.u) in (1, -1)


def test_hnf_identity_no_kernel():
    res = hnf(np.eye(3, dtype=int))
    assert res.kernel_cols == [[], [], []]
    assert res.h == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_hnf_sum_row():
    res = hnf([[1, 1, 1]])
    kernel = np.array(res.kernel_cols)
    assert kernel.shape == (3, 2)
    assert not np.any(np.ones(3, dtype=int) @ kernel)


def test_hnf_random_exactness():
    """H = X U with det(U) = +/-1 in exact arithmetic."""
    rng = np.random.default_rng(99)
    for trial in range(200):
        rows = int(rng.integers(1, 9))
        cols = int(rng.integers(1, 9))
        x = rng.integers(-50, 51, size=(rows, cols))
        res = hnf(x)
        u = np.array(res.u, dtype=object)
        h = np.array(res.h, dtype=object)
        assert np.array_equal(np.array(x, dtype=object) @ u, h)
        assert det_unimodular(res.u) in (1, -1)
        for col in range(len(res.kernel_cols[0]) if res.kernel_cols else 0):
            vec = [res.kernel_cols[r][col] for r in range(cols)]
            assert not any(x @ np.array(vec, dtype=object))


def test_hnf_pivot_shape():
    """Full-row-rank input: row i is zero left of column i + (C - R), the
    pivot there is positive, and entries to its right are reduced mod it."""
    rng = np.random.default_rng(4)
    for _ in range(50):
        r, c = int(rng.integers(1, 5)), int(rng.integers(1, 7))
        x = rng.integers(-9, 10, size=(r, c))
        if np.linalg.matrix_rank(x) < min(r, c) or c < r:
            continue
        h = hnf(x).h
        for i in range(r):
            pivot_col = i + c - r
            assert all(h[i][j] == 0 for j in range(pivot_col))
            assert h[i][pivot_col] > 0
            for j in range(pivot_col + 1, c):
                assert 0 <= h[i][j] < h[i][pivot_col]


def test_kernel_basis_examples():
    kb = kernel_basis(CYC, 5, 1)
    assert kb.entries.tolist() in ([[1]] * 5, [[-1]] * 5)
    assert kernel_basis(NEGA, 8, 0).cols == 0
    kb = kernel_basis(CYC, 6, 2)
    assert kb.cols == 4
    u = fourier_basis(CYC, 6).entries
    assert np.abs(u[2] @ kb.entries).max() <= 1e-9 * 6


def test_kernel_basis_cyclic_zero_closed_form():
    kb = kernel_basis(CYC, 7, 0)
    assert kb.cols == 6
    assert kb.entries[:6].tolist() == np.eye(6, dtype=int).tolist()
    assert kb.entries[6].tolist() == [-1] * 6


@pytest.mark.parametrize("kind", [CYC, NEGA])
def test_kernel_membership_all_modes(kind):
    for n in range(2, 17):
        u = fourier_basis(kind, n).entries
        for q in range(n):
            kb = kernel_basis(kind, n, q)
            if kb.cols:
                assert np.abs(u[q] @ kb.entries).max() <= 1e-9 * n


def test_dimension_laws():
    for n in range(2, 25):
        for q in range(1, n):
            if math.gcd(n, q) == 1:
                assert kernel_basis(CYC, n, q).cols == n - totient(n)
        assert kernel_basis(NEGA, n, 0).cols == n - totient(2 * n)
    for n in (2, 4, 8, 16):
        assert kernel_basis(NEGA, n, 0).cols == 0


def _solve_integer(a: np.ndarray, target: np.ndarray) -> bool:
    """Exact test for integer solvability of a x = target (a full column rank)."""
    if a.shape[1] == 0:
        return not target.any()
    x, *_ = np.linalg.lstsq(a.astype(float), target.astype(float), rcond=None)
    cand = np.rint(x).astype(np.int64)
    return bool(np.array_equal(a @ cand, target))


def test_kernel_orbit_invariance():
    """Modes with the same gcd share the same kernel span (cyclic)."""
    for n in (6, 8, 10, 12):
        groups = {}
        for q in range(1, n):
            groups.setdefault(math.gcd(n, q), []).append(kernel_basis(CYC, n, q))
        for mats in groups.values():
            base = mats[0]
            for other in mats[1:]:
                assert base.cols == other.cols
                for col in other.entries.T:
                    assert _solve_integer(base.entries, col)
                for col in base.entries.T:
                    assert _solve_integer(other.entries, col)


@pytest.mark.parametrize("kind", [CYC, NEGA])
def test_analytic_columns_inside_hnf_kernel(kind):
    for n in range(2, 25):
        for q in range(n):
            kb = kernel_basis(kind, n, q)
            for m in constraints_for(kind, n, q):
                for col in m.entries.T:
                    assert _solve_integer(kb.entries, col), (kind, n, q, m.origin)
