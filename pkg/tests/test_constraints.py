import math

import numpy as np
import pytest

from symlat.constraints import (Case, classify, constraints_for, prime_factors)
from symlat.lattice import SymmetryKind
from symlat.spectral import fourier_basis

NEGA = SymmetryKind.NEGACYCLIC
CYC = SymmetryKind.CYCLIC


def test_prime_factors():
    assert prime_factors(15) == (3, 5)
    assert prime_factors(1) == ()
    assert prime_factors(12) == (2, 3)
    assert prime_factors(97) == (97,)
    with pytest.raises(ValueError):
        prime_factors(0)


def test_prime_factors_reconstruct():
    for n in range(1, 200):
        total = 1
        for p in prime_factors(n):
            power = 1
            while n % (power * p) == 0:
                power *= p
            total *= power
        assert total == n


def test_classify_examples():
    assert classify(CYC, 15, 1).case is Case.CYC2
    assert classify(NEGA, 6, 0).case is Case.NEGA_II
    assert classify(NEGA, 6, 0).divisor == 1
    assert classify(NEGA, 8, 3).case is Case.NEGA_I
    assert classify(CYC, 9, 0).case is Case.CYC1
    assert classify(CYC, 6, 1).case is Case.CYC3
    assert classify(CYC, 12, 4).case is Case.CYC4   # K=4, 12/4=3 odd
    assert classify(CYC, 12, 2).case is Case.CYC5   # K=2, 12/2=6 even non-power
    assert classify(NEGA, 6, 1).case is Case.NEGA_III  # L=3, 6=2*3
    assert classify(NEGA, 9, 1).case is Case.NEGA_IV   # L=3, 9/3=3
    assert classify(NEGA, 3, 1).case is Case.NEGA_IV   # L=3=N
    with pytest.raises(ValueError):
        classify(CYC, 5, 5)


def test_classification_cases_are_exhaustive():
    for kind in (CYC, NEGA):
        for n in range(2, 25):
            for q in range(n):
                label = classify(kind, n, q)
                if kind is CYC:
                    assert label.case in (Case.CYC1, Case.CYC2, Case.CYC3,
                                          Case.CYC4, Case.CYC5)
                    assert label.divisor == math.gcd(n, q)
                else:
                    assert label.case in (Case.NEGA_I, Case.NEGA_II,
                                          Case.NEGA_III, Case.NEGA_IV)
                    assert label.divisor == math.gcd(2 * n, 2 * q + 1)


def test_worked_example_matrix():
    mats = constraints_for(NEGA, 6, 0)
    assert len(mats) == 1
    assert mats[0].prime == 3
    assert mats[0].entries.tolist() == [[1, 0], [0, 1], [-1, 0],
                                        [0, -1], [1, 0], [0, 1]]


def test_prime_cyclic_all_ones():
    mats = constraints_for(CYC, 3, 1)
    assert len(mats) == 1
    assert mats[0].entries.tolist() == [[1], [1], [1]]
    for n in (5, 7, 11, 13):
        for q in range(1, n):
            mats = constraints_for(CYC, n, q)
            assert len(mats) == 1
            assert mats[0].entries.tolist() == [[1]] * n


def test_prime_nega_alternating():
    for n in (3, 5, 7, 11):
        mats = constraints_for(NEGA, n, 0)
        assert len(mats) == 1
        expected = [[(-1) ** i] for i in range(n)]
        assert mats[0].entries.tolist() == expected


def test_fifteen_has_two_block_families():
    mats = constraints_for(CYC, 15, 1)
    assert [m.entries.shape for m in mats] == [(15, 5), (15, 3)]
    assert [m.prime for m in mats] == [3, 5]


def test_power_of_two_nega_kernel_is_trivial():
    for n in (2, 4, 8, 16):
        for q in range(n):
            assert constraints_for(NEGA, n, q) == []


def test_nega_case_three_shape():
    mats = constraints_for(NEGA, 6, 1)   # L = 3, case III
    assert len(mats) == 1
    assert mats[0].entries.shape == (6, 4)   # N - N/L = 6 - 2


def test_cyclic_case_shapes():
    # case 3: N=6 q=1: A^{2,2} (6x3), A^{2,3} (6x2), A^{3,3} (6x4)
    shapes = [m.entries.shape for m in constraints_for(CYC, 6, 1)]
    assert shapes == [(6, 3), (6, 2), (6, 4)]
    # case 4: N=12 q=4 -> K=4, period 3, prime 3: 12 - (12/(4*3))*2 = 10
    shapes = [m.entries.shape for m in constraints_for(CYC, 12, 4)]
    assert shapes == [(12, 10)]


@pytest.mark.parametrize("kind", [CYC, NEGA])
def test_membership_rank_and_bounds_exhaustive(kind):
    """Every column of every matrix annihilates the mode row, exactly within
    tolerance, with full column rank and 0 <= M < N, for all N <= 24."""
    for n in range(2, 25):
        u = fourier_basis(kind, n).entries
        for q in range(n):
            for m in constraints_for(kind, n, q):
                a = m.entries
                assert 0 <= a.shape[1] < n
                residual = np.abs(u[q] @ a)
                if residual.size:
                    assert residual.max() <= 1e-9 * n, (kind, n, q, m.origin)
                if a.shape[1]:
                    assert np.linalg.matrix_rank(a.astype(float)) == a.shape[1]


def test_energy_contraction_identity():
    rng = np.random.default_rng(8)
    from symlat.lattice import build_basis, gram, sample_generator
    for kind in (CYC, NEGA):
        g = gram(build_basis(kind, sample_generator(23, 12, kind)))
        for q in range(12):
            for m in constraints_for(kind, 12, q):
                f = m.entries.T @ g @ m.entries
                for _ in range(20):
                    vec = rng.integers(-4, 4, size=m.entries.shape[1])
                    lhs = float(vec @ f @ vec)
                    n_vec = m.entries @ vec
                    rhs = float(n_vec @ g @ n_vec)
                    assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-12)
