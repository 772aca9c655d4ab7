import numpy as np
import pytest

from symlat.constraints import constraints_for
from symlat.exceptions import EmptyKernelError, ResourceLimitError
from symlat.hamiltonian import (QubitLayout, build_hamiltonian, decode_indices,
                                decode_register, energy_table, quadratic_energies,
                                reduce_gram, zero_state_index)
from symlat.lattice import SymmetryKind, build_basis, gram, sample_generator
from symlat.spectral import eigenvalues, fourier_basis

NEGA = SymmetryKind.NEGACYCLIC


def test_decode_register_examples():
    assert decode_register("000") == -4
    assert decode_register("111") == 3
    assert decode_register("100") == 0
    assert decode_register("0") == -1
    assert decode_register("1") == 0


def test_decode_register_bijective():
    for k in range(1, 9):
        values = [decode_register(format(b, f"0{k}b")) for b in range(1 << k)]
        assert sorted(values) == list(range(-(1 << (k - 1)), 1 << (k - 1)))


def test_decode_register_rejects_bad_input():
    with pytest.raises(ValueError):
        decode_register("")
    with pytest.raises(ValueError):
        decode_register("012")


def test_decode_indices_register_order():
    layout = QubitLayout(registers=2, bits_per_register=3)
    # index 0b001 -> register 0 bits 001 -> -4+1; register 1 bits 000 -> -4
    row = decode_indices(np.array([0b000001]), layout)[0]
    assert row.tolist() == [-3, -4]
    row = decode_indices(np.array([0b100000]), layout)[0]
    assert row.tolist() == [-4, 0]


def test_decode_indices_matches_string_decode():
    layout = QubitLayout(registers=3, bits_per_register=2)
    for idx in range(64):
        row = decode_indices(np.array([idx]), layout)[0]
        bits = format(idx, "06b")
        expected = [decode_register(bits[4:6]), decode_register(bits[2:4]),
                    decode_register(bits[0:2])]
        assert row.tolist() == expected


def test_layout_bounds():
    with pytest.raises(ResourceLimitError):
        QubitLayout(registers=9, bits_per_register=3)
    with pytest.raises(ValueError):
        QubitLayout(registers=2, bits_per_register=9)


def test_reduce_gram_identity_matrix():
    g = gram(build_basis(NEGA, sample_generator(4, 6)))
    from symlat.constraints import ConstraintsMatrix
    eye = ConstraintsMatrix(entries=np.eye(6, dtype=np.int64), origin="test",
                            operator_index=0)
    np.testing.assert_allclose(reduce_gram(g, eye).entries, g, atol=0)


def test_reduce_gram_contraction_identity():
    rng = np.random.default_rng(0)
    g = gram(build_basis(NEGA, sample_generator(8, 6)))
    spec = eigenvalues(g, fourier_basis(NEGA, 6))
    for mat in constraints_for(NEGA, 6, spec.principal):
        f = reduce_gram(g, mat).entries
        assert np.linalg.eigvalsh(f)[0] >= -1e-10 * max(f.max(), 1.0)
        for _ in range(1000):
            m = rng.integers(-4, 4, size=mat.cols)
            n = mat.entries @ m
            assert float(m @ f @ m) == pytest.approx(float(n @ g @ n),
                                                     rel=1e-10, abs=1e-12)


def test_reduce_gram_rejects_empty():
    g = gram(build_basis(NEGA, sample_generator(4, 8)))
    empty = constraints_for(NEGA, 8, 0)
    assert empty == []
    kb = __import__("symlat.hnf", fromlist=["kernel_basis"]).kernel_basis(NEGA, 8, 0)
    with pytest.raises(EmptyKernelError):
        reduce_gram(g, kb)


def test_build_hamiltonian_penalty_and_energies():
    g = gram(build_basis(NEGA, sample_generator(21, 6)))
    h = build_hamiltonian(g, 3, penalty=g[0, 0])
    assert h.energy(np.zeros(6, dtype=int)) == g[0, 0]
    n = np.array([1, 0, -1, 0, 1, 0])
    assert h.energy(n) == pytest.approx(float(n @ g @ n))


def test_energy_table_hand_enumerated():
    # one register of two qubits over the 1-d lattice G = [[1]]
    h = build_hamiltonian(np.eye(1), 2, penalty=1.0)
    table = energy_table(h)
    # decodes: 00 -> -2, 01 -> -1, 10 -> 0 (penalty), 11 -> 1
    assert table.tolist() == [4.0, 1.0, 1.0, 1.0]
    h = build_hamiltonian(np.eye(1), 2, penalty=0.25)
    assert energy_table(h).tolist() == [4.0, 1.0, 0.25, 1.0]


def test_energy_table_properties():
    g = gram(build_basis(NEGA, sample_generator(33, 6)))
    h = build_hamiltonian(g, 3, penalty=g[0, 0])
    table = energy_table(h)
    assert table.size == 2**18
    assert table.min() >= 0.0
    z = zero_state_index(h.layout)
    assert table[z] == g[0, 0]
    # every other entry is the plain quadratic form
    idx = np.array([0, 1, 2**17, 2**18 - 1])
    m = decode_indices(idx, h.layout)
    np.testing.assert_array_equal(table[idx], quadratic_energies(g, m))


def test_build_hamiltonian_rejects_too_many_qubits():
    with pytest.raises(ResourceLimitError):
        build_hamiltonian(np.eye(9), 3, penalty=1.0)
