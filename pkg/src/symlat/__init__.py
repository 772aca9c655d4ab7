"""Symmetry-exploiting short-vector search in cyclic and nega-cyclic lattices."""

from .backend import BACKEND
from .constraints import (CaseLabel, ConstraintsMatrix, classify, constraints_for,
                          prime_factors)
from .exceptions import (DegenerateSamplerError, EmptyKernelError,
                         NotStructuredError, ResourceLimitError)
from .hamiltonian import (DiagonalHamiltonian, QubitLayout, ReducedGram,
                          build_hamiltonian, decode_register, energy_table,
                          reduce_gram)
from .hnf import cyclotomic, hnf, kernel_basis, reduction_matrix, totient
from .lattice import (StructuredBasis, SymmetryKind, build_basis, cyclic_shift,
                      gram, nega_shift, sample_generator, vector_length_sq)
from .oracle import KernelStats, OracleResult, brute_force_shortest, kernel_stats
from .spectral import (FourierBasis, SpectralData, eigenvalues, energy_via_spectrum,
                       fourier_basis, s_value)
from .vqe import AnsatzSpec, VqeResult, expectation, optimize, run_circuit, run_vqe

__version__ = "0.1.0"
