"""Cyclic and nega-cyclic lattice bases and their Gram matrices.

A structured lattice is generated from a single row vector: row i+1 is the
(sign-flipping) cyclic shift of row i.  All length information of the lattice
lives in the Gram matrix G, through |sum_i n_i b_i|^2 = n^T G n for integer
coefficient vectors n.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .exceptions import DegenerateSamplerError

MIN_GRAM_EIGENVALUE = 1e-6


class SymmetryKind(enum.Enum):
    CYCLIC = "cyclic"
    NEGACYCLIC = "nega"

    @classmethod
    def parse(cls, text: str) -> "SymmetryKind":
        t = text.strip().lower()
        for kind in cls:
            if t == kind.value or t == kind.name.lower():
                return kind
        if t in ("negacyclic", "nega-cyclic", "n"):
            return cls.NEGACYCLIC
        if t in ("cyc", "c"):
            return cls.CYCLIC
        raise ValueError(f"unknown symmetry kind: {text!r}")


def cyclic_shift(v: np.ndarray) -> np.ndarray:
    """Rotate v one position: (v0,..,vN-1) -> (vN-1, v0,.., vN-2)."""
    v = np.asarray(v, dtype=float)
    if v.size == 0:
        raise ValueError("cyclic_shift of an empty vector")
    return np.roll(v, 1)


def nega_shift(v: np.ndarray) -> np.ndarray:
    """Rotate v one position and negate the wrapped entry."""
    v = np.asarray(v, dtype=float)
    if v.size == 0:
        raise ValueError("nega_shift of an empty vector")
    out = np.roll(v, 1)
    out[0] = -out[0]
    return out


def shift_matrix(kind: SymmetryKind, n: int) -> np.ndarray:
    """Matrix form of the shift operator (permutation, signed for nega)."""
    m = np.zeros((n, n))
    m[0, n - 1] = -1.0 if kind is SymmetryKind.NEGACYCLIC else 1.0
    for i in range(1, n):
        m[i, i - 1] = 1.0
    return m


@dataclass(frozen=True)
class StructuredBasis:
    """Basis rows b_i of a structured lattice; rows[0] is the generator."""

    kind: SymmetryKind
    rows: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.rows.shape[0]

    @property
    def generator(self) -> np.ndarray:
        return self.rows[0]


def build_basis(kind: SymmetryKind, generator: np.ndarray) -> StructuredBasis:
    """Generate the full N-row basis by repeated shifting of the generator."""
    gen = np.asarray(generator, dtype=float)
    if gen.ndim != 1 or gen.size < 2:
        raise ValueError("generator must be a vector of length >= 2")
    shift = nega_shift if kind is SymmetryKind.NEGACYCLIC else cyclic_shift
    rows = np.empty((gen.size, gen.size))
    rows[0] = gen
    for i in range(1, gen.size):
        rows[i] = shift(rows[i - 1])
    rows.setflags(write=False)
    return StructuredBasis(kind=kind, rows=rows)


def gram(basis: StructuredBasis) -> np.ndarray:
    """Gram matrix G_ij = b_i . b_j of the basis rows."""
    g = basis.rows @ basis.rows.T
    g.setflags(write=False)
    return g


def vector_length_sq(g: np.ndarray, n: np.ndarray) -> float:
    """Squared Euclidean length n^T G n of the lattice vector sum_i n_i b_i."""
    g = np.asarray(g, dtype=float)
    n = np.asarray(n)
    if g.shape != (n.size, n.size):
        raise ValueError(f"dimension mismatch: G is {g.shape}, n has {n.size} entries")
    return float(n @ g @ n)


def sample_generator(seed: int, n: int, kind: SymmetryKind = SymmetryKind.NEGACYCLIC,
                     max_attempts: int = 1000) -> np.ndarray:
    """Draw a unit-norm generator whose lattice is safely non-degenerate.

    Entries are i.i.d. standard normal, normalized to unit length.  A draw is
    rejected when the resulting Gram matrix has an eigenvalue below
    MIN_GRAM_EIGENVALUE, which would make shortest-vector statistics
    ill-conditioned.  Deterministic in (seed, n).
    """
    if n < 2:
        raise ValueError("lattice dimension must be at least 2")
    rng = np.random.default_rng(seed)
    for _ in range(max_attempts):
        v = rng.standard_normal(n)
        norm = np.linalg.norm(v)
        if norm == 0.0:
            continue
        v /= norm
        g = gram(build_basis(kind, v))
        if np.linalg.eigvalsh(g)[0] >= MIN_GRAM_EIGENVALUE:
            v.setflags(write=False)
            return v
    raise DegenerateSamplerError(
        f"no well-conditioned lattice in {max_attempts} draws (seed={seed}, n={n})")
