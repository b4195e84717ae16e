"""Density matrices stored in the J_z basis.

Validation happens at construction: Hermiticity and unit trace to 1e-12,
eigenvalues above -1e-10.  Anything further gone raises
NumericalIntegrityError instead of flowing silently into statistics.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalIntegrityError

__all__ = ["DensityState", "pure", "maximally_mixed"]

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
EIGENVALUE_FLOOR = -1e-10


@dataclass(frozen=True, eq=False)
class DensityState:
    """Validated density matrix, index 0 along each side meaning m = +j."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {m.shape}")
        herm = np.abs(m - m.conj().T).max()
        if herm > HERMITICITY_TOL:
            raise NumericalIntegrityError(f"density matrix not Hermitian, deviation {herm:.3e}")
        tr = m.trace()
        if abs(tr - 1.0) > TRACE_TOL:
            raise NumericalIntegrityError(f"density matrix trace {tr!r} is not 1")
        lo = float(np.linalg.eigvalsh(m).min())
        if lo < EIGENVALUE_FLOOR:
            raise NumericalIntegrityError(f"density matrix has eigenvalue {lo:.3e} below floor")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def pure(vector: np.ndarray) -> DensityState:
    """Rank-1 density matrix |v><v| from a state vector, normalizing it."""
    v = np.asarray(vector, dtype=complex).ravel()
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        raise ValueError("cannot build a state from the zero vector")
    v = v / norm
    return DensityState(np.outer(v, v.conj()))


def maximally_mixed(dim: int) -> DensityState:
    if dim < 1:
        raise ValueError(f"dimension must be positive, got {dim!r}")
    return DensityState(np.eye(dim, dtype=complex) / dim)
