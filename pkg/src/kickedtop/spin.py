"""Angular momentum matrices, axis eigenbases and spin coherent states.

Everything acts on the (2j+1)-dimensional spin-j space.  Basis states are
ordered by decreasing magnetic number, so index 0 holds m = +j and the last
index holds m = -j.  Integer and half-integer j are both supported.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

__all__ = [
    "SpinSystem",
    "Axis",
    "AxisBasis",
    "X_AXIS",
    "Y_AXIS",
    "Z_AXIS",
    "build_generators",
    "axis_operator",
    "rotation_operator",
    "axis_basis",
    "coherent_state",
]

_UNIT_TOL = 1e-12


@dataclass(frozen=True)
class SpinSystem:
    """Spin quantum number j and the dimension 2j+1 it implies."""

    j: float
    dim: int = field(init=False)

    def __post_init__(self) -> None:
        j = float(self.j)
        if not np.isfinite(j) or j < 0:
            raise ValueError(f"spin must be finite and non-negative, got {self.j!r}")
        two_j = round(2 * j)
        if abs(2 * j - two_j) > _UNIT_TOL:
            raise ValueError(f"spin must be integer or half-integer, got {self.j!r}")
        object.__setattr__(self, "j", two_j / 2.0)
        object.__setattr__(self, "dim", two_j + 1)

    def magnetic_numbers(self) -> np.ndarray:
        """J_z eigenvalues in storage order, j down to -j."""
        return self.j - np.arange(self.dim)


@dataclass(frozen=True)
class Axis:
    """Unit vector picking out a measurement or rotation direction.

    Construction rejects non-unit input rather than normalizing it, so a
    length mistake surfaces where it is made.
    """

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        v = np.array([self.x, self.y, self.z], dtype=float)
        if not np.all(np.isfinite(v)):
            raise ValueError(f"axis components must be finite, got {v}")
        norm = float(np.linalg.norm(v))
        if abs(norm - 1.0) > _UNIT_TOL:
            raise ValueError(f"axis must have unit norm, got |a| = {norm!r}")

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)


X_AXIS = Axis(1.0, 0.0, 0.0)
Y_AXIS = Axis(0.0, 1.0, 0.0)
Z_AXIS = Axis(0.0, 0.0, 1.0)


@dataclass(frozen=True, eq=False)
class AxisBasis:
    """Eigenbasis of J.a as columns, eigenvalue j at column 0 down to -j.

    Column k is the state reached by rotating |z, j-k> along the geodesic
    taking the z axis onto ``axis``; the tag records that phase choice.
    """

    axis: Axis
    vectors: np.ndarray
    convention: str = "geodesic-from-z"


def build_generators(system: SpinSystem) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (J_x, J_y, J_z) as dense complex matrices.

    J_z is diagonal with entries j..-j.  The ladder element
    <m+1|J_+|m> = sqrt(j(j+1) - m(m+1)) sits one row above the diagonal.
    """
    j, dim = system.j, system.dim
    m = system.magnetic_numbers()
    jz = np.diag(m).astype(complex)
    jp = np.zeros((dim, dim), dtype=complex)
    for col in range(1, dim):
        jp[col - 1, col] = np.sqrt(j * (j + 1) - m[col] * (m[col] + 1))
    jm = jp.conj().T
    jx = 0.5 * (jp + jm)
    jy = (jp - jm) / 2j
    return jx, jy, jz


def axis_operator(system: SpinSystem, axis: Axis) -> np.ndarray:
    """Spin component J.a along the given unit axis."""
    jx, jy, jz = build_generators(system)
    return axis.x * jx + axis.y * jy + axis.z * jz


def rotation_operator(system: SpinSystem, axis: Axis, angle: float) -> np.ndarray:
    """exp(-i * angle * J.a) through the spectral decomposition of J.a."""
    if not np.isfinite(angle):
        raise ValueError(f"rotation angle must be finite, got {angle!r}")
    op = axis_operator(system, axis)
    w, v = np.linalg.eigh(op)
    return (v * np.exp(-1j * angle * w)) @ v.conj().T


@lru_cache(maxsize=128)
def axis_basis(system: SpinSystem, axis: Axis) -> AxisBasis:
    """Eigenbasis of J.a with the geodesic phase convention.

    The basis matrix is the rotation carrying z onto the axis: identity for
    the z axis itself, a rotation by pi about y for the antipode, and
    otherwise a rotation about (z x a)/|z x a| by arccos(a.z).  Columns are
    then eigenvectors of J.a ordered m = j..-j.
    """
    n = axis.vector
    cross = np.cross(np.array([0.0, 0.0, 1.0]), n)
    cross_norm = float(np.linalg.norm(cross))
    if cross_norm < _UNIT_TOL:
        if axis.z > 0:
            vectors = np.eye(system.dim, dtype=complex)
        else:
            vectors = rotation_operator(system, Y_AXIS, np.pi)
    else:
        u = cross / cross_norm
        angle = float(np.arccos(np.clip(n[2], -1.0, 1.0)))
        vectors = rotation_operator(system, Axis(*u), angle)
    vectors = vectors.copy()
    vectors.setflags(write=False)
    return AxisBasis(axis=axis, vectors=vectors)


def coherent_state(system: SpinSystem, axis: Axis, sign: int = 1) -> np.ndarray:
    """Extremal eigenvector |a, +j> (sign=+1) or |a, -j> (sign=-1)."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    basis = axis_basis(system, axis)
    column = 0 if sign == 1 else system.dim - 1
    return basis.vectors[:, column].copy()
