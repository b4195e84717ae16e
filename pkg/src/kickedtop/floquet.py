"""One-period propagator of the kicked top and state evolution under it.

A period is a rotation by pi/2 about y followed by a torsion kick about z,
U = T R with T = exp(-i kappa0 Jz^2 / 2j) and R = exp(-i pi Jy / 2).  The
torsion is diagonal in the storage basis, so T is built elementwise and R
through its spectral decomposition.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalIntegrityError
from .spin import SpinSystem, Y_AXIS, rotation_operator
from .states import DensityState

__all__ = ["TopParams", "FloquetOperator", "build_floquet", "evolve", "conjugate_steps"]

UNITARITY_TOL = 1e-12


@dataclass(frozen=True)
class TopParams:
    """Spin system plus dimensionless kick strength kappa0 >= 0."""

    system: SpinSystem
    kappa0: float

    def __post_init__(self) -> None:
        k = float(self.kappa0)
        if not np.isfinite(k) or k < 0:
            raise ValueError(f"kappa0 must be finite and non-negative, got {self.kappa0!r}")
        object.__setattr__(self, "kappa0", k)


@dataclass(frozen=True, eq=False)
class FloquetOperator:
    """Torsion, rotation and their product U = torsion @ rotation."""

    params: TopParams
    torsion: np.ndarray
    rotation: np.ndarray
    matrix: np.ndarray


def build_floquet(params: TopParams) -> FloquetOperator:
    """Assemble U for one kick period.

    j = 0 is rejected because the torsion phase carries 1/(2j).
    """
    system = params.system
    if system.j == 0:
        raise ValueError("kicked top needs j > 0, the torsion divides by 2j")
    m = system.magnetic_numbers()
    torsion = np.diag(np.exp(-1j * params.kappa0 * m**2 / (2 * system.j)))
    rotation = rotation_operator(system, Y_AXIS, np.pi / 2)
    matrix = torsion @ rotation
    drift = np.abs(matrix @ matrix.conj().T - np.eye(system.dim)).max()
    if drift > UNITARITY_TOL:
        raise NumericalIntegrityError(f"propagator unitarity off by {drift:.3e}")
    for arr in (torsion, rotation, matrix):
        arr.setflags(write=False)
    return FloquetOperator(params=params, torsion=torsion, rotation=rotation, matrix=matrix)


def conjugate_steps(matrix: np.ndarray, unitary: np.ndarray, steps: int) -> np.ndarray:
    """Apply rho -> U rho U^dag the given number of times.

    Re-symmetrizes after each step so Hermiticity error stays at rounding
    level over long products.
    """
    out = matrix
    for _ in range(steps):
        out = unitary @ out @ unitary.conj().T
        out = 0.5 * (out + out.conj().T)
    return out


def evolve(rho: DensityState, floquet: FloquetOperator, steps: int) -> DensityState:
    """State after an integer number of kick periods."""
    if not isinstance(steps, (int, np.integer)) or isinstance(steps, bool):
        raise ValueError(f"steps must be an integer, got {steps!r}")
    if steps < 0:
        raise ValueError(f"steps must be non-negative, got {steps!r}")
    if steps == 0:
        return rho
    return DensityState(conjugate_steps(rho.matrix, floquet.matrix, int(steps)))
