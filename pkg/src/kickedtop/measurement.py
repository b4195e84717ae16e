"""Projective measurement statistics, with and without an earlier measurement.

Two routes to the same physics live here on purpose.  ``conditional`` sends
the state through the non-selective dephasing channel at the first
measurement time; ``joint`` keeps every outcome branch and marginalizes.
They must agree to near machine precision, and the test suite holds them
to that.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalIntegrityError
from .floquet import FloquetOperator, conjugate_steps, evolve
from .spin import Axis, SpinSystem, axis_basis
from .states import DensityState

__all__ = [
    "MeasurementContext",
    "OutcomeDistribution",
    "JointDistribution",
    "projectors",
    "dephase",
    "outcome_distribution",
    "unconditional",
    "conditional",
    "joint",
]

NEGATIVE_CLIP_FLOOR = -1e-12
SUM_TOL = 1e-10
BRANCH_CUTOFF = 1e-14
DUST_FLOOR = 1e-14


@dataclass(frozen=True, eq=False)
class MeasurementContext:
    """Where a distribution came from: axis, kick count, conditioning tag."""

    axis: Axis
    time: int | None = None
    conditioning: str = "unconditional"


@dataclass(frozen=True, eq=False)
class OutcomeDistribution:
    """Probabilities over outcomes m = j..-j, index 0 holding m = +j.

    Entries within 1e-14 of zero are representation noise and become exact
    zeros, so square roots taken later cannot amplify them; the vector is
    then renormalized.  Anything below -1e-12, or a total further than
    1e-10 from one, raises NumericalIntegrityError.
    """

    probs: np.ndarray
    context: MeasurementContext | None = None

    def __post_init__(self) -> None:
        p = np.array(self.probs, dtype=float).ravel()
        lo = float(p.min())
        if lo < NEGATIVE_CLIP_FLOOR:
            raise NumericalIntegrityError(f"probability {lo:.3e} below clipping floor")
        total = float(p.sum())
        if abs(total - 1.0) > SUM_TOL:
            raise NumericalIntegrityError(f"probabilities sum to {total!r}, not 1")
        p[np.abs(p) < DUST_FLOOR] = 0.0
        p = p.clip(min=0.0)
        p = p / p.sum()
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """P(b, a): rows are the later outcome b, columns the earlier outcome a."""

    matrix: np.ndarray
    context: MeasurementContext | None = None

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=float)
        lo = float(m.min())
        if lo < NEGATIVE_CLIP_FLOOR:
            raise NumericalIntegrityError(f"joint probability {lo:.3e} below clipping floor")
        total = float(m.sum())
        if abs(total - 1.0) > SUM_TOL:
            raise NumericalIntegrityError(f"joint probabilities sum to {total!r}, not 1")
        m[np.abs(m) < DUST_FLOOR] = 0.0
        m = m.clip(min=0.0)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def bob_marginal(self) -> OutcomeDistribution:
        return OutcomeDistribution(self.matrix.sum(axis=1), context=self.context)

    def alice_marginal(self) -> OutcomeDistribution:
        return OutcomeDistribution(self.matrix.sum(axis=0), context=self.context)


def _system_for(rho_dim: int) -> SpinSystem:
    return SpinSystem((rho_dim - 1) / 2)


def projectors(system: SpinSystem, axis: Axis) -> list[np.ndarray]:
    """Rank-1 projectors onto the J.a eigenstates, ordered m = j..-j."""
    vectors = axis_basis(system, axis).vectors
    return [np.outer(vectors[:, k], vectors[:, k].conj()) for k in range(system.dim)]


def _dephase_matrix(matrix: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    in_basis = vectors.conj().T @ matrix @ vectors
    diag = np.diag(in_basis).real
    return (vectors * diag) @ vectors.conj().T


def dephase(rho: DensityState, axis: Axis) -> DensityState:
    """Non-selective measurement along the axis: off-diagonals dropped there.

    The diagonal in the measurement basis survives untouched, so the
    outcome statistics of an immediate repeat measurement do not change.
    """
    vectors = axis_basis(_system_for(rho.dim), axis).vectors
    return DensityState(_dephase_matrix(rho.matrix, vectors))


def born_values(matrix: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """Raw Born weights <a_k| rho |a_k> before any clipping."""
    return np.einsum("ik,ij,jk->k", vectors.conj(), matrix, vectors).real


def outcome_distribution(
    rho: DensityState, axis: Axis, context: MeasurementContext | None = None
) -> OutcomeDistribution:
    """Born probabilities of a projective J.a measurement on rho."""
    vectors = axis_basis(_system_for(rho.dim), axis).vectors
    if context is None:
        context = MeasurementContext(axis=axis)
    return OutcomeDistribution(born_values(rho.matrix, vectors), context=context)


def unconditional(
    rho0: DensityState, floquet: FloquetOperator, t_beta: int, axis_b: Axis
) -> OutcomeDistribution:
    """Statistics of a single measurement after t_beta kicks."""
    if t_beta < 0:
        raise ValueError(f"t_beta must be non-negative, got {t_beta!r}")
    ctx = MeasurementContext(axis=axis_b, time=t_beta, conditioning="unconditional")
    return outcome_distribution(evolve(rho0, floquet, t_beta), axis_b, context=ctx)


def _check_times(t_alpha: int, t_beta: int) -> None:
    if not 0 <= t_alpha < t_beta:
        raise ValueError(f"need 0 <= t_alpha < t_beta, got ({t_alpha!r}, {t_beta!r})")


def conditional(
    rho0: DensityState,
    floquet: FloquetOperator,
    t_alpha: int,
    t_beta: int,
    axis_a: Axis,
    axis_b: Axis,
) -> OutcomeDistribution:
    """Later-measurement statistics when an earlier result was ignored.

    The state is dephased along axis_a after t_alpha kicks, then evolved to
    t_beta and measured along axis_b.
    """
    _check_times(t_alpha, t_beta)
    rho_a = dephase(evolve(rho0, floquet, t_alpha), axis_a)
    ctx = MeasurementContext(axis=axis_b, time=t_beta, conditioning="conditional")
    return outcome_distribution(evolve(rho_a, floquet, t_beta - t_alpha), axis_b, context=ctx)


def joint(
    rho0: DensityState,
    floquet: FloquetOperator,
    t_alpha: int,
    t_beta: int,
    axis_a: Axis,
    axis_b: Axis,
) -> JointDistribution:
    """Outcome pairs from projecting at t_alpha and measuring at t_beta.

    Each earlier outcome a spawns the branch A_a rho A_a, evolved forward
    and read out along axis_b.  Branches below weight 1e-14 are skipped and
    contribute an all-zero column.
    """
    _check_times(t_alpha, t_beta)
    system = _system_for(rho0.dim)
    rho_a = evolve(rho0, floquet, t_alpha).matrix
    va = axis_basis(system, axis_a).vectors
    vb = axis_basis(system, axis_b).vectors
    u = floquet.matrix
    gap = t_beta - t_alpha
    out = np.zeros((system.dim, system.dim))
    for a in range(system.dim):
        proj = np.outer(va[:, a], va[:, a].conj())
        branch = proj @ rho_a @ proj
        if branch.trace().real < BRANCH_CUTOFF:
            continue
        branch = conjugate_steps(branch, u, gap)
        out[:, a] = born_values(branch, vb)
    ctx = MeasurementContext(axis=axis_b, time=t_beta, conditioning="joint")
    return JointDistribution(out, context=ctx)
