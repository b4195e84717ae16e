"""Distance measures between measurement statistics, and their time averages.

The two headline quantities compare the later measurement's distribution
with and without the earlier one: a Hellinger distance and the change in
the participation ratio 1 / sum(p^2).  The l1 coherence of the evolving
state in the first measurement's eigenbasis tracks how much there is to
destroy in the first place.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalIntegrityError
from .floquet import TopParams, build_floquet, conjugate_steps
from .measurement import OutcomeDistribution, _dephase_matrix, born_values
from .spin import Axis, axis_basis
from .states import DensityState

__all__ = [
    "hellinger",
    "participation",
    "delta",
    "coherence_in_basis",
    "coherence_l1",
    "Scenario",
    "DistanceSample",
    "CoherenceSample",
    "AveragedDistance",
    "distance_samples",
    "coherence_samples",
    "averaged_distance",
]

METRICS = ("hellinger", "delta", "coherence")

_CLAMP_TOL = 1e-9


def _as_probs(p) -> np.ndarray:
    if isinstance(p, OutcomeDistribution):
        return p.probs
    arr = np.asarray(p, dtype=float).ravel()
    if arr.size == 0:
        raise ValueError("empty probability vector")
    if float(arr.min()) < -1e-12:
        raise NumericalIntegrityError(f"negative probability {float(arr.min()):.3e}")
    return arr.clip(min=0.0)


def hellinger(p, q) -> float:
    """Hellinger distance sqrt(sum (sqrt(p)-sqrt(q))^2) / sqrt(2), in [0, 1]."""
    pa, qa = _as_probs(p), _as_probs(q)
    if pa.shape != qa.shape:
        raise ValueError(f"shape mismatch {pa.shape} vs {qa.shape}")
    d = float(np.sqrt(((np.sqrt(pa) - np.sqrt(qa)) ** 2).sum()) / np.sqrt(2.0))
    return min(max(d, 0.0), 1.0)


def participation(p) -> float:
    """Inverse participation ratio 1 / sum(p^2): effective outcome count.

    One for a deterministic outcome, the vector length for the flat
    distribution.  Values outside that window beyond rounding noise mean
    the input was not a distribution.
    """
    pa = _as_probs(p)
    w = 1.0 / float((pa**2).sum())
    n = pa.size
    if not 1.0 - _CLAMP_TOL <= w <= n + _CLAMP_TOL:
        raise NumericalIntegrityError(f"participation ratio {w!r} outside [1, {n}]")
    return min(max(w, 1.0), float(n))


def delta(p_conditional, p_unconditional) -> float:
    """Participation-ratio gain of the conditional over the bare statistics."""
    return participation(p_conditional) - participation(p_unconditional)


def coherence_in_basis(matrix: np.ndarray, vectors: np.ndarray) -> float:
    """Sum of off-diagonal magnitudes of the state written in the given basis."""
    in_basis = vectors.conj().T @ matrix @ vectors
    total = float(np.abs(in_basis).sum() - np.abs(np.diag(in_basis)).sum())
    return max(total, 0.0)


def coherence_l1(rho: DensityState, axis: Axis) -> float:
    """l1 coherence of rho in the eigenbasis of the spin component along axis."""
    from .measurement import _system_for

    vectors = axis_basis(_system_for(rho.dim), axis).vectors
    return coherence_in_basis(rho.matrix, vectors)


@dataclass(frozen=True, eq=False)
class Scenario:
    """A fixed initial state, kick strength, and measurement-axis pair."""

    rho0: DensityState
    params: TopParams
    axis_alice: Axis
    axis_bob: Axis


@dataclass(frozen=True)
class DistanceSample:
    t_beta: int
    t_alpha: int
    hellinger: float
    delta: float


@dataclass(frozen=True)
class CoherenceSample:
    t_alpha: int
    value: float


@dataclass(frozen=True)
class AveragedDistance:
    metric: str
    n: int
    T: int
    mean: float
    second_moment: float


def _check_window(n: int, T: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if not isinstance(T, int) or isinstance(T, bool) or T < 0:
        raise ValueError(f"T must be a non-negative integer, got {T!r}")


def _orbit(scenario: Scenario, steps: int) -> list[np.ndarray]:
    """Density matrices after 0..steps kicks, each step re-symmetrized."""
    u = build_floquet(scenario.params).matrix
    states = [scenario.rho0.matrix]
    for _ in range(steps):
        states.append(conjugate_steps(states[-1], u, 1))
    return states


def distance_samples(scenario: Scenario, n: int, T: int) -> list[DistanceSample]:
    """Both disturbance measures at lag n for t_alpha = 0..T.

    Walks the unconditional orbit once; each sample dephases the state at
    t_alpha along the first axis and carries the result n more kicks.
    """
    _check_window(n, T)
    system = scenario.params.system
    va = axis_basis(system, scenario.axis_alice).vectors
    vb = axis_basis(system, scenario.axis_bob).vectors
    u = build_floquet(scenario.params).matrix
    states = _orbit(scenario, T + n)
    samples = []
    for t_alpha in range(T + 1):
        t_beta = t_alpha + n
        p_b = OutcomeDistribution(born_values(states[t_beta], vb))
        branch = conjugate_steps(_dephase_matrix(states[t_alpha], va), u, n)
        p_c = OutcomeDistribution(born_values(branch, vb))
        samples.append(
            DistanceSample(
                t_beta=t_beta,
                t_alpha=t_alpha,
                hellinger=hellinger(p_c, p_b),
                delta=delta(p_c, p_b),
            )
        )
    return samples


def coherence_samples(scenario: Scenario, T: int) -> list[CoherenceSample]:
    """Coherence in the first measurement's basis just before each t_alpha."""
    _check_window(1, T)
    system = scenario.params.system
    va = axis_basis(system, scenario.axis_alice).vectors
    states = _orbit(scenario, T)
    return [
        CoherenceSample(t_alpha=t, value=coherence_in_basis(states[t], va))
        for t in range(T + 1)
    ]


def averaged_distance(metric: str, scenario: Scenario, n: int, T: int) -> AveragedDistance:
    """Time average and second moment of one metric over t_alpha = 0..T."""
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}, expected one of {METRICS}")
    if metric == "coherence":
        _check_window(n, T)
        values = np.array([s.value for s in coherence_samples(scenario, T)])
    else:
        samples = distance_samples(scenario, n, T)
        values = np.array([getattr(s, metric) for s in samples])
    return AveragedDistance(
        metric=metric,
        n=n,
        T=T,
        mean=float(values.mean()),
        second_moment=float((values**2).mean()),
    )
