"""Self-checks for the operator algebra the simulator leans on.

Three kinds of check, because they fail differently.  An identity holds to
rounding and gets an absolute tolerance.  A scaling check watches how a
truncation residual shrinks with the kick strength; the residual itself is
not small, but its decay rate is pinned.  A drift check accumulates error
over many steps and bounds the total.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .floquet import TopParams, build_floquet
from .spin import (
    SpinSystem,
    X_AXIS,
    Y_AXIS,
    Z_AXIS,
    axis_basis,
    build_generators,
    rotation_operator,
)

__all__ = ["CheckResult", "VerificationReport", "run_suite"]

IDENTITY_TOL = 1e-12
COMMUTATOR_TOL = 1e-9
DRIFT_TOL = 1e-9
RATIO_CENTER = 100.0
RATIO_HALF_WIDTH = 15.0


@dataclass(frozen=True)
class CheckResult:
    name: str
    j: float | None
    residual: float
    tolerance: float
    kind: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    results: tuple[CheckResult, ...]
    all_passed: bool = field(init=False)
    max_identity_residual: float = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "all_passed", all(r.passed for r in self.results))
        identity = [r.residual for r in self.results if r.kind == "identity"]
        object.__setattr__(
            self, "max_identity_residual", max(identity) if identity else 0.0
        )

    def format_lines(self) -> list[str]:
        lines = []
        for r in self.results:
            status = "ok" if r.passed else "FAIL"
            where = f"j={r.j:g}" if r.j is not None else "classical"
            tail = f"  ({r.detail})" if r.detail else ""
            lines.append(
                f"[{status}] {r.name:<28s} {where:<10s} "
                f"{r.kind:<8s} residual={r.residual:.3e} tol={r.tolerance:.3e}{tail}"
            )
        lines.append(
            f"{'all checks passed' if self.all_passed else 'CHECKS FAILED'}; "
            f"worst identity residual {self.max_identity_residual:.3e}"
        )
        return lines


def _projectors(vectors: np.ndarray) -> list[np.ndarray]:
    return [np.outer(vectors[:, k], vectors[:, k].conj()) for k in range(vectors.shape[1])]


def _maxabs(matrix: np.ndarray) -> float:
    return float(np.abs(matrix).max())


def _result(name: str, j: float | None, residual: float, tol: float, kind: str,
            detail: str = "") -> CheckResult:
    return CheckResult(name, j, residual, tol, kind, residual <= tol, detail)


def check_rotation_conjugations(system: SpinSystem,
                                rotation: np.ndarray | None = None) -> list[CheckResult]:
    """Conjugation by the half-turn about y, compared projector by projector."""
    if rotation is None:
        rotation = rotation_operator(system, Y_AXIS, math.pi / 2)
    dim = system.dim
    pz = _projectors(axis_basis(system, Z_AXIS).vectors)
    px = _projectors(axis_basis(system, X_AXIS).vectors)
    py = _projectors(axis_basis(system, Y_AXIS).vectors)

    def conj(p: np.ndarray) -> np.ndarray:
        return rotation @ p @ rotation.conj().T

    j = system.j
    r_z_to_x = max(_maxabs(conj(pz[k]) - px[k]) for k in range(dim))
    r_x_flip = max(_maxabs(conj(px[k]) - pz[dim - 1 - k]) for k in range(dim))
    r_y_fixed = max(_maxabs(conj(py[k]) - py[k]) for k in range(dim))
    double = rotation @ rotation
    r_half_turn = max(
        _maxabs(double @ pz[k] @ double.conj().T - pz[dim - 1 - k]) for k in range(dim)
    )
    parity = (-1.0) ** round(2 * system.j)
    fourth = np.linalg.matrix_power(rotation, 4)
    r_fourth = _maxabs(fourth - parity * np.eye(dim))
    return [
        _result("rotation z->x", j, r_z_to_x, IDENTITY_TOL, "identity"),
        _result("rotation x->-z", j, r_x_flip, IDENTITY_TOL, "identity"),
        _result("rotation y fixed", j, r_y_fixed, IDENTITY_TOL, "identity"),
        _result("half-turn m-flip", j, r_half_turn, IDENTITY_TOL, "identity"),
        _result("fourth power parity", j, r_fourth, IDENTITY_TOL, "identity"),
    ]


def check_axis_swap(system: SpinSystem) -> CheckResult:
    """Quarter turn about z should carry the x eigenbasis onto the y one."""
    rz = rotation_operator(system, Z_AXIS, math.pi / 2)
    px = _projectors(axis_basis(system, X_AXIS).vectors)
    py = _projectors(axis_basis(system, Y_AXIS).vectors)
    residual = max(
        _maxabs(rz @ px[k] @ rz.conj().T - py[k]) for k in range(system.dim)
    )
    return _result("quarter-turn x->y", system.j, residual, IDENTITY_TOL, "identity")


def check_torsion_invariance(system: SpinSystem, kappa0: float = 2.5,
                             torsion: np.ndarray | None = None) -> CheckResult:
    """The kick is diagonal where the z projectors live, so it must fix them."""
    if torsion is None:
        torsion = build_floquet(TopParams(system, kappa0)).torsion
    pz = _projectors(axis_basis(system, Z_AXIS).vectors)
    residual = max(
        _maxabs(torsion @ p @ torsion.conj().T - p) for p in pz
    )
    return _result("kick fixes z projectors", system.j, residual, IDENTITY_TOL, "identity")


def _top_state_commutator(system: SpinSystem) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    _, _, jz = build_generators(system)
    vx = axis_basis(system, X_AXIS).vectors
    x_top = np.outer(vx[:, 0], vx[:, 0].conj())
    commutator = jz @ jz @ x_top - x_top @ jz @ jz
    return x_top, commutator, vx


def check_commutator_identity(system: SpinSystem) -> CheckResult:
    """Closed form of [Jz^2, P] for the top x eigenprojector.

    The commutator couples the projector only to the state two rungs down,
    with weight sqrt(j(2j-1))/2 and the lowering side carrying the plus sign.
    """
    j = system.j
    x_top, commutator, vx = _top_state_commutator(system)
    coeff = 0.5 * math.sqrt(j * (2 * j - 1))
    ladder = np.outer(vx[:, 2], vx[:, 0].conj()) - np.outer(vx[:, 0], vx[:, 2].conj())
    residual = _maxabs(commutator - coeff * ladder)
    return _result("commutator closed form", j, residual, COMMUTATOR_TOL, "identity")


def check_kick_expansion(
    system: SpinSystem,
    kappa_pair: tuple[float, float] = (0.1, 0.01),
    torsion_for: Callable[[float], np.ndarray] | None = None,
) -> CheckResult:
    """First-order expansion of the kick acting on the top x projector.

    The truncation residual is genuinely O(kappa^2), so shrinking kappa
    tenfold must shrink it about a hundredfold.  A sign error anywhere in
    the kick breaks the cancellation and the ratio collapses to about 10.
    """
    if torsion_for is None:
        def torsion_for(k: float) -> np.ndarray:
            return build_floquet(TopParams(system, k)).torsion

    x_top, commutator, _ = _top_state_commutator(system)

    def residual(kappa: float) -> float:
        t = torsion_for(kappa)
        lhs = t @ x_top @ t.conj().T
        rhs = x_top - (1j * kappa / (2 * system.j)) * commutator
        return _maxabs(lhs - rhs)

    big, small = kappa_pair
    ratio = residual(big) / residual(small)
    return _result(
        "kick expansion scaling",
        system.j,
        abs(ratio - RATIO_CENTER),
        RATIO_HALF_WIDTH,
        "scaling",
        detail=f"ratio {ratio:.2f}, want {RATIO_CENTER:.0f}+-{RATIO_HALF_WIDTH:.0f}",
    )


def check_free_cycle(system: SpinSystem) -> CheckResult:
    """With no kick the top marches z -> x -> -z -> -x and home in four steps."""
    u = build_floquet(TopParams(system, 0.0)).matrix
    dim = system.dim
    vz = axis_basis(system, Z_AXIS).vectors
    vx = axis_basis(system, X_AXIS).vectors
    targets = [vx[:, 0], vz[:, dim - 1], vx[:, dim - 1], vz[:, 0]]
    state = vz[:, 0]
    worst = 0.0
    for target in targets:
        state = u @ state
        worst = max(worst, 1.0 - abs(np.vdot(target, state)))
    return _result("free four-step cycle", system.j, worst, IDENTITY_TOL, "identity")


def check_unitarity(system: SpinSystem, kappa0: float = 3.0) -> CheckResult:
    u = build_floquet(TopParams(system, kappa0)).matrix
    residual = _maxabs(u.conj().T @ u - np.eye(system.dim))
    return _result("one-step unitarity", system.j, residual, IDENTITY_TOL, "identity")


def check_classical_drift(kappa0: float = 6.0, steps: int = 10_000) -> CheckResult:
    """Raw map iterations, no renormalization: the sphere must hold itself."""
    x, y, z = 0.2, 0.3, math.sqrt(1.0 - 0.2**2 - 0.3**2)
    worst = 0.0
    for _ in range(steps):
        c, s = math.cos(kappa0 * x), math.sin(kappa0 * x)
        x, y, z = z * c + y * s, -z * s + y * c, -x
        worst = max(worst, abs(x * x + y * y + z * z - 1.0))
    return _result(
        "classical sphere drift", None, worst, DRIFT_TOL, "drift",
        detail=f"{steps} steps at kappa0={kappa0:g}",
    )


def run_suite(j_values: Sequence[float] | None = None) -> VerificationReport:
    """Run every check across a spread of spin sizes and collect the verdicts."""
    if j_values is None:
        j_values = (0.5, 1, 2, 5, 15)
    results: list[CheckResult] = []
    for j in j_values:
        system = SpinSystem(j)
        results.extend(check_rotation_conjugations(system))
        results.append(check_axis_swap(system))
        results.append(check_free_cycle(system))
        if j >= 1:
            results.append(check_torsion_invariance(system))
            results.append(check_unitarity(system))
            results.append(check_kick_expansion(system))
            results.append(check_commutator_identity(system))
    results.append(check_classical_drift())
    return VerificationReport(tuple(results))
