"""Classical limit of the kicked top: the unit-sphere map and its stability.

One period sends (X, Y, Z) to

    X' = Z cos(kappa0 X) + Y sin(kappa0 X)
    Y' = -Z sin(kappa0 X) + Y cos(kappa0 X)
    Z' = -X

The poles (0, +-1, 0) are fixed points for every kappa0 and the equator
carries the 4-cycle (0,0,1) -> (1,0,0) -> (0,0,-1) -> (-1,0,0).
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ClassicalPoint",
    "classical_step",
    "classical_orbit",
    "cycle_stability_indicator",
    "stability_boundaries",
]

log = logging.getLogger(__name__)

NORM_TOL = 1e-9
DRIFT_TOL = 1e-12


@dataclass(frozen=True)
class ClassicalPoint:
    """Point on the unit sphere; construction rejects off-sphere input."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        n = math.sqrt(self.x**2 + self.y**2 + self.z**2)
        if not math.isfinite(n) or abs(n - 1.0) > NORM_TOL:
            raise ValueError(f"point must sit on the unit sphere, |p| = {n!r}")

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def distance_to(self, other: "ClassicalPoint") -> float:
        return float(np.linalg.norm(self.vector - other.vector))


def classical_step(point: ClassicalPoint, kappa0: float) -> ClassicalPoint:
    """One period of the map, renormalizing if rounding pushed |p| off 1."""
    x, y, z = point.x, point.y, point.z
    c, s = math.cos(kappa0 * x), math.sin(kappa0 * x)
    xn = z * c + y * s
    yn = -z * s + y * c
    zn = -x
    norm = math.sqrt(xn**2 + yn**2 + zn**2)
    if abs(norm - 1.0) > DRIFT_TOL:
        log.debug("renormalizing classical point, drift %.3e", abs(norm - 1.0))
        xn, yn, zn = xn / norm, yn / norm, zn / norm
    return ClassicalPoint(xn, yn, zn)


def classical_orbit(point: ClassicalPoint, kappa0: float, steps: int) -> list[ClassicalPoint]:
    """Orbit of length steps+1 including the starting point."""
    if steps < 0:
        raise ValueError(f"steps must be non-negative, got {steps!r}")
    orbit = [point]
    for _ in range(steps):
        orbit.append(classical_step(orbit[-1], kappa0))
    return orbit


def cycle_stability_indicator(kappa0: float) -> float:
    """Squared trace of the monodromy of the equatorial 4-cycle.

    The cycle is stable while the value stays below 4.
    """
    return (2 * math.cos(kappa0) + kappa0 * math.sin(kappa0)) ** 2


def stability_boundaries(
    kappa_lo: float,
    kappa_hi: float,
    grid_step: float = 1e-3,
    refine_tol: float = 1e-8,
) -> tuple[float, ...]:
    """Roots of indicator(kappa0) = 4 inside [kappa_lo, kappa_hi].

    Scans a grid no coarser than grid_step for sign changes of
    indicator - 4, then bisects each bracket down to refine_tol.
    """
    if not (0 <= kappa_lo < kappa_hi <= 20):
        raise ValueError(f"need 0 <= lo < hi <= 20, got ({kappa_lo!r}, {kappa_hi!r})")
    if grid_step <= 0 or grid_step > 1e-3:
        raise ValueError(f"grid_step must be in (0, 1e-3], got {grid_step!r}")

    def f(k: float) -> float:
        return cycle_stability_indicator(k) - 4.0

    count = int(math.ceil((kappa_hi - kappa_lo) / grid_step))
    grid = np.linspace(kappa_lo, kappa_hi, count + 1)
    values = np.array([f(k) for k in grid])
    roots: list[float] = []
    for i in range(count):
        a, b = float(grid[i]), float(grid[i + 1])
        fa, fb = float(values[i]), float(values[i + 1])
        if fa == 0.0:
            roots.append(a)
            continue
        if fa * fb >= 0.0:
            continue
        while b - a > refine_tol:
            mid = 0.5 * (a + b)
            fm = f(mid)
            if fm == 0.0:
                a = b = mid
                break
            if fa * fm < 0.0:
                b = mid
            else:
                a, fa = mid, fm
        roots.append(0.5 * (a + b))
    if values[-1] == 0.0:
        roots.append(float(grid[-1]))
    return tuple(roots)
