"""Shared builders for randomized test inputs."""
from __future__ import annotations

import numpy as np

from kickedtop import DensityState


def random_density(rng: np.random.Generator, dim: int) -> DensityState:
    """A full-rank random density matrix via a Ginibre draw."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = g @ g.conj().T
    return DensityState(m / np.trace(m).real)


def random_probs(rng: np.random.Generator, size: int) -> np.ndarray:
    p = rng.random(size) + 1e-6
    return p / p.sum()
