"""One-step operator and evolution: structure, unitarity, exact special cases."""
from __future__ import annotations

import numpy as np
import pytest

from helpers import random_density
from kickedtop import (
    SpinSystem,
    TopParams,
    X_AXIS,
    Y_AXIS,
    Z_AXIS,
    axis_basis,
    build_floquet,
    coherent_state,
    evolve,
    pure,
    rotation_operator,
)


def params(j, kappa0):
    return TopParams(SpinSystem(j), kappa0)


def test_torsion_diagonal_with_exact_phases():
    j = 2
    flo = build_floquet(params(j, 1.3))
    ms = np.arange(j, -j - 1, -1)
    expected = np.exp(-1j * 1.3 * ms**2 / (2 * j))
    np.testing.assert_allclose(np.diag(flo.torsion), expected, atol=1e-15)
    off = flo.torsion - np.diag(np.diag(flo.torsion))
    assert np.abs(off).max() == 0.0


def test_zero_kick_is_pure_rotation():
    s = SpinSystem(3)
    flo = build_floquet(TopParams(s, 0.0))
    np.testing.assert_allclose(
        flo.matrix, rotation_operator(s, Y_AXIS, np.pi / 2), atol=1e-15
    )


def test_operator_order_torsion_after_rotation():
    flo = build_floquet(params(5, 2.0))
    np.testing.assert_allclose(flo.matrix, flo.torsion @ flo.rotation, atol=1e-15)
    with pytest.raises(AssertionError):
        np.testing.assert_allclose(flo.matrix, flo.rotation @ flo.torsion, atol=1e-6)


@pytest.mark.parametrize("kappa0", [0.0, 0.5, 3.0, 6.5])
def test_unitarity(kappa0):
    flo = build_floquet(params(15, kappa0))
    np.testing.assert_allclose(
        flo.matrix @ flo.matrix.conj().T, np.eye(31), atol=1e-12
    )


def test_rejects_negative_kick():
    with pytest.raises(ValueError):
        params(2, -0.1)


def test_rejects_spin_zero():
    with pytest.raises(ValueError):
        build_floquet(TopParams(SpinSystem(0), 1.0))
    build_floquet(TopParams(SpinSystem(0.5), 1.0))  # spin one-half is fine


def test_evolve_steps_validation():
    rho = pure(coherent_state(SpinSystem(1), Z_AXIS))
    flo = build_floquet(params(1, 0.7))
    with pytest.raises(ValueError):
        evolve(rho, flo, -1)
    with pytest.raises(ValueError):
        evolve(rho, flo, True)
    assert evolve(rho, flo, 0) is rho


def test_evolution_preserves_spectrum():
    rng = np.random.default_rng(11)
    rho = random_density(rng, 11)
    flo = build_floquet(params(5, 3.3))
    out = evolve(rho, flo, 25)
    np.testing.assert_allclose(
        np.linalg.eigvalsh(out.matrix), np.linalg.eigvalsh(rho.matrix), atol=1e-10
    )
    np.testing.assert_allclose(np.trace(out.matrix), 1.0, atol=1e-12)


def test_zero_kick_four_step_cycle():
    # Without the kick the pole state visits x, minus z, minus x, and returns.
    s = SpinSystem(4)
    flo = build_floquet(TopParams(s, 0.0))
    rho = pure(coherent_state(s, Z_AXIS))
    vz = axis_basis(s, Z_AXIS).vectors
    vx = axis_basis(s, X_AXIS).vectors
    stops = [vx[:, 0], vz[:, s.dim - 1], vx[:, s.dim - 1], vz[:, 0]]
    state = rho
    for stop in stops:
        state = evolve(state, flo, 1)
        overlap = float((stop.conj() @ state.matrix @ stop).real)
        assert overlap == pytest.approx(1.0, abs=1e-12)


def test_evolve_matches_matrix_power():
    s = SpinSystem(3)
    flo = build_floquet(TopParams(s, 2.6))
    rho = pure(coherent_state(s, Z_AXIS))
    u10 = np.linalg.matrix_power(flo.matrix, 10)
    direct = u10 @ rho.matrix @ u10.conj().T
    np.testing.assert_allclose(evolve(rho, flo, 10).matrix, direct, atol=1e-12)
