"""Spin algebra layer: generators, rotations, axis bases, coherent states."""
from __future__ import annotations

import math

import numpy as np
import pytest

from exact_reference import half_pi_overlap_probs
from kickedtop import (
    Axis,
    SpinSystem,
    X_AXIS,
    Y_AXIS,
    Z_AXIS,
    axis_basis,
    axis_operator,
    build_generators,
    coherent_state,
    rotation_operator,
)


def test_system_basics():
    s = SpinSystem(15)
    assert s.dim == 31
    assert s.j == 15
    np.testing.assert_array_equal(s.magnetic_numbers(), np.arange(15, -16, -1))


def test_system_half_integer():
    s = SpinSystem(0.5)
    assert s.dim == 2
    assert SpinSystem(2.5).dim == 6


@pytest.mark.parametrize("bad", [-1, 0.3, 1.25, float("nan")])
def test_system_rejects_bad_j(bad):
    with pytest.raises(ValueError):
        SpinSystem(bad)


def test_axis_must_be_unit():
    Axis(0.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        Axis(0.0, 0.0, 1.01)


@pytest.mark.parametrize("j", [0.5, 1, 2, 15])
def test_commutation_relations(j):
    jx, jy, jz = build_generators(SpinSystem(j))
    for a, b, c in ((jx, jy, jz), (jy, jz, jx), (jz, jx, jy)):
        np.testing.assert_allclose(a @ b - b @ a, 1j * c, atol=1e-12)
    casimir = jx @ jx + jy @ jy + jz @ jz
    np.testing.assert_allclose(
        casimir, j * (j + 1) * np.eye(int(2 * j + 1)), atol=1e-12
    )


def test_jz_diagonal_descending():
    _, _, jz = build_generators(SpinSystem(2))
    np.testing.assert_array_equal(np.diag(jz).real, [2, 1, 0, -1, -2])


@pytest.mark.parametrize("j", [1, 7.5])
def test_rotation_unitary_and_inverse(j):
    s = SpinSystem(j)
    r = rotation_operator(s, Y_AXIS, 0.7)
    np.testing.assert_allclose(r @ r.conj().T, np.eye(s.dim), atol=1e-13)
    r_back = rotation_operator(s, Y_AXIS, -0.7)
    np.testing.assert_allclose(r @ r_back, np.eye(s.dim), atol=1e-13)


def test_axis_basis_diagonalizes_axis_operator():
    s = SpinSystem(2)
    for axis in (X_AXIS, Y_AXIS, Z_AXIS, Axis(0.6, 0.0, 0.8)):
        v = axis_basis(s, axis).vectors
        op = axis_operator(s, axis)
        d = v.conj().T @ op @ v
        np.testing.assert_allclose(d, np.diag(s.magnetic_numbers()), atol=1e-12)


def test_x_basis_is_rotated_z_basis():
    # The x eigenvectors must be exactly the half-turn image of the z ones,
    # phases included; the conditional pipeline depends on this convention.
    s = SpinSystem(5)
    r = rotation_operator(s, Y_AXIS, math.pi / 2)
    np.testing.assert_allclose(
        axis_basis(s, X_AXIS).vectors, r @ axis_basis(s, Z_AXIS).vectors, atol=1e-13
    )


def test_z_basis_is_identity():
    s = SpinSystem(3)
    np.testing.assert_array_equal(axis_basis(s, Z_AXIS).vectors, np.eye(7))


@pytest.mark.parametrize("j", [1, 2, 15])
def test_half_turn_overlaps_match_exact_fractions(j):
    expected = np.array(
        [[float(q) for q in row] for row in half_pi_overlap_probs(j)]
    )
    s = SpinSystem(j)
    vx = axis_basis(s, X_AXIS).vectors
    got = np.abs(vx) ** 2  # z basis is the computational one
    np.testing.assert_allclose(got, expected, atol=1e-13)


def test_coherent_state_picks_extremal_columns():
    s = SpinSystem(2)
    top = coherent_state(s, Z_AXIS)
    bottom = coherent_state(s, Z_AXIS, sign=-1)
    np.testing.assert_array_equal(top, np.eye(5)[:, 0])
    np.testing.assert_array_equal(bottom, np.eye(5)[:, 4])
    along_y = coherent_state(s, Y_AXIS)
    jy = axis_operator(s, Y_AXIS)
    np.testing.assert_allclose(jy @ along_y, 2 * along_y, atol=1e-12)


def test_axis_basis_cache_returns_same_object():
    s = SpinSystem(4)
    assert axis_basis(s, X_AXIS) is axis_basis(s, X_AXIS)
    assert not axis_basis(s, X_AXIS).vectors.flags.writeable
