import math

import numpy as np
import pytest

from radius_lab.errors import DimensionMismatch
from radius_lab.linalg import spectral_norm
from radius_lab.numrange import (
    numerical_radius,
    numerical_range_boundary,
    omega_2x2_oracle,
    rotated_real_part,
    support_values,
)

from conftest import random_matrix


def test_known_radii():
    assert numerical_radius(np.diag([2, 4])).omega == pytest.approx(4.0, abs=1e-12)
    assert numerical_radius(np.array([[0, 0], [3, 0]])).omega == pytest.approx(1.5, abs=1e-10)
    assert numerical_radius(np.array([[2, 1], [0, 4]])).omega == pytest.approx(3 + math.sqrt(1.25), abs=1e-10)


def test_zero_matrix():
    res = numerical_radius(np.zeros((3, 3)))
    assert res.omega == 0.0 and res.certified_error == 0.0 and res.witness is None


def test_witness_attains_radius():
    A = random_matrix("ginibre", 6, 7, 0)
    res = numerical_radius(A)
    x = res.witness
    assert np.linalg.norm(x) == pytest.approx(1.0)
    assert abs(np.vdot(x, A @ x)) == pytest.approx(res.omega, rel=1e-10)


@pytest.mark.parametrize("i", range(20))
def test_radius_between_half_norm_and_norm(i):
    A = random_matrix("ginibre", 2 + i % 7, 8, i)
    res = numerical_radius(A)
    nrm = spectral_norm(A)
    assert nrm / 2 - res.certified_error - 1e-9 <= res.omega <= nrm + res.certified_error + 1e-9


def test_scaling_and_rotation():
    A = random_matrix("ginibre", 4, 9, 0)
    w = numerical_radius(A).omega
    c = 0.7 - 1.9j
    assert numerical_radius(c * A).omega == pytest.approx(abs(c) * w, rel=1e-10)
    assert numerical_radius(np.exp(0.3j) * A).omega == pytest.approx(w, rel=1e-10)


def test_denser_grid_does_not_lose_radius():
    A = random_matrix("ginibre", 5, 10, 0)
    coarse = numerical_radius(A, grid=64)
    fine = numerical_radius(A, grid=4096)
    assert fine.omega >= coarse.omega - coarse.certified_error - 1e-12


def test_normal_radius_is_spectral_radius():
    A = random_matrix("normal", 5, 11, 0)
    rho = np.max(np.abs(np.linalg.eigvals(A)))
    assert numerical_radius(A).omega == pytest.approx(rho, rel=1e-9)


def test_rotated_real_part_is_hermitian():
    A = random_matrix("ginibre", 3, 12, 0)
    H = rotated_real_part(A, 0.4)
    assert np.allclose(H, H.conj().T)
    assert support_values(A, [0.4])[0] == pytest.approx(np.linalg.eigvalsh(H)[-1])


def test_oracle_rejects_non_2x2():
    with pytest.raises(DimensionMismatch):
        omega_2x2_oracle(np.eye(3))


def test_oracle_degenerate_cases():
    assert omega_2x2_oracle(np.eye(2)) == pytest.approx(1.0)
    assert omega_2x2_oracle(np.diag([1j, -2])) == pytest.approx(2.0)
    assert omega_2x2_oracle(np.array([[0, 0], [3, 0]])) == pytest.approx(1.5)


def test_boundary_of_nilpotent_is_circle():
    pts = numerical_range_boundary(np.array([[0, 0], [3, 0]]), 360)
    assert len(pts) == 360
    assert max(abs(p.boundary_point) for p in pts) == pytest.approx(1.5, abs=1e-6)
    assert all(abs(abs(p.boundary_point) - 1.5) < 1e-9 for p in pts)


def test_boundary_of_identity_and_segment():
    assert all(abs(p.boundary_point - 1) < 1e-12 for p in numerical_range_boundary(np.eye(2), 12))
    seg = numerical_range_boundary(np.diag([0.0, 1.0]), 36)
    assert all(abs(p.boundary_point.imag) < 1e-12 and -1e-12 <= p.boundary_point.real <= 1 + 1e-12 for p in seg)


def test_boundary_rejects_too_few_samples():
    with pytest.raises(ValueError):
        numerical_range_boundary(np.eye(2), 2)
