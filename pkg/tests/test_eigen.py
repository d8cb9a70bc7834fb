import numpy as np
import pytest

from orlicz_lab import eigen, rearrange, young
from orlicz_lab.errors import DegenerateInputError
from orlicz_lab.radial import RadialProfile, ball_measure, bump, cone

UNIT3 = ball_measure(3, 1.0)
ONE = rearrange.constant(1.0, UNIT3, 3)


def test_functionals_on_cone():
    F = young.power(2)
    U = cone(0.0, 1.0, 3)
    assert eigen.j_phi(F, U) == pytest.approx(4 * np.pi / 3, rel=1e-12)
    assert eigen.g_psi(ONE, F, U) == pytest.approx(4 * np.pi / 30, rel=1e-10)
    Z = RadialProfile(np.array([0.0, 1.0]), np.array([0.0, 0.0]), 3)
    assert (eigen.j_phi(F, Z), eigen.g_psi(ONE, F, Z)) == (0.0, 0.0)


def test_project_to_level_power_closed_form():
    G = young.power(3)
    U = bump(3, 1.0, 200)
    g0 = eigen.g_psi(ONE, G, U)
    V = eigen.project_to_level(ONE, G, U, 2.0)
    assert V.u.max() / U.u.max() == pytest.approx((2.0 / g0) ** (1 / 3), rel=1e-12)
    same = eigen.project_to_level(ONE, G, U, g0)
    assert np.allclose(same.u, U.u, rtol=1e-12)


def test_project_to_level_maxpow_scan():
    G = young.maxpow(2, 3)
    U = bump(3, 1.0, 200)
    r = 0.37
    V = eigen.project_to_level(ONE, G, U, r)
    t = V.u.max() / U.u.max()
    grid = np.linspace(0.5 * t, 1.5 * t, 201)
    vals = np.array([eigen.g_psi(ONE, G, U.scale(s)) for s in grid])
    scan = grid[np.argmin(np.abs(vals - r))]
    assert abs(scan - t) <= 0.5 * (grid[1] - grid[0])
    assert eigen.g_psi(ONE, G, V) == pytest.approx(r, rel=1e-10)


def test_project_degenerate():
    Z = RadialProfile(np.array([0.0, 1.0]), np.array([0.0, 0.0]), 3)
    with pytest.raises(DegenerateInputError):
        eigen.project_to_level(ONE, young.power(2), Z, 1.0)


def test_laplacian_eigenvalue_small_grid():
    F = young.power(2)
    res = eigen.minimize_lambda1(F, F, ONE, 3, 1.0, 1.0, nodes=400)
    assert res.lambda_tilde == pytest.approx(np.pi**2, rel=5e-3)
    assert res.constraint_error <= 1e-8
    assert np.all(res.profile.u >= 0)
    # J is nonincreasing along accepted iterates
    assert np.all(np.diff(res.history) <= 1e-12 * res.history[0])


def test_grid_convergence():
    F, G = young.power(2), young.power(3)
    a = eigen.minimize_lambda1(F, G, ONE, 3, 1.0, 1.0, nodes=400).lambda_tilde
    b = eigen.minimize_lambda1(F, G, ONE, 3, 1.0, 1.0, nodes=800).lambda_tilde
    assert abs(a / b - 1) < 2e-3


def test_multiplier_identity_and_restarts():
    p, q = 2.0, 3.0
    F, G = young.power(p), young.power(q)
    res = eigen.minimize_lambda1(F, G, ONE, 3, 1.0, 2.0, nodes=400, restarts=2, seed=3)
    assert res.lambda1 == pytest.approx(q * 2.0 / p * res.lambda_tilde, rel=1e-2)
    assert any("restarts=2" in n for n in res.notes)


def test_as_dict_has_label_and_samples():
    F = young.power(2)
    d = eigen.minimize_lambda1(F, F, ONE, 3, 1.0, 1.0, nodes=200).as_dict(samples=10)
    assert d["label"] == "radial lambda1"
    assert len(d["profile"]["rho"]) == 10
