import numpy as np
import pytest

from orlicz_lab import admit, rearrange, verify, young
from orlicz_lab.radial import RadialProfile, ball_measure, bump, cone

INF = float("inf")
UNIT3 = ball_measure(3, 1.0)


def test_lhs_rhs_closed_forms():
    F = young.power(2)
    W = rearrange.constant(1.0, UNIT3, 3)
    U = cone(0.0, 1.0, 3)
    assert verify.modular_lhs(W, F, U) == pytest.approx(np.sqrt(4 * np.pi / 30), rel=1e-10)
    assert verify.modular_rhs(F, U) == pytest.approx(np.sqrt(4 * np.pi / 3), rel=1e-10)


def test_zero_profile_and_weight():
    F = young.power(2)
    W = rearrange.constant(1.0, UNIT3, 3)
    Z = RadialProfile(np.array([0.0, 1.0]), np.array([0.0, 0.0]), 3)
    assert verify.modular_lhs(W, F, Z) == 0.0
    assert verify.modular_rhs(F, Z) == 0.0
    res = verify.run_family(rearrange.zero(3, UNIT3), F, F, "cones")
    assert all(t["ratio"] == 0.0 for t in res.tests)


def test_lhs_weight_homogeneity():
    F = young.power(2)
    W = rearrange.constant(1.0, UNIT3, 3)
    U = bump(3, 1.0, 200)
    assert verify.modular_lhs(W.scale(4.0), F, U) == pytest.approx(2 * verify.modular_lhs(W, F, U), rel=1e-12)


def test_rhs_refinement_stability():
    F = young.sumpow(2, 3)
    a = verify.modular_rhs(F, bump(3, 1.0, 800))
    b = verify.modular_rhs(F, bump(3, 1.0, 1600))
    assert abs(a / b - 1) < 1e-3


def test_lhs_singular_head_is_inf():
    F = young.power(2)
    assert verify.modular_lhs(rearrange.hardy(3.0, 3), F, cone(0.0, 1.0, 3)) == INF


def test_nested_cones_are_monotone():
    F = young.power(2)
    W = rearrange.constant(1.0, UNIT3, 3)
    small, big = cone(0.0, 0.5, 3), cone(0.2, 0.5, 3)
    assert verify.modular_lhs(W, F, small) <= verify.modular_lhs(W, F, big)


def test_hardy_dilation_invariance():
    F = young.power(2)
    res = verify.run_family(rearrange.hardy(2.0, 4), F, F, "dilate", lambdas=[0.1, 1.0, 10.0])
    r = np.array([t["ratio"] for t in res.tests])
    assert np.ptp(r) / r.mean() < 1e-6


def test_inadmissible_dilation_slope():
    p, a = 2.0, 3.0
    F = young.power(p)
    res = verify.run_family(rearrange.hardy(a, 4), F, F, "dilate")
    assert res.slope == pytest.approx((p - a) / p, abs=0.05)


def test_amplitude_invariance_for_powers():
    F = young.power(3)
    W = rearrange.constant(1.0, UNIT3, 3)
    res = verify.run_family(W, F, F, "amplitude")
    r = np.array([t["ratio"] for t in res.tests])
    assert np.ptp(r) / r.mean() < 1e-9


def test_empirical_constant_is_max_and_route_comparison():
    F = young.power(2)
    W = rearrange.hardy(2.0, 4)
    route = next(r for r in admit.admissibility_report(W, F, F, 4, INF, routes=("phi_infty",)).routes)
    res = verify.run_family(W, F, F, "cones", route=route)
    assert res.empirical_constant == max(t["ratio"] for t in res.tests)
    assert res.bound_comparison["route"] == "phi_infty" and res.bound_comparison["satisfied"]
    assert "radial family" in res.meta["note"]


def test_unknown_family():
    with pytest.raises(ValueError):
        verify.run_family(rearrange.zero(3), young.power(2), young.power(2), "spirals")
