import numpy as np
import pytest

from orlicz_lab import conjugate, young
from orlicz_lab.errors import HypothesisError


def test_h_phi_closed_form():
    # Phi = t^2/2 is self-dual; H(t) = int_0^t s^(1-N')/2 ds in closed form
    N = 4
    Np = N / (N - 1)
    F = young.power(2, 0.5)
    assert conjugate.h_phi(F, N, 1.0) == pytest.approx(0.75, rel=1e-9)
    for t in (0.1, 1.0, 10.0):
        oracle = 0.5 * t ** (2 - Np) / (2 - Np)
        assert conjugate.h_phi(F, N, t) == pytest.approx(oracle, rel=1e-9)


def test_h_phi_requires_h1():
    with pytest.raises(HypothesisError):
        conjugate.h_phi(young.power(3), 3, 1.0)


def test_h_table_monotone_and_round_trip():
    F = young.sumpow(1.5, 2.5)
    tab = conjugate.build_h_table(F, 3, 1e-10, 1e10)
    assert np.all(np.diff(tab.H) > 0)
    t = np.geomspace(1e-6, 1e6, 97)
    y = tab.value(t)
    back = np.exp(tab.log_inverse(np.log(y))[0])
    assert np.allclose(back, t, rtol=1e-8)
    assert np.allclose(y, conjugate.h_phi(F, 3, t), rtol=1e-8)


@pytest.mark.parametrize("p,N", [(2.0, 3), (2.0, 4), (3.0, 4)])
def test_power_slopes(p, N):
    s = conjugate.conjugate_bundle(young.power(p), N).slopes()
    assert s["phi_N"] == pytest.approx(N * p / (N - p), rel=1e-2)
    assert s["b_phi"] == pytest.approx(N / (N - p), rel=1e-2)
    assert s["b_phi_complement"] == pytest.approx(N / p, rel=1e-2)


def test_phi_N_slope_grows_as_N_decreases_to_p():
    slopes = [conjugate.conjugate_bundle(young.power(2), N).slopes()["phi_N"] for N in (5, 4, 3)]
    assert slopes[0] < slopes[1] < slopes[2]


def test_bundle_is_convex_and_complement_consistent():
    b = conjugate.conjugate_bundle(young.sumpow(1.5, 2.5), 3)
    assert b.b_convex
    y = np.geomspace(1e-3, 1e3, 61)
    B, Bc = b.b_phi.eval(y), b.b_phi_complement.eval(b.b_phi.derivative(y))
    # Young equality on the graph of B'
    assert np.allclose(B + Bc, y * b.b_phi.derivative(y), rtol=1e-6)


def test_phi_prec_prec_phi_N():
    F = young.power(2)
    assert young.check_prec_prec(F, conjugate.sobolev_conjugate(F, 4)).status == "consistent"
