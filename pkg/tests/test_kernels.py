import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orlicz_lab import kernels
from orlicz_lab.kernels import MAXPOW, POWER, POWLOG, SUMPOW, get_backend

py = get_backend("python")
try:
    cc = get_backend("compiled")
except ImportError:  # extension not built
    cc = None

needs_compiled = pytest.mark.skipif(cc is None, reason="compiled kernels not built")
CODES = (POWER, SUMPOW, MAXPOW, POWLOG)
T = np.geomspace(1e-8, 1e8, 4001)


def test_backend_name():
    assert kernels.BACKEND_NAME in ("compiled", "python")


@needs_compiled
@pytest.mark.parametrize("code", CODES)
def test_eval_agreement(code):
    for fn in ("phi_eval", "dphi_eval"):
        a = getattr(py, fn)(code, 2.5, 3.5, 1.7, T)
        b = getattr(cc, fn)(code, 2.5, 3.5, 1.7, T)
        assert np.allclose(a, b, rtol=1e-13, atol=0)


@needs_compiled
@pytest.mark.parametrize("code", CODES)
def test_inverse_agreement(code):
    y = py.phi_eval(code, 2.5, 3.5, 1.0, T)
    for fn in ("phi_inverse", "dphi_inverse"):
        a, oka = getattr(py, fn)(code, 2.5, 3.5, 1.0, y)
        b, okb = getattr(cc, fn)(code, 2.5, 3.5, 1.0, y)
        assert oka and okb
        assert np.allclose(a, b, rtol=1e-9)
    x, _ = cc.phi_inverse(code, 2.5, 3.5, 1.0, y)
    assert np.allclose(x, T, rtol=1e-9)


@needs_compiled
@settings(max_examples=40, deadline=None)
@given(code=st.sampled_from(CODES), p=st.floats(1.1, 5.0), q=st.floats(1.1, 5.0),
       seed=st.integers(0, 2**31))
def test_radial_energy_agreement(code, p, q, seed):
    rng = np.random.default_rng(seed)
    u = np.concatenate([np.sort(rng.random(200))[::-1], [0.0]])
    u[5] = u[6]  # a flat cell
    w = rng.random(200)
    e1, g1 = py.radial_energy(code, p, q, 1.3, u, 0.01, w)
    e2, g2 = cc.radial_energy(code, p, q, 1.3, u, 0.01, w)
    assert e1 == pytest.approx(e2, rel=1e-12)
    assert np.allclose(g1, g2, rtol=1e-11, atol=1e-12 * np.max(np.abs(g1)))


def test_radial_energy_gradient_matches_difference_quotient():
    rng = np.random.default_rng(1)
    u = np.concatenate([np.sort(rng.random(30))[::-1] + 0.1, [0.0]])
    w = rng.random(30)
    e, g = kernels.radial_energy(SUMPOW, 2.0, 3.0, 1.0, u, 0.1, w)
    k = 7
    h = 1e-6
    up = u.copy()
    up[k] += h
    dn = u.copy()
    dn[k] -= h
    fd = (kernels.radial_energy(SUMPOW, 2.0, 3.0, 1.0, up, 0.1, w)[0]
          - kernels.radial_energy(SUMPOW, 2.0, 3.0, 1.0, dn, 0.1, w)[0]) / (2 * h)
    assert g[k] == pytest.approx(fd, rel=1e-6)


def test_bisect_increasing_right_continuous_inverse():
    # step-free monotone map with a plateau: sup{t : f(t) <= y}
    f = lambda t: np.minimum(t, 1.0) + np.maximum(t - 2.0, 0.0)  # noqa: E731
    t, ok = kernels.bisect_increasing(f, np.array([0.5, 1.0, 1.5]))
    assert ok
    assert np.allclose(t, [0.5, 2.0, 2.5], rtol=1e-9)
