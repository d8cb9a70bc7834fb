import numpy as np
import pytest
from scipy import optimize
from hypothesis import given, settings
from hypothesis import strategies as st

from orlicz_lab import young
from orlicz_lab.errors import DomainError

GRID = np.geomspace(1e-6, 1e6, 2001)
exps = st.floats(min_value=1.1, max_value=6.0)


# ---------------------------------------------------------------- oracles
def test_eval_oracles():
    assert young.power(2).eval(3.0) == pytest.approx(9.0, rel=1e-15)
    assert young.maxpow(2, 3).eval(0.5) == pytest.approx(0.25, rel=1e-15)
    assert young.powlog(2).eval(0.0) == 0.0


def test_derivative_oracles():
    assert young.power(2).derivative(3.0) == pytest.approx(6.0)
    assert young.power(3).derivative(1.0) == pytest.approx(3.0)
    # right-continuous branch at the crossover
    assert young.maxpow(2, 3).derivative(1.0) == pytest.approx(3.0)


def test_inverse_oracles():
    assert young.power(2).inverse(9.0) == pytest.approx(3.0, rel=1e-10)
    assert young.power(2).inverse(0.0) == 0.0
    assert young.sumpow(2, 3).inverse(2.0) == pytest.approx(1.0, rel=1e-10)


def test_phi_inverse_oracles():
    assert young.power(2).phi_inverse(4.0) == pytest.approx(2.0, rel=1e-10)
    assert young.power(3).phi_inverse(3.0) == pytest.approx(1.0, rel=1e-10)
    assert young.power(3).phi_inverse(0.0) == 0.0


def test_negative_argument_is_domain_error():
    with pytest.raises(DomainError):
        young.power(2).eval(-1.0)
    with pytest.raises(DomainError):
        young.power(2).inverse(-1.0)


def test_complement_oracles():
    half = young.power(2, 0.5)
    assert np.allclose(half.complement().eval(GRID), 0.5 * GRID**2, rtol=1e-12)
    p = 3.0
    pp = p / (p - 1)
    Fc = young.power(p, 1 / p).complement()
    assert np.allclose(Fc.eval(GRID), GRID**pp / pp, rtol=1e-12)


def test_two_power_complement_closed_form():
    p, q = 2.0, 3.0
    pp, qq = p / (p - 1), q / (q - 1)
    F = young.two_power_density(p, q).complement()
    closed = np.where(GRID < 1, GRID**pp / pp, (GRID**qq - 1) / qq + 1 / pp)
    assert np.allclose(F.eval(GRID), closed, rtol=1e-10)


def test_p_index_oracles():
    for p in (1.5, 2.0, 3.0):
        assert young.p_index(young.power(p)) == pytest.approx(p, abs=1e-6)
    assert young.p_index(young.sumpow(2, 3)) == pytest.approx(3.0, abs=1e-4)
    # power-log: the sup sits slightly above 2 at finite t; oracle is a dense
    # grid followed by a bounded scalar maximization of the closed form
    def e(x):
        t = np.exp(x)
        return t * (2 * t * np.log(np.e + t) + t**2 / (np.e + t)) / (t**2 * np.log(np.e + t))

    x = np.linspace(np.log(1e-6), np.log(1e6), 200001)
    i = int(np.argmax(e(x)))
    res = optimize.minimize_scalar(lambda z: -e(z), bounds=(x[i - 1], x[i + 1]), method="bounded",
                                   options={"xatol": 1e-12})
    got = young.p_index(young.powlog(2))
    assert got > 2.0
    assert got == pytest.approx(-res.fun, rel=1e-6)


def test_delta_certificates():
    d2 = young.check_delta2(young.power(2))
    assert d2.status == "consistent" and d2.constant == pytest.approx(4.0, rel=1e-9)
    dp = young.check_deltaprime(young.power(2))
    assert dp.status == "consistent" and dp.constant == pytest.approx(1.0, rel=1e-9)
    t = np.geomspace(1e-6, 60, 400)
    expo = young.from_phi_samples(t, np.exp(t), source="exp")
    assert young.check_delta2(expo).status == "falsified"


def test_h1_h3_power_thresholds():
    for N in (2, 3, 4, 5):
        for p in (1.5, 2.5, 3.5, 4.5):
            assert young.check_H1(young.power(p), N).holds == (N > p)
            assert young.check_H3(young.power(p), N).holds == (N < p)
    assert young.check_H1(young.power(3), 3).status in ("fails", "inconclusive")


def test_h1_two_power():
    F = young.two_power_density(2.0, 3.0).complement()
    assert young.check_H1(F, 3).holds


def test_prec_prec_and_ll():
    assert young.check_prec_prec(young.power(2), young.power(3)).status == "consistent"
    assert young.check_prec_prec(young.power(2), young.power(2)).status != "consistent"
    assert young.is_ll(young.check_ll(young.power(2), young.power(3)))
    assert not young.is_ll(young.check_ll(young.power(3), young.power(2)))


def test_tabulated_matches_source_and_flags_extrapolation():
    F = young.sumpow(1.5, 4)
    T = young.tabulate(F)
    t = np.geomspace(1e-7, 1e7, 301)
    assert np.allclose(T.eval(t), F.eval(t), rtol=1e-8)
    assert not np.any(T.extrapolated(t))
    assert np.all(T.extrapolated(np.array([1e-10, 1e10])))


def test_from_phi_samples_rejects_bad_input():
    with pytest.raises(DomainError):
        young.from_phi_samples([1, 2, 3, 4], [1, 0.5, 2, 3])
    with pytest.raises(DomainError):
        young.from_phi_samples([1, 2], [1, 2])


# ------------------------------------------------------------- properties
@settings(max_examples=40, deadline=None)
@given(p=exps, q=exps)
def test_sandwich_and_young(p, q):
    for F in (young.sumpow(p, q), young.maxpow(p, q), young.power(p)):
        Fc = F.complement()
        P, ph = F.eval(GRID), F.derivative(GRID)
        assert np.all(P <= GRID * ph * (1 + 1e-12))
        assert np.all(GRID * ph <= F.eval(2 * GRID) * (1 + 1e-12))
        prod = F.inverse(GRID) * Fc.inverse(GRID) / GRID
        assert np.all(prod >= 1 - 1e-6) and np.all(prod <= 2 + 1e-6)
        # Young: equality on the graph of phi, inequality elsewhere
        assert np.allclose(P + Fc.eval(ph), GRID * ph, rtol=1e-6)
        s2 = GRID[::-1]
        assert np.all(P + Fc.eval(s2) >= GRID * s2 * (1 - 1e-6))


@settings(max_examples=30, deadline=None)
@given(p=exps)
def test_involution_and_convexity(p):
    F = young.powlog(p)
    back = F.complement().complement()
    assert np.allclose(back.eval(GRID), F.eval(GRID), rtol=1e-6)
    x = np.geomspace(1e-3, 1e3, 200)
    v = F.eval(x)
    # second divided differences on a nonuniform grid
    d1 = np.diff(v) / np.diff(x)
    assert np.all(np.diff(d1) >= -1e-9 * np.abs(d1[1:]))


@settings(max_examples=30, deadline=None)
@given(p=exps, y=st.floats(min_value=1e-8, max_value=1e8))
def test_inverse_round_trip(p, y):
    for F in (young.sumpow(p, p + 1), young.powlog(p), young.maxpow(p, p + 0.5)):
        t = F.inverse(y)
        assert abs(F.eval(t) - y) <= 1e-9 * max(1.0, y)
        assert F.phi_inverse(F.derivative(t)) == pytest.approx(t, rel=1e-8)


@settings(max_examples=30, deadline=None)
@given(p=exps, q=exps, s=st.floats(min_value=1e-4, max_value=1e4))
def test_scaling_bound_with_p_index(p, q, s):
    for F in (young.sumpow(p, q), young.powlog(p)):
        P = young.p_index(F)
        t = np.geomspace(1e-4, 1e4, 81)
        assert np.all(F.eval(s * t) <= max(s**P, s) * F.eval(t) * (1 + 1e-9))
