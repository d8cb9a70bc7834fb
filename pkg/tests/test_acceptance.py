"""Acceptance criteria 1-12, one test each; pass/fail lines print in the summary."""

import time

import numpy as np
import pytest

from orlicz_lab import admit, cli, conjugate, eigen, norms, rearrange, regressions, verify, young
from orlicz_lab.radial import ball_measure, omega
from oracles import brute_capacity, hardy_weak_norm

INF = float("inf")

# pinned tolerances
YOUNG_RTOL = 1e-6
YOUNG_SECONDS = 10.0
P_INDEX_TOL = 1e-6
SLOPE_RTOL = 1e-2
CONJUGATE_SECONDS = 30.0
EXP_TOL = 1e-3
RATIO_TOL = 1e-2
HARDY_RTOL = 1e-4
CAPACITY_RTOL = 5e-3
DILATION_SLOPE_TOL = 0.02
POWER_COUNT_TOL = 0.05
EIGEN_RTOL = 5e-3
EIGEN_SECONDS = 60.0
HOMOGENEITY_RTOL = 1e-2
CONSTRAINT_TOL = 1e-8
EXAMPLES_SECONDS = 300.0


def test_c01_young_calculus(criterion):
    with criterion(1, "Young, involution, sandwich and Phi <= t phi <= Phi(2t) on 1e6 points"):
        t = np.geomspace(1e-6, 1e6, 10**6)
        s = t[::-1]
        families = [young.power(2.5), young.sumpow(1.5, 3), young.maxpow(2, 3.5),
                    young.powlog(2), young.tabulate(young.sumpow(1.5, 4))]
        t0 = time.perf_counter()
        for F in families:
            Fc = F.complement()
            P, ph = F.eval(t), F.derivative(t)
            tph = t * ph
            assert np.all(P <= tph * (1 + YOUNG_RTOL)), F.spec()
            assert np.all(tph <= F.eval(2 * t) * (1 + YOUNG_RTOL)), F.spec()
            prod = F.inverse(t) * Fc.inverse(t) / t
            assert np.all(prod >= 1 - YOUNG_RTOL) and np.all(prod <= 2 + YOUNG_RTOL), F.spec()
            assert np.allclose(P + Fc.eval(ph), tph, rtol=YOUNG_RTOL, atol=0), F.spec()
            assert np.all(P + Fc.eval(s) >= t * s * (1 - YOUNG_RTOL)), F.spec()
            assert np.allclose(Fc.complement().eval(t), P, rtol=YOUNG_RTOL, atol=0), F.spec()
        assert time.perf_counter() - t0 < YOUNG_SECONDS


def test_c02_p_index_of_powers(criterion):
    with criterion(2, "P_Phi = p for t^p, p in {1.5, 2, 3}"):
        for p in (1.5, 2.0, 3.0):
            assert abs(young.p_index(young.power(p)) - p) <= P_INDEX_TOL


def test_c03_conjugate_slopes(criterion):
    with criterion(3, "slopes of Phi_N, B_Phi, B_Phi~ within 1%"):
        t0 = time.perf_counter()
        for p, N in ((2.0, 3), (2.0, 4), (3.0, 4)):
            s = conjugate.conjugate_bundle(young.power(p), N).slopes()
            assert s["phi_N"] == pytest.approx(N * p / (N - p), rel=SLOPE_RTOL)
            assert s["b_phi"] == pytest.approx(N / (N - p), rel=SLOPE_RTOL)
            assert s["b_phi_complement"] == pytest.approx(N / p, rel=SLOPE_RTOL)
        assert time.perf_counter() - t0 < CONJUGATE_SECONDS


def test_c04_g_phi_and_eta_phi(criterion):
    with criterion(4, "G_Phi exponent and the three eta_Phi branches"):
        for p, N in ((2.0, 4), (3.0, 4), (4.0, 3)):
            s = np.geomspace(1e-3, 1e3, 13)
            k = np.polyfit(np.log(s), np.log(norms.g_phi(young.power(p), N, s)), 1)[0]
            assert abs(k - p * (N - 1) / (N * (p - 1))) <= EXP_TOL
        # N > p: slope p/N
        for p, N in ((2.0, 4), (2.0, 3)):
            r = np.geomspace(1e-6, 1e2, 17)
            k = np.polyfit(np.log(r), np.log(norms.eta_phi(young.power(p), N, INF, r)), 1)[0]
            assert abs(k - p / N) <= EXP_TOL
        # N = p: eta / (r log(|Omega|/r)^(N-1)) is constant
        for N in (2, 3):
            r = np.geomspace(1e-8, 0.5, 17)
            ratio = norms.eta_phi(young.power(N), N, 1.0, r) / (r * np.log(1.0 / r) ** (N - 1))
            assert np.ptp(ratio) / np.mean(ratio) <= RATIO_TOL
        # N < p: X_Phi of constants is a fixed multiple of L1
        F, N, m = young.power(4.0), 3, 1.0
        ratios = [norms.norm_x_phi(rearrange.constant(c, m, N), F).value / (c * m) for c in (0.5, 2.0, 8.0)]
        assert np.ptp(ratios) / np.mean(ratios) <= RATIO_TOL
        assert regressions.x_phi_l1(4.0, 3)["pass"]


def test_c05_eta_phi_psi_and_h4(criterion):
    with criterion(5, "eta_Phi,Psi slope and the H4 threshold at q = p*"):
        for p, q, N in ((2.0, 3.0, 4), (2.0, 4.0, 5)):
            r = np.geomspace(1e-4, 1e2, 7)
            e = norms.eta_phi_psi(young.power(p), young.power(q), N, INF, r)
            k = np.polyfit(np.log(r), np.log(e), 1)[0]
            assert abs(k - (p * q + N * (p - q)) / (N * p)) <= EXP_TOL
        for p, N in ((2.0, 4), (2.0, 5)):
            ps = N * p / (N - p)
            F = young.power(p)
            assert norms.check_H4(F, young.power(ps - 0.5), N, INF).holds
            assert norms.check_H4(F, young.power(ps), N, INF).holds
            assert not norms.check_H4(F, young.power(ps + 0.5), N, INF).holds


def test_c06_hardy_weak_norm(criterion):
    with criterion(6, "L^{Phi,inf} norm of |x|^-p equals (N/(N-p)) w_N^(p/N)"):
        for p, N in ((2.0, 3), (2.0, 4), (3.0, 4), (1.5, 2)):
            oracle = hardy_weak_norm(p, N)
            closed = N / (N - p) * omega(N) ** (p / N)
            assert np.allclose(oracle, closed, rtol=1e-10)
            got = norms.norm_phi_infty(rearrange.hardy(p, N), young.power(p)).value
            assert abs(got / oracle.max() - 1) <= HARDY_RTOL


def test_c07_capacity(criterion):
    with criterion(7, "capacity 4 pi/(1/a - 1/R), monotone, brute-force oracle within 0.5%"):
        F = young.power(2)
        for a in (0.2, 0.5):
            got = admit.capacity_ball(F, 3, a, 1.0).value
            assert abs(got / (4 * np.pi / (1 / a - 1)) - 1) <= CAPACITY_RTOL
            assert abs(got / brute_capacity(2.0, 3, a, 1.0) - 1) <= CAPACITY_RTOL
        vals = [admit.capacity_ball(F, 3, a, 1.0).value for a in np.linspace(0.05, 0.95, 19)]
        assert np.all(np.diff(vals) > 0)


def test_c08_capacity_sandwich(criterion):
    with criterion(8, "capacity criterion D <= max{C, C^P_Psi} with the cone-family C"):
        F = young.power(2)
        W = rearrange.constant(1.0, ball_measure(3, 1.0), 3)
        C = verify.run_family(W, F, F, "cones").empirical_constant
        res = admit.capacity_criterion(W, F, F, 3, 1.0, np.linspace(0.05, 0.95, 19))
        assert not res["divergent"] and np.isfinite(C) and C > 0
        assert res["value"] <= max(C, C ** young.p_index(F))


def test_c09_muckenhoupt(criterion):
    with criterion(9, "Muckenhoupt sup finite at a = p, divergent at a = p + 0.5, stable under doubling"):
        for p, N in ((2.0, 3), (2.0, 4), (3.0, 4)):
            F = young.power(p)
            w, v, b = admit.hardy_configuration(rearrange.hardy(p, N), F)
            base = admit.muckenhoupt_sup_same(F, w, v, b)
            dbl = admit.muckenhoupt_sup_same(F, w, v, b, density=2 * admit.MUCK_DENSITY)
            assert not base.divergent and not dbl.divergent
            assert np.isfinite(base.value) and abs(dbl.value / base.value - 1) <= RATIO_TOL
            w, v, b = admit.hardy_configuration(rearrange.hardy(p + 0.5, N), F)
            assert admit.muckenhoupt_sup_same(F, w, v, b).divergent
            assert admit.muckenhoupt_sup_same(F, w, v, b, density=2 * admit.MUCK_DENSITY).divergent


def test_c10_harness_consistency(criterion):
    with criterion(10, "flat dilation slope for admissible weights; (p - a)/p otherwise"):
        cases = [  # (Phi, Psi, weight) on R^N, scale invariant configurations
            (young.power(2), young.power(2), rearrange.hardy(2.0, 3)),
            (young.power(2), young.power(2), rearrange.hardy(2.0, 4)),
            (young.power(3), young.power(3), rearrange.hardy(3.0, 4)),
            (young.power(2), young.power(3), rearrange.hardy(1.0, 4)),
        ]
        for F, G, W in cases:
            rep = admit.admissibility_report(W, F, G, W.N, INF)
            assert rep.admissible, W.spec()
            res = verify.run_family(W, F, G, "dilate")
            params = [t["param"] for t in res.tests]
            assert np.log10(max(params) / min(params)) >= 4
            assert abs(res.slope) <= DILATION_SLOPE_TOL, (W.spec(), res.slope)
        p, a = 2.0, 3.0
        F = young.power(p)
        W = rearrange.hardy(a, 4)
        assert "phi_infty" not in admit.admissibility_report(W, F, F, 4, INF, routes=("phi_infty",)).admissible
        res = verify.run_family(W, F, F, "dilate")
        assert abs(res.slope - (p - a) / p) <= POWER_COUNT_TOL


def test_c11_eigen(criterion):
    with criterion(11, "lambda~ = pi^2, r^(p/q) homogeneity, constraint and sign"):
        ONE = rearrange.constant(1.0, ball_measure(3, 1.0), 3)
        F = young.power(2)
        t0 = time.perf_counter()
        res = eigen.minimize_lambda1(F, F, ONE, 3, 1.0, 1.0, nodes=2000)
        assert time.perf_counter() - t0 < EIGEN_SECONDS
        assert abs(res.lambda_tilde / np.pi**2 - 1) <= EIGEN_RTOL
        for p, q in ((2.0, 2.0), (2.0, 3.0)):
            Fp, Gq = young.power(p), young.power(q)
            base = eigen.minimize_lambda1(Fp, Gq, ONE, 3, 1.0, 1.0, nodes=2000)
            for r in (0.5, 2.0):
                out = eigen.minimize_lambda1(Fp, Gq, ONE, 3, 1.0, r, nodes=2000)
                assert abs(out.lambda1 / (r ** (p / q) * base.lambda1) - 1) <= HOMOGENEITY_RTOL
                assert abs(out.lambda1 / (q * r / p * out.lambda_tilde) - 1) <= HOMOGENEITY_RTOL
                assert out.constraint_error <= CONSTRAINT_TOL
                assert abs(eigen.g_psi(ONE, Gq, out.profile) / r - 1) <= 1e-6
                assert np.all(out.profile.u >= 0)


def test_c12_examples_subcommand(criterion, capsys):
    with criterion(12, "`examples` subcommand: every regression row passes"):
        t0 = time.perf_counter()
        code = cli.main(["examples", "--emit", "csv"])
        elapsed = time.perf_counter() - t0
        lines = [x for x in capsys.readouterr().out.split("\r\n") if x]
        assert code == 0
        assert len(lines) == 1 + len(regressions.DEFAULT_ROWS)
        assert all(x.endswith(",pass") for x in lines[1:])
        assert elapsed < EXAMPLES_SECONDS
