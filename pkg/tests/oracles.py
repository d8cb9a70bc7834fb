"""Independent reference computations shared by several test files."""

import numpy as np
from scipy import integrate, optimize

from orlicz_lab.radial import omega


def brute_capacity(p, N, a, R, cells=600):
    """Piecewise-linear radial minimization of int |u'|^p with u(a) = 1, u(R) = 0."""
    rho = np.linspace(a, R, cells + 1)
    vol = omega(N) * np.diff(rho**N)
    h = np.diff(rho)

    def energy(x):
        u = np.concatenate([[1.0], x, [0.0]])
        d = -np.diff(u) / h
        e = float(np.sum(np.abs(d) ** p * vol))
        gd = p * np.abs(d) ** (p - 1) * np.sign(d) * vol
        # d_i depends on u_i (+1/h) and u_{i+1} (-1/h)
        g = gd[1:] / h[1:] - gd[:-1] / h[:-1]
        return e, g

    x0 = 1.0 - (rho[1:-1] - a) / (R - a)
    res = optimize.minimize(energy, x0, jac=True, method="L-BFGS-B",
                            options={"maxiter": 20000, "ftol": 1e-15, "gtol": 1e-12})
    return res.fun


def hardy_weak_norm(p, N, s_values=(1e-3, 1.0, 1e3)):
    """``g**(s) / Phi(s^(-1/N))`` for ``g = |x|^-p``, ``Phi = t^p`` by adaptive quadrature."""
    wN = omega(N)

    def star(t):
        return (wN / t) ** (p / N)

    out = []
    for s in s_values:
        # substitute t = s x^k with k = N/(N-p) to remove the endpoint singularity
        k = N / (N - p)
        val, _ = integrate.quad(lambda x: star(s * x**k) * s * k * x ** (k - 1), 0.0, 1.0,
                                epsabs=0.0, epsrel=1e-13, limit=200)
        out.append(val / s / s ** (-p / N))
    return np.array(out)
