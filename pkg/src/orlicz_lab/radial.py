"""Radial profiles on balls and radial quadrature.

A profile is piecewise linear in the radius with a zero at the outer node, so
every integral over the ball reduces to ``N w_N int f(rho) rho^(N-1) drho``
over segments on which ``u`` is affine.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import gamma

from . import quadrature
from .errors import DomainError

INF = float("inf")


def omega(N):
    """Volume of the unit ball in R^N."""
    return float(np.pi ** (N / 2.0) / gamma(N / 2.0 + 1.0))


def ball_measure(N, R):
    return omega(N) * R**N if np.isfinite(R) else INF


def ball_radius(N, m):
    return (m / omega(N)) ** (1.0 / N) if np.isfinite(m) else INF


@dataclass(frozen=True)
class RadialProfile:
    rho: np.ndarray
    u: np.ndarray
    N: int

    def __post_init__(self):
        rho = np.asarray(self.rho, dtype=float)
        u = np.asarray(self.u, dtype=float)
        if rho.ndim != 1 or rho.shape != u.shape or len(rho) < 2:
            raise DomainError("profile needs matching 1-D radius and value arrays")
        if rho[0] != 0.0 or np.any(np.diff(rho) <= 0):
            raise DomainError("radii must start at 0 and increase strictly")
        if u[-1] != 0.0:
            raise DomainError("profile must vanish at the outer node")
        if not np.all(np.isfinite(u)):
            raise DomainError("profile values must be finite")
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "u", u)

    @property
    def R(self):
        return float(self.rho[-1])

    @property
    def slopes(self):
        return np.diff(self.u) / np.diff(self.rho)

    def value(self, r):
        return np.interp(r, self.rho, self.u, right=0.0)

    def scale(self, t):
        return RadialProfile(self.rho, t * self.u, self.N)

    def dilate(self, lam):
        """``u(rho / lam)``."""
        return RadialProfile(self.rho * lam, self.u, self.N)

    def abs(self):
        return RadialProfile(self.rho, np.abs(self.u), self.N)

    def samples(self, n=50):
        idx = np.unique(np.linspace(0, len(self.rho) - 1, min(n, len(self.rho))).astype(int))
        return {"rho": self.rho[idx].tolist(), "u": self.u[idx].tolist()}

    def distribution(self, s):
        """``|{|u| > s}|`` and its derivative in ``s`` (exact for affine segments)."""
        s = np.atleast_1d(np.asarray(s, dtype=float))
        a, b = self.rho[:-1], self.rho[1:]
        ua, ub = np.abs(self.u[:-1]), np.abs(self.u[1:])
        wN = omega(self.N)
        mu = np.zeros_like(s)
        dmu = np.zeros_like(s)
        for i in range(len(a)):
            lo_v, hi_v = min(ua[i], ub[i]), max(ua[i], ub[i])
            full = s < lo_v
            mu[full] += wN * (b[i] ** self.N - a[i] ** self.N)
            part = (s >= lo_v) & (s < hi_v)
            if np.any(part):
                # crossing radius on an affine piece
                rc = a[i] + (s[part] - ua[i]) * (b[i] - a[i]) / (ub[i] - ua[i])
                if ua[i] > ub[i]:
                    mu[part] += wN * (rc**self.N - a[i] ** self.N)
                else:
                    mu[part] += wN * (b[i] ** self.N - rc**self.N)
                dmu[part] -= self.N * wN * rc ** (self.N - 1) * (b[i] - a[i]) / abs(ub[i] - ua[i])
        return mu, dmu

    def symmetrized(self, refine=16):
        """Schwarz symmetrization ``v(r) = u*(w_N r^N)`` as a ``RadialProfile``.

        Kinks of ``v`` sit at the radii of the level sets through the node
        values.  Each interval between kinks is refined and ``v`` is solved
        there from the exact distribution function; for a nonincreasing
        ``|u|`` the result reproduces ``|u|`` exactly.
        """
        levels = np.unique(np.abs(self.u))[::-1]
        top = levels[0]
        if top == 0.0:
            return RadialProfile(np.array([0.0, self.R]), np.array([0.0, 0.0]), self.N)
        # kinks: measures of {|u| > s} and {|u| >= s} at every node value
        mu_gt, _ = self.distribution(levels)
        mu_ge, _ = self.distribution(levels * (1.0 - 1e-13))
        kinks = np.unique(np.concatenate([mu_gt, mu_ge, [0.0]]))
        radii = np.array([ball_radius(self.N, m) for m in kinks])
        radii = np.unique(radii)
        rr = np.unique(np.concatenate([np.linspace(r0, r1, refine + 1)[1:]
                                       for r0, r1 in zip(radii[:-1], radii[1:])]))
        rr = rr[rr > 0.0]
        lo, hi = np.zeros_like(rr), np.full_like(rr, top)
        m = omega(self.N) * rr**self.N
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            above = self.distribution(mid)[0] > m
            lo = np.where(above, mid, lo)
            hi = np.where(above, hi, mid)
        v = 0.5 * (lo + hi)
        v[-1] = 0.0
        return RadialProfile(np.concatenate([[0.0], rr]), np.concatenate([[top], v]), self.N)


def cone(a, b, N, nodes=2):
    """``min(1, (b - rho)_+ / (b - a))`` on ``[0, b]``."""
    if not 0 <= a < b:
        raise DomainError("cone needs 0 <= a < b")
    if a > 0:
        rho = np.concatenate([[0.0], np.linspace(a, b, nodes)])
    else:
        rho = np.linspace(0.0, b, nodes)
    u = np.minimum(1.0, (b - rho) / (b - a))
    u[-1] = 0.0
    return RadialProfile(rho, u, N)


def bump(N, R=1.0, nodes=400, width=1.0):
    """Smooth bump ``exp(-width / (1 - (rho/R)^2)) * e^width`` sampled on a grid."""
    rho = np.linspace(0.0, R, nodes)
    x = rho / R
    with np.errstate(divide="ignore", over="ignore"):
        u = np.where(x < 1.0, np.exp(width - width / (1.0 - x**2)), 0.0)
    u[-1] = 0.0
    return RadialProfile(rho, u, N)


def radial_integral(f, N, rho, order=16):
    """``N w_N int_0^{rho[-1]} f(r) r^(N-1) dr`` with breaks at ``rho``.

    The first segment is integrated on geometric panels with a power-fit head
    so singular weights at the origin are handled; the rest by Gauss-Legendre
    per segment.  Returns ``inf`` when the head is not integrable.
    """
    rho = np.asarray(rho, dtype=float)
    wN = omega(N)

    def g(r):
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            return np.asarray(f(r), dtype=float) * r ** (N - 1)

    head = quadrature.integrate(g, 0.0, float(rho[1]))
    if not head.finite:
        return INF
    total = head.value
    if len(rho) > 2:
        x, w = quadrature.gauss_legendre(order)
        a, b = rho[1:-1, None], rho[2:, None]
        r = 0.5 * (b - a) * x + 0.5 * (b + a)
        vals = g(r.ravel()).reshape(r.shape)
        total += float(np.sum(vals * (0.5 * (b - a) * w)))
    return N * wN * total if np.isfinite(total) else INF
