"""Radial minimization of ``J_Phi`` on the level set ``G_Psi = r``.

Discretization: uniform radii, exact shell volumes for the gradient term
(``u'`` is constant on each shell) and lumped shell masses for the weighted
term.  Iteration: nonlinear inverse iteration with the Kacanov (frozen
coefficient) stiffness matrix as the search direction, Armijo backtracking on
``J`` and exact re-projection onto the level set after every step.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_banded

from . import quadrature
from .errors import DegenerateInputError, NonConvergenceError
from . import kernels
from .radial import RadialProfile, omega
from .young import AnalyticYoung

INF = float("inf")
SLOPE_FLOOR = 1e-12
STALL_WINDOW = 5


@dataclass
class EigenResult:
    r: float
    lambda1: float
    lambda_tilde: float
    profile: RadialProfile
    residual: float
    iterations: int
    constraint_error: float
    history: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def as_dict(self, samples=50):
        return {
            "label": "radial lambda1",
            "r": self.r, "lambda1": self.lambda1, "lambda_tilde": self.lambda_tilde,
            "residual": self.residual, "iterations": self.iterations,
            "constraint_error": self.constraint_error,
            "profile": self.profile.samples(samples), "notes": list(self.notes),
        }


class Discretization:
    """Shell weights and lumped masses on ``M`` uniform cells of the ball."""

    def __init__(self, W, N, R, nodes):
        self.N, self.R, self.M = int(N), float(R), int(nodes)
        self.rho = np.linspace(0.0, R, self.M + 1)
        self.h = R / self.M
        wN = omega(N)
        self.A = wN * np.diff(self.rho**N)
        # dual cells [rho_i - h/2, rho_i + h/2] clipped to [0, R]
        lo = np.clip(self.rho - 0.5 * self.h, 0.0, R)
        hi = np.clip(self.rho + 0.5 * self.h, 0.0, R)
        self.mass = self._weighted_mass(W, lo, hi)

    def _weighted_mass(self, W, lo, hi):
        wN, N = omega(self.N), self.N
        if W.form in ("constant",):
            return W.c * wN * (hi**N - lo**N)
        x, w = quadrature.gauss_legendre(16)
        out = np.empty(len(lo))
        inner = lo > 0
        a, b = lo[inner, None], hi[inner, None]
        r = 0.5 * (b - a) * x + 0.5 * (b + a)
        out[inner] = N * wN * np.sum(W.radial(r) * r ** (N - 1) * 0.5 * (b - a) * w, axis=1)
        for i in np.where(~inner)[0]:
            res = quadrature.integrate(lambda s: W.radial(s) * s ** (N - 1), 0.0, float(hi[i]))
            out[i] = N * wN * res.value if res.finite else INF
        return out


class _Functional:
    """``J``, ``G`` and their gradients for one (Phi, Psi, discretization)."""

    def __init__(self, F, G, disc):
        self.F, self.G, self.d = F, G, disc
        self._kern = None
        if isinstance(F, AnalyticYoung):
            code, p, q, c = F._args()
            self._kern = (kernels.radial_energy, code, p, q, c)

    def full(self, u):
        return np.concatenate([u, [0.0]])

    def J(self, u, grad=False):
        uf = self.full(u)
        if self._kern is not None:
            fn, code, p, q, c = self._kern
            e, g = fn(code, p, q, c, uf, self.d.h, self.d.A)
            return (float(e), g[:-1]) if grad else float(e)
        dd = np.diff(uf) / self.d.h
        a = np.abs(dd)
        e = float(np.sum(self.d.A * self.F.eval(a)))
        if not grad:
            return e
        flux = self.d.A * self.F.derivative(a) * np.sign(dd) / self.d.h
        g = np.zeros_like(uf)
        g[:-1] -= flux
        g[1:] += flux
        return e, g[:-1]

    def Gval(self, u):
        return float(np.sum(self.d.mass[:-1] * self.G.eval(np.abs(u))))

    def Ggrad(self, u):
        return self.d.mass[:-1] * self.G.derivative(np.abs(u)) * np.sign(u)

    def kacanov(self, u):
        """Banded matrix ``K`` with ``K u = J'(u)`` (frozen coefficients)."""
        uf = self.full(u)
        a = np.maximum(np.abs(np.diff(uf)) / self.d.h, SLOPE_FLOOR)
        coef = self.d.A * self.F.derivative(a) / a / self.d.h**2
        M = len(u)
        ab = np.zeros((3, M))
        diag = np.zeros(M)
        diag += coef[:M]
        diag[1:] += coef[: M - 1]
        ab[1] = diag
        ab[0, 1:] = -coef[: M - 1]
        ab[2, :-1] = -coef[: M - 1]
        return ab

    def diag_mass(self, u):
        """``D`` with ``D u = G'(u)``."""
        a = np.maximum(np.abs(u), SLOPE_FLOOR)
        return self.d.mass[:-1] * self.G.derivative(a) / a


def j_phi(F, U):
    """``int Phi(|u'|)`` over the ball (exact for piecewise-linear profiles)."""
    from .rearrange import gradient_modular

    return gradient_modular(F, U)


def g_psi(W, G, U):
    """``int g Psi(|u|)`` over the ball by radial quadrature."""
    from .verify import _with_domain_break
    from .radial import radial_integral

    if not np.any(U.u != 0) or W.is_zero:
        return 0.0
    return radial_integral(lambda r: W.radial(r) * G.eval(np.abs(U.value(r))), U.N,
                           _with_domain_break(U.rho, W))


def _scale_to_level(gfun, u, r, G, rtol=1e-14):
    """``t`` with ``gfun(t u) = r`` (closed form for pure powers, else bracketing)."""
    g0 = gfun(u)
    if not g0 > 0:
        raise DegenerateInputError("G_Psi(u) = 0: cannot project onto the level set")
    if isinstance(G, AnalyticYoung) and G.family == "power":
        return (r / g0) ** (1.0 / G.p)
    lo, hi = 0.5, 2.0
    while gfun(lo * u) > r:
        lo *= 0.5
    while gfun(hi * u) < r:
        hi *= 2.0
    for _ in range(200):
        mid = np.sqrt(lo * hi)
        if gfun(mid * u) < r:
            lo = mid
        else:
            hi = mid
        if hi / lo - 1.0 < rtol:
            break
    return np.sqrt(lo * hi)


def project_to_level(W, G, U, r):
    """``t U`` with ``G_Psi(t U) = r``."""
    t = _scale_to_level(lambda v: g_psi(W, G, RadialProfile(U.rho, v, U.N)), U.u, r, G)
    return U.scale(t)


def minimize_lambda1(F, G, W, N=None, R=1.0, r=1.0, nodes=2000, tol=1e-6, maxiter=500,
                     rel_decrease=1e-10, init=None, restarts=0, seed=0):
    """Radial ``lambda_1(r)``, multiplier and non-negative minimizer."""
    N = W.N if N is None else N
    disc = Discretization(W, N, R, nodes)
    fn = _Functional(F, G, disc)
    res = _descend(fn, r, tol, maxiter, rel_decrease, init)
    if restarts:
        rng = np.random.default_rng(seed)
        others = []
        for _ in range(restarts):
            base = np.maximum(1.0 - disc.rho[:-1] / R, 0.0)
            pert = base * (1.0 + 0.3 * rng.standard_normal(len(base)))
            others.append(_descend(fn, r, tol, maxiter, rel_decrease, np.abs(pert)).lambda1)
        spread = max(abs(x - res.lambda1) for x in others) / res.lambda1
        res.notes.append(f"restarts={restarts}: max relative lambda1 spread {spread:.3e}")
        if spread > 1e-4:
            res.notes.append("restarts disagree beyond tolerance; uniqueness not resolved")
    return res


def _descend(fn, r, tol, maxiter, rel_decrease, init):
    d = fn.d
    u = (np.maximum(1.0 - d.rho[:-1] / d.R, 0.0) if init is None
         else np.asarray(init, dtype=float)[: d.M].copy())
    u = _project(fn, u, r)
    J, gJ = fn.J(u, grad=True)
    history = [J]
    it = 0
    stalls = 0
    residual = best_residual = INF
    lam = float("nan")
    for it in range(1, maxiter + 1):
        gG = fn.Ggrad(u)
        lam = float(np.dot(gJ, u) / np.dot(gG, u))
        residual = float(np.max(np.abs(gJ - lam * gG)) / (lam * np.max(np.abs(gG))))
        if residual < tol:
            break
        # inverse-iteration direction: K(u) w = D(u) u, then back to the level set
        w = solve_banded((1, 1), fn.kacanov(u), fn.diag_mass(u) * u)
        target = _project(fn, np.abs(w), r)
        step = 1.0
        accepted = False
        while step > 1e-8:
            trial = _project(fn, np.abs(u + step * (target - u)), r)
            Jt, gt = fn.J(trial, grad=True)
            if Jt <= J - 1e-4 * step * abs(np.dot(gJ, target - u)) or Jt < J * (1 - 1e-15):
                accepted = True
                break
            step *= 0.5
        if not accepted:
            break
        decrease = (J - Jt) / J
        u, J, gJ = trial, Jt, gt
        history.append(J)
        # J converges quadratically in the residual, so a tiny decrease is a
        # stall only while the residual has stopped improving as well
        progress = residual < best_residual * 0.999
        best_residual = min(best_residual, residual)
        stalls = stalls + 1 if decrease < rel_decrease and not progress else 0
        if stalls >= STALL_WINDOW:
            gG = fn.Ggrad(u)
            lam = float(np.dot(gJ, u) / np.dot(gG, u))
            residual = float(np.max(np.abs(gJ - lam * gG)) / (lam * np.max(np.abs(gG))))
            break
    else:
        raise NonConvergenceError("eigen iteration cap reached", bracket=u)
    prof = RadialProfile(d.rho, np.concatenate([np.abs(u), [0.0]]), d.N)
    err = abs(fn.Gval(u) - r) / r
    notes = [] if residual < tol else [f"stopped on stalled decrease with residual {residual:.3e}"]
    return EigenResult(float(r), float(J), lam, prof, residual, it, err, history, notes)


def _project(fn, u, r):
    t = _scale_to_level(fn.Gval, u, r, fn.G)
    u = t * u
    # one Newton polish on the level-set scale
    g = fn.Gval(u)
    dg = float(np.dot(fn.Ggrad(u), u))
    if dg > 0 and g != r:
        u = u * (1.0 + (r - g) / dg)
    return u
