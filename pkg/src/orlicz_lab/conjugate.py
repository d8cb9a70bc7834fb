"""Sobolev conjugate ``Phi_N``, the transfer function ``B = Phi_N o Phi^{-1}``
and its complement, built by quadrature and monotone inversion of ``H``.

``H(t) = int_0^t Phi~(s) / s^(1+N') ds`` is tabulated once on a log grid wide
enough to invert at every ``s^N'`` the ``Phi_N`` table needs; ``H^{-1}`` is
then a cubic Hermite interpolant in log-log coordinates with exact slopes.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from . import quadrature
from .errors import HypothesisError, NonConvergenceError
from .young import (
    TABLE_DENSITY, TABLE_HI, TABLE_LO, TabulatedYoung, YoungFunction, check_H1,
)


def dual_exponent(N):
    return N / (N - 1.0)


def _require_h1(F, N):
    v = check_H1(F, N)
    if not v.holds:
        raise HypothesisError(
            f"integrability condition H1 is {v.status} for {F.spec()} in dimension {N}",
            hypothesis="H1", detail=v.as_dict(),
        )
    return v


def _integrand(Fc, N):
    Np = dual_exponent(N)

    def f(s):
        with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
            return Fc.eval(s) / s ** (1.0 + Np)

    return f


def h_phi(F, N, t):
    """``H(t)`` for scalar or array ``t`` (quadrature with a power-fit head)."""
    _require_h1(F, N)
    f = _integrand(F.complement(), N)
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.array([quadrature.integrate(f, 0.0, float(x)).value if x > 0 else 0.0 for x in t_arr])
    return float(out[0]) if np.ndim(t) == 0 else out.reshape(np.shape(t))


@dataclass
class HTable:
    t: np.ndarray
    H: np.ndarray
    kappa: np.ndarray  # d log H / d log t at the nodes
    grid: dict

    def __post_init__(self):
        lt, lH = np.log(self.t), np.log(self.H)
        self._inv = CubicHermiteSpline(lH, lt, 1.0 / self.kappa, extrapolate=False)
        self._dinv = self._inv.derivative()
        self._fwd = CubicHermiteSpline(lt, lH, self.kappa, extrapolate=False)

    def value(self, t):
        lt = np.log(np.asarray(t, dtype=float))
        return np.exp(self._fwd(lt))

    def log_inverse(self, logy):
        """``log H^{-1}(y)`` and ``d log H^{-1} / d log y``; NaN outside the table."""
        return self._inv(logy), self._dinv(logy)


def build_h_table(F, N, y_lo, y_hi, per_decade=TABLE_DENSITY, max_rounds=12):
    """Tabulate ``H`` on a log grid whose image covers ``[y_lo, y_hi]``."""
    _require_h1(F, N)
    f = _integrand(F.complement(), N)
    lo, hi = 1e-8, 1e8
    for _ in range(max_rounds):
        t = np.geomspace(lo, hi, int(round(per_decade * np.log10(hi / lo))) + 1)
        H, ok = quadrature.cumulative(f, t, order=12, head=True)
        if not ok or not np.all(np.isfinite(H)):
            raise HypothesisError("H is infinite near 0", hypothesis="H1")
        short_lo = H[0] > y_lo
        short_hi = H[-1] < y_hi
        if not short_lo and not short_hi:
            kappa = t * f(t) / H
            return HTable(t, H, kappa, {"lo": lo, "hi": hi, "per_decade": per_decade})
        if short_lo:
            lo /= 1e16
        if short_hi:
            hi *= 1e16
        if lo < 1e-290 or hi > 1e290:
            break
    raise NonConvergenceError("H table cannot cover the requested range", bracket=(lo, hi))


@dataclass
class ConjugateBundle:
    base: YoungFunction
    N: int
    H_table: HTable
    phi_N: TabulatedYoung
    b_phi: TabulatedYoung
    b_phi_complement: TabulatedYoung
    b_convex: bool
    grid: dict = field(default_factory=dict)

    def slopes(self, decades=2.0):
        return {
            "phi_N": asymptotic_slope(self.phi_N, decades),
            "b_phi": asymptotic_slope(self.b_phi, decades),
            "b_phi_complement": asymptotic_slope(self.b_phi_complement, decades),
        }


def asymptotic_slope(T, decades=2.0):
    """Least-squares log-log slope of a table over its last ``decades``."""
    x = T.x
    sel = x >= x[-1] - decades * np.log(10.0)
    return float(np.polyfit(x[sel], T.logPhi[sel], 1)[0])


def sobolev_conjugate(F, N, lo=TABLE_LO, hi=TABLE_HI, per_decade=TABLE_DENSITY):
    """Tabulated ``Phi_N`` with density ``s^(N'-1) (H^{-1}(s^N'))^N'``."""
    return _build(F, N, lo, hi, per_decade)[0]


def _build(F, N, lo, hi, per_decade):
    Np = dual_exponent(N)
    s = np.geomspace(lo, hi, int(round(per_decade * np.log10(hi / lo))) + 1)
    # Gauss nodes of the cumulative integral reach slightly past the table ends
    table = build_h_table(F, N, (lo * 0.5) ** Np, (hi * 2.0) ** Np, per_decade)

    def log_density(x):
        li, dli = table.log_inverse(Np * x)
        return (Np - 1.0) * x + Np * li, (Np - 1.0) + Np * Np * dli

    def density(v):
        return np.exp(log_density(np.log(v))[0])

    lphi, mphi = log_density(np.log(s))
    Phi_N, ok = quadrature.cumulative(density, s, order=12, head=True)
    if not ok or not np.all(np.isfinite(Phi_N)) or np.any(np.isnan(lphi)):
        raise NonConvergenceError("Phi_N quadrature failed", bracket=(lo, hi))
    k = s * np.exp(lphi) / Phi_N
    phi_N = TabulatedYoung(
        np.log(s), np.log(Phi_N), k, lphi, mphi, source=f"phi_N({F.spec()},N={N})",
        label=f"phi_N({F.spec()},N={N})", grid={"lo": lo, "hi": hi, "per_decade": per_decade},
    )
    return phi_N, table, s, Phi_N, lphi, mphi, k


def b_phi(F, N, lo=TABLE_LO, hi=TABLE_HI, per_decade=TABLE_DENSITY):
    """``(B, B~)`` as tabulated Young functions; see ``conjugate_bundle``."""
    bundle = conjugate_bundle(F, N, lo, hi, per_decade)
    return bundle.b_phi, bundle.b_phi_complement


def conjugate_bundle(F, N, lo=TABLE_LO, hi=TABLE_HI, per_decade=TABLE_DENSITY):
    phi_N, table, s, Phi_N, lphi, mphi, k = _build(F, N, lo, hi, per_decade)
    # nodes of B sit at y = Phi(s): B(y) = Phi_N(s), B'(y) = phi_N(s) / phi(s)
    Phi = F.eval(s)
    phi = F.derivative(s)
    kF = s * phi / Phi
    mF = s * F.second_derivative(s) / phi
    y = np.log(Phi)
    lb = lphi - np.log(phi)
    B = TabulatedYoung(
        y, np.log(Phi_N), k / kF, lb, (mphi - mF) / kF,
        source=f"B({F.spec()},N={N})", label=f"B({F.spec()},N={N})",
        grid={"lo": float(Phi[0]), "hi": float(Phi[-1]), "nodes": len(s)},
    )
    convex = bool(np.all(np.diff(lb) >= -1e-9))
    Bc = B.complement()
    Bc.label = f"Bc({F.spec()},N={N})"
    return ConjugateBundle(
        F, N, table, phi_N, B, Bc, convex,
        {"lo": lo, "hi": hi, "per_decade": per_decade, "H": table.grid},
    )
