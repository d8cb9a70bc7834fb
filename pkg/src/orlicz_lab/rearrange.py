"""Weight profiles, decreasing rearrangement ``g*``, maximal function ``g**``
and the rearrangement inequalities used as test oracles.
"""

from dataclasses import dataclass, field, replace

import numpy as np

from . import quadrature
from .errors import DomainError
from .radial import RadialProfile, ball_measure, ball_radius, omega, radial_integral

INF = float("inf")

FORMS = ("radial-power", "constant", "indicator", "sampled", "radial-table")


@dataclass(frozen=True)
class WeightProfile:
    form: str
    N: int
    omega_measure: float
    a: float = 0.0
    c: float = 1.0
    m: float = INF
    R: float = INF
    values: tuple = ()
    measures: tuple = ()
    rho: tuple = ()
    g: tuple = ()
    label: str = ""
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.form not in FORMS:
            raise DomainError(f"unknown weight form {self.form!r}")
        if int(self.N) != self.N or self.N < 2:
            raise DomainError("dimension N must be an integer >= 2")
        if not self.omega_measure > 0:
            raise DomainError("|Omega| must be positive")

    # ------------------------------------------------------------------ basics
    @property
    def domain_radius(self):
        return ball_radius(self.N, self.omega_measure)

    def spec(self):
        if self.label:
            return self.label
        cpart = "" if self.c == 1.0 else f",c={self.c:.17g}"
        if self.form == "radial-power":
            return f"hardy:a={self.a:.17g}{cpart}"
        if self.form == "constant":
            return f"const:c={self.c:.17g},m={self.m:.17g}"
        if self.form == "indicator":
            return f"indicator:m={self.m:.17g}{cpart}"
        return self.form

    def scale(self, s):
        """Profile of ``s * g``."""
        if s < 0:
            raise DomainError("scale factor must be nonnegative")
        return replace(
            self, c=self.c * s,
            values=tuple(np.asarray(self.values, dtype=float) * s),
            g=tuple(np.asarray(self.g, dtype=float) * s),
        )

    @property
    def is_zero(self):
        if self.c == 0.0:
            return True
        if self.form == "sampled":
            return not np.any(np.asarray(self.values) > 0)
        if self.form == "radial-table":
            return not np.any(np.asarray(self.g) > 0)
        return False

    def _check_t(self, t, closed=False):
        t = np.asarray(t, dtype=float)
        upper_ok = t <= self.omega_measure if closed else t < self.omega_measure
        if np.any(~(t > 0)) or np.any(~upper_ok):
            raise DomainError("t must lie in (0, |Omega|)")
        return t

    # ---------------------------------------------------------- radial values
    def radial(self, r):
        """``g`` on a centered ball, as a function of the radius.

        Sampled weights are placed in their symmetric decreasing arrangement.
        """
        r = np.asarray(r, dtype=float)
        Rd = self.domain_radius
        inside = r < Rd
        if self.form == "radial-power":
            with np.errstate(divide="ignore"):
                v = self.c * r ** (-self.a)
        elif self.form == "constant":
            v = np.full_like(r, self.c)
        elif self.form == "indicator":
            v = np.where(r < ball_radius(self.N, self.m), self.c, 0.0)
        elif self.form == "sampled":
            v = self._sampled_star(omega(self.N) * r**self.N)
        else:
            v = np.interp(r, self.rho, self.g, right=0.0)
        return np.where(inside, v, 0.0)

    # ----------------------------------------------------------- rearrangement
    def _sampled_order(self):
        vals = np.asarray(self.values, dtype=float)
        meas = np.asarray(self.measures, dtype=float)
        order = np.argsort(-vals, kind="stable")
        return vals[order], np.cumsum(meas[order])

    def _sampled_star(self, t):
        vals, cum = self._sampled_order()
        # right-continuous step: value of the first cell whose end exceeds t
        idx = np.searchsorted(cum, t, side="right")
        return np.where(idx < len(vals), vals[np.minimum(idx, len(vals) - 1)], 0.0)

    def _table_star(self, t):
        rho = np.asarray(self.rho, dtype=float)
        g = np.asarray(self.g, dtype=float)
        if np.all(np.diff(g) <= 0):
            # radially nonincreasing: g* is g read at the radius of measure t
            return np.interp(ball_radius(self.N, 1.0) * t ** (1.0 / self.N), rho, g, right=0.0)
        vals, meas = self._table_cells()
        order = np.argsort(-vals, kind="stable")
        cum = np.cumsum(meas[order])
        idx = np.searchsorted(cum, t, side="right")
        return np.where(idx < len(vals), vals[order][np.minimum(idx, len(vals) - 1)], 0.0)

    def _table_cells(self, sub=64):
        # non-monotone tables: fine shell cells with midpoint values
        rho = np.asarray(self.rho, dtype=float)
        r = np.concatenate([np.linspace(a, b, sub + 1)[:-1] for a, b in zip(rho[:-1], rho[1:])] + [[rho[-1]]])
        mid = 0.5 * (r[:-1] + r[1:])
        vals = np.interp(mid, rho, np.asarray(self.g, dtype=float))
        meas = omega(self.N) * np.diff(r**self.N)
        return vals, meas

    def star(self, t):
        """``g*(t)`` without domain checks (vectorized)."""
        t = np.asarray(t, dtype=float)
        if self.form == "radial-power":
            with np.errstate(divide="ignore"):
                v = self.c * (omega(self.N) / t) ** (self.a / self.N)
        elif self.form == "constant":
            v = np.full_like(t, self.c)
        elif self.form == "indicator":
            v = np.where(t < self.m, self.c, 0.0)
        elif self.form == "sampled":
            v = self._sampled_star(t)
        else:
            v = self._table_star(t)
        return np.where(t < self.omega_measure, v, 0.0)

    def breaks(self):
        """Measures where ``g*`` jumps or kinks."""
        if self.form == "indicator":
            return (self.m,)
        if self.form == "sampled":
            return tuple(self._sampled_order()[1])
        if self.form == "radial-table":
            return tuple(ball_measure(self.N, r) for r in self.rho[1:])
        return ()

    def integral(self, t):
        """``int_0^t g*`` for scalar ``t``, with its finiteness flag."""
        t = min(float(t), self.omega_measure)
        if self.is_zero:
            return 0.0, True
        if self.form == "constant":
            return self.c * t, True
        if self.form == "indicator":
            return self.c * min(t, self.m), True
        if self.form == "sampled":
            vals, cum = self._sampled_order()
            start = np.concatenate([[0.0], cum[:-1]])
            return float(np.sum(vals * np.clip(t - start, 0.0, cum - start))), True
        if not np.isfinite(t):
            res = quadrature.integrate(self.star, 0.0, INF, breaks=self.breaks())
            return res.value, res.finite
        res = quadrature.integrate(self.star, 0.0, t, breaks=self.breaks())
        return res.value, res.finite

    def l1(self):
        return self.integral(self.omega_measure)


# -------------------------------------------------------------- constructors
def hardy(a, N, R=INF, c=1.0):
    """``c |x|^{-a}`` on the ball of radius ``R`` (``R = inf`` for R^N)."""
    if not a > 0:
        raise DomainError("hardy exponent must be positive")
    return WeightProfile("radial-power", int(N), ball_measure(N, R), a=float(a), c=float(c), R=R)


def constant(c, m, N):
    if c < 0 or not m > 0:
        raise DomainError("constant weight needs c >= 0 and m > 0")
    return WeightProfile("constant", int(N), float(m), c=float(c), m=float(m))


def indicator(m, N, omega_measure=INF):
    if not m > 0 or m > omega_measure:
        raise DomainError("indicator measure must lie in (0, |Omega|]")
    return WeightProfile("indicator", int(N), float(omega_measure), m=float(m))


def sampled(values, measures, N, omega_measure=None):
    values = np.abs(np.asarray(values, dtype=float))
    measures = np.asarray(measures, dtype=float)
    if values.shape != measures.shape or values.ndim != 1 or len(values) == 0:
        raise DomainError("sampled weight needs matching value and measure lists")
    if np.any(~(measures > 0)):
        raise DomainError("cell measures must be positive")
    total = float(measures.sum())
    om = total if omega_measure is None else float(omega_measure)
    if total > om * (1 + 1e-12):
        raise DomainError("cell measures exceed |Omega|")
    return WeightProfile("sampled", int(N), om, values=tuple(values), measures=tuple(measures))


def radial_table(rho, g, N):
    rho = np.asarray(rho, dtype=float)
    g = np.abs(np.asarray(g, dtype=float))
    if rho.shape != g.shape or len(rho) < 2 or rho[0] != 0.0 or np.any(np.diff(rho) <= 0):
        raise DomainError("radial table needs increasing radii starting at 0")
    R = float(rho[-1])
    return WeightProfile("radial-table", int(N), ball_measure(N, R), R=R, rho=tuple(rho), g=tuple(g))


def zero(N, omega_measure=INF):
    return WeightProfile("constant", int(N), omega_measure, c=0.0, m=omega_measure)


# ---------------------------------------------------------------- operations
def decreasing_rearrangement(W, t):
    t_arr = W._check_t(t)
    out = W.star(t_arr)
    return float(out) if np.ndim(t) == 0 else out


def maximal(W, t):
    """``g**(t)``; ``inf`` when ``g*`` is not integrable at 0."""
    t_arr = np.atleast_1d(W._check_t(t, closed=True))
    if W.form == "constant":
        out = np.full(t_arr.shape, W.c)
    elif W.form == "indicator":
        out = W.c * np.minimum(1.0, W.m / t_arr)
    elif W.form == "sampled":
        out = np.array([W.integral(x)[0] / x for x in t_arr])
    else:
        out = _maximal_quadrature(W, t_arr)
    return float(out[0]) if np.ndim(t) == 0 else out.reshape(np.shape(t))


def _maximal_quadrature(W, t):
    # cumulative integral on a grid through all requested points
    order = np.argsort(t)
    ts = t[order]
    edges = np.unique(np.concatenate([
        quadrature.geometric_edges(ts[0], ts[-1], 8, W.breaks()) if ts[-1] > ts[0] else ts[:1], ts,
    ]))
    vals, ok = quadrature.cumulative(W.star, edges, order=16, head=True)
    if not ok:
        return np.full(t.shape, INF)
    out = np.empty_like(t)
    out[order] = vals[np.searchsorted(edges, ts)] / ts
    return out


def hardy_littlewood_bound(W, F, U):
    """``(int g Phi(|u|), int_0^|Omega| g* Phi(u*))`` by radial quadrature."""
    if not np.any(U.u != 0) or W.is_zero:
        return 0.0, 0.0
    V = U.symmetrized()

    def raw(r):
        return W.radial(r) * F.eval(np.abs(U.value(r)))

    def sym(r):
        return W.star(omega(U.N) * r**U.N) * F.eval(V.value(r))

    rho = _with_domain_break(U.rho, W)
    rv = _with_domain_break(V.rho, W)
    return radial_integral(raw, U.N, rho), radial_integral(sym, U.N, rv)


def _with_domain_break(rho, W):
    extra = [ball_radius(W.N, b) for b in W.breaks() if np.isfinite(b)]
    extra.append(W.domain_radius)
    extra = [x for x in extra if 0 < x < rho[-1]]
    return np.unique(np.concatenate([rho, extra]))


def polya_szego_pair(F, U, N=None):
    """``(int Phi(|v'|), int Phi(|u'|))`` over the ball, ``v`` the symmetrization of ``u``."""
    if N is not None and N != U.N:
        U = RadialProfile(U.rho, U.u, N)
    if not np.any(U.u != 0):
        return 0.0, 0.0
    V = U.symmetrized()
    return gradient_modular(F, V), gradient_modular(F, U.abs())


def gradient_modular(F, U):
    """``N w_N int Phi(|u'|) rho^(N-1) drho`` for a piecewise-linear profile (exact)."""
    d = np.abs(U.slopes)
    a, b = U.rho[:-1], U.rho[1:]
    return float(omega(U.N) * np.sum(F.eval(d) * (b**U.N - a**U.N)))
