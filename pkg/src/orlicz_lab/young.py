"""Young functions: evaluation, inverses, complements, growth indices and the
structural checks (doubling, submultiplicativity, endpoint integrability,
dominance relations).

Three representations share one interface:

* ``AnalyticYoung`` wraps the closed-form families handled by the kernels
  (power ``c t^p``, ``t^p + t^q``, ``max(t^p, t^q)``, ``t^p log(e + t)``).
* ``PiecewiseYoung`` has a density ``phi`` that is a power ``C_i t^l_i`` on
  each interval of a partition. It is closed under complementation, which
  gives exact complements of max-power functions.
* ``TabulatedYoung`` stores log-spaced nodes of ``Phi`` and ``phi`` with their
  log-log slopes and evaluates by cubic Hermite interpolation in log-log
  coordinates. Past the table ends a power law with the end slope is used
  and the point is reported as extrapolated.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicHermiteSpline, PchipInterpolator

from . import kernels, quadrature
from .errors import DomainError, NonConvergenceError

INF = float("inf")

RTOL = 1e-10
ATOL = 1e-14
MAXITER = 200

TABLE_LO = 1e-8
TABLE_HI = 1e8
TABLE_DENSITY = 64

CERT_LO = 1e-6
CERT_HI = 1e6
CERT_DENSITY = 25
C_MAX = 1e12


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _out(arr, scalar):
    return float(arr) if scalar else arr


def _check_nonneg(t, what="t"):
    if np.any(t < 0) or np.any(np.isnan(t)):
        raise DomainError(f"{what} must be nonnegative")


class YoungFunction:
    """Common interface; subclasses implement the ``_eval`` family of hooks."""

    family = "abstract"
    derivative_mode = "closed-form"

    def __init__(self, params=None, label=None):
        self.params = dict(params or {})
        self.label = label

    # public API -----------------------------------------------------------
    def eval(self, t):
        t, sc = _as_array(t)
        _check_nonneg(t)
        return _out(self._eval(t), sc)

    __call__ = eval

    def derivative(self, t):
        t, sc = _as_array(t)
        _check_nonneg(t)
        return _out(self._derivative(t), sc)

    def second_derivative(self, t):
        t, sc = _as_array(t)
        _check_nonneg(t)
        return _out(self._second(t), sc)

    def inverse(self, y):
        y, sc = _as_array(y)
        _check_nonneg(y, "y")
        return _out(self._inverse(y), sc)

    def phi_inverse(self, y):
        y, sc = _as_array(y)
        _check_nonneg(y, "y")
        return _out(self._phi_inverse(y), sc)

    def elasticity(self, t):
        """``t phi(t) / Phi(t)``, the local log-log slope of Phi."""
        t, sc = _as_array(t)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = t * self._derivative(t) / self._eval(t)
        return _out(out, sc)

    def complement(self):
        raise NotImplementedError

    def extrapolated(self, t):
        """Boolean mask of abscissae outside a table (always False here)."""
        return np.zeros(np.shape(t), dtype=bool)

    def spec(self):
        return self.label or self.family

    def __repr__(self):
        return f"<YoungFunction {self.spec()}>"

    def same_as(self, other):
        return isinstance(other, YoungFunction) and self.spec() == other.spec()

    # helpers ----------------------------------------------------------------
    def _bisect_inverse(self, fn, y):
        t, ok = kernels.bisect_increasing(fn, y.ravel(), RTOL, MAXITER)
        if not ok:
            raise NonConvergenceError("inverse bracket did not close", bracket=(0.0, np.exp(700.0)))
        return t.reshape(y.shape)


class AnalyticYoung(YoungFunction):
    """Closed-form families evaluated by the compiled or numpy kernels."""

    _codes = {
        "power": kernels.POWER,
        "sumpow": kernels.SUMPOW,
        "maxpow": kernels.MAXPOW,
        "powlog": kernels.POWLOG,
    }

    def __init__(self, family, p, q=None, c=1.0, label=None):
        if family not in self._codes:
            raise ValueError(f"unknown analytic family {family!r}")
        if not p > 1:
            raise DomainError("exponent p must exceed 1")
        if family in ("sumpow", "maxpow") and not (q is not None and q > 1):
            raise DomainError("exponent q must exceed 1")
        if not c > 0:
            raise DomainError("coefficient c must be positive")
        params = {"p": float(p)}
        if q is not None:
            params["q"] = float(q)
        if family == "power" and c != 1.0:
            params["c"] = float(c)
        super().__init__(params, label)
        self.family = family
        self.code = self._codes[family]
        self.p = float(p)
        self.q = float(q) if q is not None else 0.0
        self.c = float(c)

    def _args(self):
        return self.code, self.p, self.q, self.c

    def _eval(self, t):
        return kernels.phi_eval(*self._args(), t)

    def _derivative(self, t):
        return kernels.dphi_eval(*self._args(), t)

    def _second(self, t):
        p, q, c = self.p, self.q, self.c
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            if self.family == "power":
                return c * p * (p - 1) * t ** (p - 2)
            if self.family == "sumpow":
                return p * (p - 1) * t ** (p - 2) + q * (q - 1) * t ** (q - 2)
            if self.family == "maxpow":
                lo, hi = min(p, q), max(p, q)
                return np.where(t < 1, lo * (lo - 1) * t ** (lo - 2), hi * (hi - 1) * t ** (hi - 2))
            e = np.e + t
            return p * (p - 1) * t ** (p - 2) * np.log(e) + 2 * p * t ** (p - 1) / e - t**p / e**2

    def _inverse(self, y):
        t, ok = kernels.phi_inverse(*self._args(), y, RTOL, MAXITER)
        if not ok:
            raise NonConvergenceError("inverse did not converge", bracket=(0.0, np.exp(700.0)))
        return np.asarray(t, dtype=float).reshape(y.shape)

    def _phi_inverse(self, y):
        t, ok = kernels.dphi_inverse(*self._args(), y, RTOL, MAXITER)
        if not ok:
            raise NonConvergenceError("phi inverse did not converge", bracket=(0.0, np.exp(700.0)))
        return np.asarray(t, dtype=float).reshape(y.shape)

    def complement(self):
        if self.family == "power":
            p, c = self.p, self.c
            pc = p / (p - 1)
            cc = (c * p) ** (-1.0 / (p - 1)) / pc
            return AnalyticYoung("power", pc, c=cc, label=f"complement({self.spec()})")
        if self.family == "maxpow":
            return self.to_piecewise().complement()
        return LegendreComplement(self)

    def to_piecewise(self):
        if self.family == "power":
            return PiecewiseYoung([0.0], [self.c * self.p], [self.p - 1], label=self.spec())
        if self.family == "maxpow":
            lo, hi = min(self.p, self.q), max(self.p, self.q)
            return PiecewiseYoung([0.0, 1.0], [lo, hi], [lo - 1, hi - 1], label=self.spec())
        raise ValueError(f"{self.family} has no piecewise power form")

    def spec(self):
        if self.label:
            return self.label
        names = {"power": "pow"}
        body = ",".join(f"{k}={_fmt(v)}" for k, v in self.params.items())
        return f"{names.get(self.family, self.family)}:{body}"


def _fmt(v):
    return repr(float(v)).rstrip("0").rstrip(".") if float(v) != int(v) else str(int(v))


def power(p, c=1.0):
    return AnalyticYoung("power", p, c=c)


def sumpow(p, q):
    return AnalyticYoung("sumpow", p, q)


def maxpow(p, q):
    return AnalyticYoung("maxpow", p, q)


def powlog(p):
    return AnalyticYoung("powlog", p)


class PiecewiseYoung(YoungFunction):
    """Density ``phi(t) = C_i t**l_i`` on ``[b_i, b_{i+1})``, ``b_0 = 0``.

    ``phi`` is right-continuous and may jump upward at a breakpoint; a zero
    exponent gives a flat stretch. Complementation maps this class to itself.
    """

    family = "piecewise"

    def __init__(self, breaks, coefs, exps, label=None):
        b = np.asarray(breaks, dtype=float)
        C = np.asarray(coefs, dtype=float)
        lam = np.asarray(exps, dtype=float)
        if b[0] != 0.0 or np.any(np.diff(b) <= 0):
            raise DomainError("breakpoints must start at 0 and increase")
        if np.any(C <= 0) or np.any(lam < 0) or lam[0] <= 0:
            raise DomainError("coefficients must be positive, exponents nonnegative")
        super().__init__({"breaks": b.tolist(), "coefs": C.tolist(), "exps": lam.tolist()}, label)
        self.b, self.C, self.lam = b, C, lam
        self.b_next = np.append(b[1:], INF)
        # phi just right of each start and just left of each end
        with np.errstate(over="ignore"):
            self.lo = C * np.where(lam > 0, b**lam, 1.0)
            self.hi = C * np.where(lam > 0, self.b_next**lam, 1.0)
        if np.any(self.lo[1:] < self.hi[:-1] * (1 - 1e-12)):
            raise DomainError("density must be nondecreasing")
        e = lam + 1.0
        seg = C[:-1] * (self.b_next[:-1] ** e[:-1] - b[:-1] ** e[:-1]) / e[:-1]
        self.A = np.concatenate([[0.0], np.cumsum(seg)])

    def _seg(self, t):
        return np.clip(np.searchsorted(self.b, t, side="right") - 1, 0, len(self.b) - 1)

    def _eval(self, t):
        i = self._seg(t)
        e = self.lam[i] + 1.0
        with np.errstate(over="ignore"):
            return self.A[i] + self.C[i] * (t**e - self.b[i] ** e) / e

    def _derivative(self, t):
        i = self._seg(t)
        with np.errstate(over="ignore"):
            out = self.C[i] * t ** self.lam[i]
        return np.where(t > 0, out, 0.0)

    def _second(self, t):
        i = self._seg(t)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            out = self.C[i] * self.lam[i] * t ** (self.lam[i] - 1.0)
        return np.where(self.lam[i] > 0, out, 0.0)

    def _inverse(self, y):
        i = np.clip(np.searchsorted(self.A, y, side="right") - 1, 0, len(self.A) - 1)
        e = self.lam[i] + 1.0
        with np.errstate(over="ignore"):
            base = (y - self.A[i]) * e / self.C[i] + self.b[i] ** e
        return np.where(y > 0, base ** (1.0 / e), 0.0)

    def _phi_inverse(self, y):
        # inf{t : phi(t) > y}, taken segment by segment
        yy = y.ravel()[None, :]
        C, lam = self.C[:, None], self.lam[:, None]
        b, bn = self.b[:, None], self.b_next[:, None]
        lo, hi = self.lo[:, None], self.hi[:, None]
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            inside = np.where(lam > 0, (yy / C) ** (1.0 / np.where(lam > 0, lam, 1.0)), b)
        cand = np.where(yy < lo, b, np.where(yy >= hi, INF, inside))
        cand = np.where((lam == 0) & (yy >= lo), INF, cand)
        out = np.min(cand, axis=0)
        return np.where(yy[0] > 0, out, 0.0).reshape(y.shape)

    def complement(self):
        starts, coefs, exps = [], [], []
        y_cur = 0.0
        for i in range(len(self.b)):
            lo = self.lo[i] if i > 0 else 0.0
            if lo > y_cur * (1 + 1e-14):
                # a jump of phi becomes a flat stretch of its inverse
                starts.append(y_cur)
                coefs.append(self.b[i])
                exps.append(0.0)
            if self.lam[i] > 0:
                starts.append(lo)
                coefs.append(self.C[i] ** (-1.0 / self.lam[i]))
                exps.append(1.0 / self.lam[i])
                y_cur = self.hi[i]
            else:
                y_cur = self.C[i]
        return PiecewiseYoung(starts, coefs, exps, label=f"complement({self.spec()})")

    def spec(self):
        if self.label:
            return self.label
        segs = ";".join(
            f"{_fmt(b)}:{_fmt(c)}*t^{_fmt(l)}" for b, c, l in zip(self.b, self.C, self.lam)
        )
        return f"piecewise:{segs}"


class LegendreComplement(YoungFunction):
    """Exact complement of a smooth family: ``Phi~(phi(t)) = t phi(t) - Phi(t)``.

    ``phi(t)`` is inverted by the family's Newton kernel, so no table and no
    interpolation error are involved. The complement of the complement is
    the source function itself.
    """

    family = "legendre"

    def __init__(self, F):
        super().__init__({"source": F.spec()}, f"complement({F.spec()})")
        self.source = F

    def _dual(self, t):
        return t * self.source._derivative(t) - self.source._eval(t)

    def _eval(self, s):
        t = self.source._phi_inverse(s)
        return np.where(s > 0, s * t - self.source._eval(t), 0.0)

    def _derivative(self, s):
        return self.source._phi_inverse(s)

    def _second(self, s):
        with np.errstate(divide="ignore"):
            return 1.0 / self.source._second(self.source._phi_inverse(s))

    def _phi_inverse(self, y):
        return self.source._derivative(y)

    def _inverse(self, y):
        # Phi~ o phi is D(t) = t phi(t) - Phi(t); Newton on log t from Phi^-1(y)
        F = self.source
        pos = y > 0
        v = np.log(np.where(pos, y, 1.0))
        u = np.log(F._inverse(np.where(pos, y, 1.0)))
        done = np.zeros(y.shape, dtype=bool)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            for _ in range(30):
                t = np.exp(u)
                D = self._dual(t)
                step = (np.log(D) - v) * D / (t * t * F._second(t))
                step = np.clip(np.where(np.isfinite(step), step, 0.0), -1.0, 1.0)
                u = u - step
                done = np.abs(step) < 1e-13
                if done.all():
                    break
        t = np.exp(u)
        bad = pos & ~(done & np.isfinite(t))
        if bad.any():
            t[bad] = self._bisect_inverse(self._dual, y[bad])
        return np.where(pos, F._derivative(t), 0.0)

    def complement(self):
        return self.source


class TabulatedYoung(YoungFunction):
    """Cubic Hermite interpolation of ``log Phi`` and ``log phi`` in ``log t``.

    ``k`` holds ``d log Phi / d log t = t phi / Phi`` and ``m`` holds
    ``d log phi / d log t`` at the nodes. With exact slopes the interpolation
    error is fourth order in the node spacing.
    """

    family = "tabulated"

    def __init__(self, x, logPhi, k, logphi, m, derivative_mode="closed-form",
                 source="", label=None, grid=None):
        x = np.asarray(x, dtype=float)
        if np.any(np.diff(x) <= 0):
            raise DomainError("tabulated abscissae must increase")
        super().__init__({"nodes": len(x), "source": source}, label)
        self.derivative_mode = derivative_mode
        self.x = x
        self.logPhi = np.asarray(logPhi, dtype=float)
        self.k = np.asarray(k, dtype=float)
        self.logphi = np.asarray(logphi, dtype=float)
        self.m = np.asarray(m, dtype=float)
        self.source = source
        self.grid = grid or {
            "lo": float(np.exp(x[0])), "hi": float(np.exp(x[-1])), "nodes": len(x),
        }
        self._Phi = CubicHermiteSpline(x, self.logPhi, self.k, extrapolate=False)
        self._phi = CubicHermiteSpline(x, self.logphi, self.m, extrapolate=False)
        self._dphi = self._phi.derivative()
        self._Phi_inv = CubicHermiteSpline(self.logPhi, x, 1.0 / self.k, extrapolate=False)
        self._phi_inv = CubicHermiteSpline(self.logphi, x, 1.0 / self.m, extrapolate=False)

    # log-space evaluators with power-law extrapolation
    def _log_Phi(self, u):
        x, lp, k = self.x, self.logPhi, self.k
        out = self._Phi(np.clip(u, x[0], x[-1]))
        out = np.where(u < x[0], lp[0] + k[0] * (u - x[0]), out)
        return np.where(u > x[-1], lp[-1] + k[-1] * (u - x[-1]), out)

    def _log_phi(self, u):
        x, lp, k = self.x, self.logphi, self.k
        out = self._phi(np.clip(u, x[0], x[-1]))
        # the extrapolated density is the derivative of the extrapolated Phi
        out = np.where(u < x[0], self.logPhi[0] + np.log(k[0]) - x[0] + (k[0] - 1) * (u - x[0]), out)
        return np.where(u > x[-1], self.logPhi[-1] + np.log(k[-1]) - x[-1] + (k[-1] - 1) * (u - x[-1]), out)

    def _log_slope_phi(self, u):
        inside = self._dphi(np.clip(u, self.x[0], self.x[-1]))
        out = np.where(u < self.x[0], self.k[0] - 1.0, inside)
        return np.where(u > self.x[-1], self.k[-1] - 1.0, out)

    def extrapolated(self, t):
        t = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore"):
            u = np.log(t)
        return (t > 0) & ((u < self.x[0]) | (u > self.x[-1]))

    def _eval(self, t):
        with np.errstate(divide="ignore", over="ignore"):
            u = np.log(np.where(t > 0, t, 1.0))
            return np.where(t > 0, np.exp(self._log_Phi(u)), 0.0)

    def _derivative(self, t):
        with np.errstate(divide="ignore", over="ignore"):
            u = np.log(np.where(t > 0, t, 1.0))
            return np.where(t > 0, np.exp(self._log_phi(u)), 0.0)

    def _second(self, t):
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            u = np.log(np.where(t > 0, t, 1.0))
            return np.where(t > 0, np.exp(self._log_phi(u)) * self._log_slope_phi(u) / t, 0.0)

    def _elasticity_log(self, u):
        phi = self._log_phi(u)
        return np.exp(phi + u - self._log_Phi(u))

    def _inverse(self, y):
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            v = np.log(np.where(y > 0, y, 1.0))
            lp, k, x = self.logPhi, self.k, self.x
            u = self._Phi_inv(np.clip(v, lp[0], lp[-1]))
            u = np.where(v < lp[0], x[0] + (v - lp[0]) / k[0], u)
            u = np.where(v > lp[-1], x[-1] + (v - lp[-1]) / k[-1], u)
            for _ in range(3):
                u = u - (self._log_Phi(u) - v) / self._elasticity_log(u)
            return np.where(y > 0, np.exp(u), 0.0)

    def _phi_inverse(self, y):
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            v = np.log(np.where(y > 0, y, 1.0))
            lp, m, x = self.logphi, self.m, self.x
            lo = self._log_phi(np.array([x[0]]))[0]
            hi = self._log_phi(np.array([x[-1]]))[0]
            u = self._phi_inv(np.clip(v, lp[0], lp[-1]))
            u = np.where(v < lo, x[0] + (v - lo) / (self.k[0] - 1.0), u)
            u = np.where(v > hi, x[-1] + (v - hi) / (self.k[-1] - 1.0), u)
            for _ in range(3):
                u = u - (self._log_phi(u) - v) / self._log_slope_phi(u)
            return np.where(y > 0, np.exp(u), 0.0)

    def complement(self):
        # Legendre identity at the nodes: y = phi(t), Phi~(y) = t phi(t) - Phi(t)
        x, lP, lp = self.x, self.logPhi, self.logphi
        Phi = np.exp(lP)
        tphi = np.exp(x + lp)
        dual = tphi - Phi
        good = dual > 0
        y = lp[good]
        logdual = np.log(dual[good])
        kd = tphi[good] / dual[good]
        md = 1.0 / self.m[good]
        return TabulatedYoung(
            y, logdual, kd, x[good], md, derivative_mode=self.derivative_mode,
            source=f"complement({self.spec()})", label=f"complement({self.spec()})",
        )

    def spec(self):
        return self.label or f"table:{self.source}"


def tabulate(F, lo=TABLE_LO, hi=TABLE_HI, per_decade=TABLE_DENSITY):
    """Exact nodes of an analytic Young function on a log grid."""
    t = np.geomspace(lo, hi, int(round(per_decade * np.log10(hi / lo))) + 1)
    Phi = F.eval(t)
    phi = F.derivative(t)
    dphi = F.second_derivative(t)
    return TabulatedYoung(
        np.log(t), np.log(Phi), t * phi / Phi, np.log(phi), t * dphi / phi,
        source=F.spec(), label=f"table({F.spec()})",
        grid={"lo": lo, "hi": hi, "per_decade": per_decade},
    )


def from_phi_samples(t, phi, source="samples"):
    """Young function from samples of its density ``phi`` (numeric-difference mode).

    ``phi`` is interpolated monotonically in log-log coordinates, ``Phi`` is
    its running integral (head closed by the fitted power at the first node).
    """
    t = np.asarray(t, dtype=float)
    phi = np.asarray(phi, dtype=float)
    if t.ndim != 1 or t.shape != phi.shape or len(t) < 4:
        raise DomainError("need at least four (t, phi) samples")
    if np.any(t <= 0) or np.any(np.diff(t) <= 0):
        raise DomainError("abscissae must be positive and increasing")
    if np.any(phi <= 0) or np.any(np.diff(phi) < 0):
        raise DomainError("phi samples must be positive and nondecreasing")
    x, lp = np.log(t), np.log(phi)
    spline = PchipInterpolator(x, lp, extrapolate=True)
    m = spline.derivative()(x)

    def dens(s):
        return np.exp(spline(np.log(s)))

    Phi, _ = quadrature.cumulative(dens, t, order=8, head=True)
    return TabulatedYoung(
        x, np.log(Phi), t * phi / Phi, lp, m, derivative_mode="numeric-difference",
        source=source, label=f"table:{source}",
        grid={"lo": float(t[0]), "hi": float(t[-1]), "nodes": len(t)},
    )


def two_power_density(p, q):
    """Density form ``phi~(t) = t^{p-1}`` for t < 1 and ``t^{q-1}`` for t >= 1."""
    return PiecewiseYoung([0.0, 1.0], [1.0, 1.0], [p - 1.0, q - 1.0],
                          label=f"dens:max(t^{_fmt(p - 1)},t^{_fmt(q - 1)})")


# module-level operations -----------------------------------------------------

def eval(F, t):  # noqa: A001  (name mirrors the operation list)
    return F.eval(t)


def derivative(F, t):
    return F.derivative(t)


def inverse(F, y):
    return F.inverse(y)


def phi_inverse(F, y):
    return F.phi_inverse(y)


def complement(F):
    return F.complement()


def cert_grid(lo=CERT_LO, hi=CERT_HI, per_decade=CERT_DENSITY):
    return np.geomspace(lo, hi, int(round(per_decade * np.log10(hi / lo))) + 1)


def p_index(F, grid=None, rtol=1e-10):
    """Grid supremum of ``t phi(t) / Phi(t)`` with end extension.

    Returns ``inf`` when the ratio keeps increasing through the extensions
    (no finite index, so Phi is not doubling).
    """
    lo, hi, dens = (CERT_LO, CERT_HI, CERT_DENSITY) if grid is None else grid
    res = quadrature.grid_sup(F.elasticity, lo, hi, per_decade=dens,
                              extend_lo=True, extend_hi=True, rtol=rtol, max_extend=6)
    return res.value


@dataclass
class Verdict:
    status: str
    constant: float = float("nan")
    witness: tuple = ()
    value: float = float("nan")
    detail: dict = field(default_factory=dict)

    @property
    def holds(self):
        return self.status in ("consistent", "holds")

    def as_dict(self):
        return {
            "status": self.status,
            "constant": _json_num(self.constant),
            "witness": [float(w) for w in self.witness],
            "value": _json_num(self.value),
            **self.detail,
        }


def _json_num(v):
    if v is None:
        return None
    v = float(v)
    if np.isnan(v):
        return None
    if np.isinf(v):
        return "inf"
    return v


@dataclass
class GrowthCertificate:
    p_index: float
    delta2: Verdict
    deltaprime: Verdict
    grid_spec: dict

    def as_dict(self):
        return {
            "p_index": _json_num(self.p_index),
            "delta2": self.delta2.as_dict(),
            "deltaprime": self.deltaprime.as_dict(),
            "grid_spec": self.grid_spec,
        }


def check_delta2(F, grid=None, c_max=C_MAX):
    t = cert_grid(*(grid or ()))
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        ratio = F.eval(2 * t) / F.eval(t)
    bad = ~(ratio <= c_max)
    if np.any(bad):
        i = int(np.argmax(bad))
        return Verdict("falsified", witness=(float(t[i]),), value=float(ratio[i]))
    return Verdict("consistent", constant=max(float(ratio.max()), 1.0), detail={"note": "consistent on grid"})


def check_deltaprime(F, grid=None, c_max=C_MAX):
    t = cert_grid(*(grid or ()))
    Pt = F.eval(t)
    worst, arg = 0.0, (0.0, 0.0)
    for s, Ps in zip(t, Pt):
        with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
            r = F.eval(s * t) / (Ps * Pt)
        r = np.where(np.isnan(r), INF, r)
        j = int(np.argmax(r))
        if r[j] > worst:
            worst, arg = float(r[j]), (float(s), float(t[j]))
        if worst > c_max:
            return Verdict("falsified", witness=arg, value=worst)
    return Verdict("consistent", constant=worst, witness=arg, detail={"note": "consistent on grid"})


def growth_certificate(F):
    return GrowthCertificate(
        p_index(F), check_delta2(F), check_deltaprime(F),
        {"lo": CERT_LO, "hi": CERT_HI, "per_decade": CERT_DENSITY, "c_max": C_MAX},
    )


def _endpoint_exponent(F, points):
    a = np.asarray(F.elasticity(np.asarray(points, dtype=float)), dtype=float)
    return float(a[-1]), float(np.max(a) - np.min(a))


def _integrability(F, N, end, omega=INF, fit_tol=1e-6):
    if N < 2 or int(N) != N:
        raise DomainError("dimension N must be an integer >= 2")
    pts = [1e-4, 1e-6, 1e-8, 1e-10] if end == 0 else [1e4, 1e6, 1e8, 1e10]
    a, drift = _endpoint_exponent(F, pts)
    crit = float(N)

    def integrand(s):
        with np.errstate(divide="ignore", over="ignore"):
            return (s / F.eval(s)) ** (1.0 / (N - 1))

    detail = {"endpoint_exponent": a, "critical": crit, "drift": drift}
    gap = a - crit
    tol = max(fit_tol, 10 * drift)
    converges = gap < -tol if end == 0 else gap > tol
    diverges = gap > tol if end == 0 else gap < -tol
    if not converges and not diverges:
        if drift < 1e-12:
            # exact power at the endpoint: the integrand behaves like 1/s
            diverges = True
        else:
            return Verdict("inconclusive", value=float("nan"), detail=detail)
    if diverges:
        return Verdict("fails", value=INF, detail=detail)
    if end == 0:
        val = quadrature.integrate(integrand, 0.0, 1.0).value
    else:
        val = quadrature.integrate(integrand, 1.0, INF).value
    return Verdict("holds", value=val, detail=detail)


def check_H1(F, N, omega=INF):
    """Integrability of ``(s/Phi(s))^(1/(N-1))`` on (0, 1).

    The hypothesis is only imposed on unbounded domains; with ``omega`` finite
    the verdict is ``holds`` (vacuous) and the integral is still reported.
    """
    v = _integrability(F, N, 0)
    if np.isfinite(omega) and not v.holds:
        v.detail["vacuous"] = True
        return Verdict("holds", value=v.value, detail=v.detail)
    return v


def check_H3(F, N):
    """Integrability of ``(s/Phi(s))^(1/(N-1))`` on (1, inf)."""
    return _integrability(F, N, 1)


def check_prec_prec(F, G, k_list=(1.0, 2.0, 10.0), t_lo=1e2, t_hi=1e12, tol=1e-6,
                    slope_tol=1e-2):
    """Numerical test of ``Phi(k t) / Psi(t) -> 0`` as ``t -> inf`` for each k."""
    t = np.geomspace(t_lo, t_hi, 41)
    rows = []
    ok = True
    for k in k_list:
        with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
            r = F.eval(k * t) / G.eval(t)
        tail = slice(-11, None)
        slope = float(np.polyfit(np.log(t[tail]), np.log(r[tail]), 1)[0])
        decreasing = bool(np.all(np.diff(r[tail]) <= 0))
        good = slope < -slope_tol and decreasing
        ok &= good
        rows.append({"k": float(k), "slope": slope, "last_ratio": float(r[-1]),
                     "below_tol": bool(r[-1] < tol)})
    return Verdict("consistent" if ok else "inconsistent", detail={"per_k": rows})


def check_ll(F, G, lo=1e-6, hi=1e6, per_decade=25, rtol=1e-7):
    """Sufficient condition for ``Phi << Psi``: convexity of ``Psi o Phi^{-1}``."""
    y = cert_grid(lo, hi, per_decade)
    H = G.eval(F.inverse(y))
    slopes = np.diff(H) / np.diff(y)
    drops = slopes[:-1] - slopes[1:]
    scale = np.maximum(np.abs(slopes[1:]), 1e-300)
    bad = drops > rtol * scale
    if np.any(bad):
        i = int(np.argmax(bad))
        return Verdict("sufficient-condition fails", witness=(float(y[i + 1]),),
                       detail={"relative_drop": float(drops[i] / scale[i])})
    return Verdict("sufficient-condition holds")


def is_ll(verdict):
    return verdict.status == "sufficient-condition holds"
