"""Admissibility of a weight through each sufficient route, the Muckenhoupt
type suprema, radial Orlicz capacity and the capacity criterion.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from . import norms, quadrature
from .errors import NonConvergenceError
from .parallel import max_workers
from .radial import RadialProfile, omega, radial_integral
from .young import (
    Verdict, check_delta2, check_deltaprime, check_H1, check_H3, check_ll, p_index,
)

INF = float("inf")

MUCK_DECADES = 12
MUCK_DENSITY = 8
MUCK_EXTENSIONS = 2
MUCK_EXTEND_DECADES = 4
PIN_RTOL = 1e-6
# each sufficient route is named after the norm it puts on the weight
ROUTES = ("orlicz_bphi", "phi_infty", "x_phi", "l1", "x_phi_psi")


def _num(v):
    v = float(v)
    return None if np.isnan(v) else ("inf" if np.isinf(v) else v)


@dataclass
class MuckenhouptResult:
    value: float
    divergent: bool
    arg: tuple = ()
    grid: dict = field(default_factory=dict)

    def as_dict(self):
        return {"value": _num(self.value), "divergent": self.divergent,
                "arg": [float(a) for a in self.arg], "grid": self.grid}


@dataclass
class CapacityResult:
    a: float
    R: float
    value: float
    c: float
    profile: RadialProfile

    def as_dict(self):
        return {"a": self.a, "R": self.R, "value": _num(self.value), "c": self.c}


@dataclass
class Route:
    id: str
    hypotheses: dict
    norm: norms.NormReport
    verdict: str
    constant: float

    def as_dict(self):
        return {"id": self.id, "hypotheses": self.hypotheses, "norm": self.norm.as_dict(),
                "verdict": self.verdict, "constant": _num(self.constant)}


@dataclass
class AdmissibilityReport:
    routes: list
    muckenhoupt: dict = None
    capacity: dict = None

    @property
    def admissible(self):
        return [r.id for r in self.routes if r.verdict == "admissible"]

    def as_dict(self):
        return {"routes": [r.as_dict() for r in self.routes],
                "muckenhoupt": self.muckenhoupt, "capacity": self.capacity}


# ------------------------------------------------------------ Muckenhoupt
def _centered(center, decades):
    return center * 10.0 ** (-decades / 2.0), center * 10.0 ** (decades / 2.0)


def _pinned(B):
    """Sides of a 2-D table whose boundary max beats the interior max."""
    inner = B[1:-1, 1:-1]
    m = float(np.max(inner)) if inner.size else 0.0
    thresh = m * (1.0 + PIN_RTOL)
    sides = {
        "eps_lo": np.max(B[0, :]) > thresh, "eps_hi": np.max(B[-1, :]) > thresh,
        "t_lo": np.max(B[:, 0]) > thresh, "t_hi": np.max(B[:, -1]) > thresh,
    }
    return [k for k, v in sides.items() if v]


def _grid_search(table_fn, eps_range, t_range, t_cap, density):
    """Sup of ``table_fn(eps, t)`` with boundary-pinned range extensions."""
    e_lo, e_hi = eps_range
    t_lo, t_hi = t_range
    history = []
    for ext in range(MUCK_EXTENSIONS + 1):
        eps = np.geomspace(e_lo, e_hi, int(round(density * np.log10(e_hi / e_lo))) + 1)
        t = np.geomspace(t_lo, t_hi, int(round(density * np.log10(t_hi / t_lo))) + 1)
        B = table_fn(eps, t)
        B = np.where(np.isnan(B), 0.0, B)
        i, j = np.unravel_index(int(np.argmax(B)), B.shape)
        best = float(B[i, j])
        history.append(best)
        grid = {"eps": [float(e_lo), float(e_hi)], "t": [float(t_lo), float(t_hi)],
                "per_decade": density, "extensions": ext}
        if not np.isfinite(best):
            return MuckenhouptResult(INF, True, (float(eps[i]), float(t[j])), grid)
        if best == 0.0:
            return MuckenhouptResult(0.0, False, (), grid)
        sides = _pinned(B)
        if not sides:
            return MuckenhouptResult(best, False, (float(eps[i]), float(t[j])), grid)
        f = 10.0**MUCK_EXTEND_DECADES
        if "eps_lo" in sides:
            e_lo /= f
        if "eps_hi" in sides:
            e_hi *= f
        if "t_lo" in sides:
            t_lo /= f
        if "t_hi" in sides:
            t_hi = min(t_hi * f, t_cap) if np.isfinite(t_cap) else t_hi * f
    # still pinned after every extension: the supremum is not attained
    grid["history"] = history
    growing = history[-1] > history[0] * (1.0 + PIN_RTOL)
    return MuckenhouptResult(INF if growing else history[-1], bool(growing),
                             (float(eps[i]), float(t[j])), grid)


def muckenhoupt_sup_same(F, w, v, b=INF, density=MUCK_DENSITY, t_center=1.0, eps_center=1.0):
    """``sup (int_0^t eps w) phi(int_t^b phi^{-1}(1/(eps v)))`` over (eps, t)."""
    if b <= 0:
        raise ValueError("b must be positive")
    t_center = min(t_center, b / 10.0 ** (MUCK_DECADES / 2.0 + 0.1)) if np.isfinite(b) else t_center

    def table(eps, t):
        W, ok = quadrature.cumulative(w, t, order=16, head=True)
        if not ok:
            return np.full((len(eps), len(t)), INF)
        out = np.empty((len(eps), len(t)))
        tail = not np.isfinite(b)
        edges = t if tail else np.concatenate([t[t < b], [b]])
        for k, e in enumerate(eps):
            def f(s, e=e):
                with np.errstate(divide="ignore", over="ignore"):
                    return F.phi_inverse(1.0 / (e * v(s)))
            I, okt = quadrature.reverse_cumulative(f, edges, order=16, tail=tail)
            I = I[: len(t)]
            if not okt:
                out[k] = INF
                continue
            with np.errstate(over="ignore", invalid="ignore"):
                out[k] = e * W * F.derivative(I)
        return out

    if _is_zero(w):
        return MuckenhouptResult(0.0, False)
    return _grid_search(table, _centered(eps_center, MUCK_DECADES),
                        _centered(t_center, MUCK_DECADES), b, density)


def muckenhoupt_sup_general(F, G, w, v, b=INF, density=MUCK_DENSITY, t_center=1.0,
                            eps_center=1.0, mu_decades=40):
    """Sup over (eps, r) of the weighted two-function Hardy criterion.

    The inner Luxemburg norm with weight ``eps v`` is found from the modular
    ``K_r(mu) = int_r^b Fc(mu / v) v``, tabulated in ``mu`` once per grid:
    the norm is ``1/mu`` where ``eps K_r(mu) = 1``.
    """
    if _is_zero(w):
        return MuckenhouptResult(0.0, False)
    Fc = F.complement()
    t_center = min(t_center, b / 10.0 ** (MUCK_DECADES / 2.0 + 0.1)) if np.isfinite(b) else t_center

    def table(eps, r):
        W, ok = quadrature.cumulative(w, r, order=16, head=True)
        if not ok:
            return np.full((len(eps), len(r)), INF)
        tail = not np.isfinite(b)
        edges = r if tail else np.concatenate([r[r < b], [b]])
        mu = np.geomspace(10.0 ** (-mu_decades / 2), 10.0 ** (mu_decades / 2), 4 * mu_decades + 1)
        logK = np.empty((len(mu), len(r)))
        for k, m in enumerate(mu):
            def f(s, m=m):
                vs = v(s)
                with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
                    return Fc.eval(m / vs) * vs
            K, okt = quadrature.reverse_cumulative(f, edges, order=16, tail=tail)
            with np.errstate(divide="ignore"):
                logK[k] = np.log(K[: len(r)]) if okt else INF
        out = np.empty((len(eps), len(r)))
        lmu = np.log(mu)
        for j in range(len(r)):
            col = logK[:, j]
            good = np.isfinite(col)
            if good.sum() < 2:
                out[:, j] = INF
                continue
            lm = _interp_extrap(-np.log(eps), col[good], lmu[good])
            norm_inv_v = np.exp(-lm)
            with np.errstate(over="ignore", invalid="ignore"):
                lhs = G.inverse(G.eval(norm_inv_v / eps) * W[j])
                out[:, j] = lhs / F.inverse(1.0 / eps)
        return out

    return _grid_search(table, _centered(eps_center, MUCK_DECADES),
                        _centered(t_center, MUCK_DECADES), b, density)


def _interp_extrap(x, xp, fp):
    # linear interpolation with linear (power-law in the original scale) ends
    order = np.argsort(xp)
    xp, fp = xp[order], fp[order]
    y = np.interp(x, xp, fp)
    lo, hi = x < xp[0], x > xp[-1]
    y[lo] = fp[0] + (x[lo] - xp[0]) * (fp[1] - fp[0]) / (xp[1] - xp[0])
    y[hi] = fp[-1] + (x[hi] - xp[-1]) * (fp[-1] - fp[-2]) / (xp[-1] - xp[-2])
    return y


def _is_zero(w):
    probe = np.geomspace(1e-6, 1e6, 25)
    with np.errstate(all="ignore"):
        return not np.any(np.asarray(w(probe)) > 0)


def hardy_configuration(W, F, N=None):
    """``(w, v, b)`` with ``w = g*`` and ``v = 1/Phi(zeta)``."""
    N = W.N if N is None else N

    def v(s):
        with np.errstate(divide="ignore", over="ignore"):
            return 1.0 / F.eval(np.asarray(s, dtype=float) ** (1.0 / N - 1.0))

    return W.star, v, W.omega_measure


# --------------------------------------------------------------- capacity
def capacity_ball(F, N, a, R, rtol=1e-12, nodes=400):
    """Radial capacity of the closed ball of radius ``a`` in the ball of radius ``R``.

    The minimizer solves ``rho^(N-1) phi(-u') = c``; ``c`` is found from the
    unit drop ``int_a^R phi^{-1}(c rho^(1-N)) = 1`` by root bracketing in log c.
    """
    if not 0 < a < R < INF:
        raise ValueError("capacity needs 0 < a < R < inf")
    x, wq = quadrature.gauss_legendre(64)
    # geometric panels in rho resolve the rho^(1-N) growth toward a
    edges = np.geomspace(a, R, 9)
    rr = (0.5 * (edges[1:, None] - edges[:-1, None]) * x + 0.5 * (edges[1:, None] + edges[:-1, None]))
    ww = 0.5 * (edges[1:, None] - edges[:-1, None]) * wq
    rr, ww = rr.ravel(), ww.ravel()

    def slope(lc, r=rr):
        return F.phi_inverse(np.exp(lc) * r ** (1.0 - N))

    def drop(lc):
        return float(np.log(np.sum(slope(lc) * ww)))

    lo, hi = -1.0, 1.0
    k = 0
    while drop(lo) > 0:
        lo -= 2.0**k
        k += 1
        if lo < -700:
            raise NonConvergenceError("capacity bracket failed below", bracket=(lo, hi))
    k = 0
    while drop(hi) < 0:
        hi += 2.0**k
        k += 1
        if hi > 700:
            raise NonConvergenceError("capacity bracket failed above", bracket=(lo, hi))
    try:
        lc = optimize.brentq(drop, lo, hi, xtol=rtol, rtol=4 * np.finfo(float).eps)
    except ValueError as exc:
        raise NonConvergenceError(str(exc), bracket=(lo, hi)) from exc
    d = slope(lc)
    value = float(N * omega(N) * np.sum(F.eval(d) * rr ** (N - 1) * ww))
    # minimizer profile: u = 1 on [0, a], then the integrated slope
    prof_r = np.concatenate([[0.0], np.geomspace(a, R, nodes)])
    seg_edges = prof_r[1:]
    drops = np.array([
        np.sum(slope(lc, 0.5 * (b - s) * x + 0.5 * (b + s)) * 0.5 * (b - s) * wq)
        for s, b in zip(seg_edges[:-1], seg_edges[1:])
    ])
    u_tail = np.concatenate([[0.0], np.cumsum(drops[::-1])])[::-1]
    u_tail = u_tail / u_tail[0]
    u = np.concatenate([[1.0], u_tail])
    u[-1] = 0.0
    return CapacityResult(float(a), float(R), value, float(np.exp(lc)), RadialProfile(prof_r, u, N))


def capacity_criterion(W, F, G, N=None, R=1.0, a_grid=None):
    """``sup_a (int_{B_a} g) / (G o F^{-1})(Cap(B_a, B_R))`` over ``a_grid``."""
    N = W.N if N is None else N
    a_grid = np.linspace(0.05, 0.95, 19) * R if a_grid is None else np.asarray(a_grid, dtype=float)
    rows = []
    best, arg = 0.0, float("nan")
    divergent = False
    for a in a_grid:
        mass = radial_integral(W.radial, N, np.array([0.0, a]))
        cap = capacity_ball(F, N, a, R).value
        den = float(G.eval(F.inverse(cap)))
        ratio = mass / den if np.isfinite(mass) else INF
        rows.append({"a": float(a), "mass": _num(mass), "capacity": cap, "ratio": _num(ratio)})
        if not np.isfinite(ratio):
            divergent = True
        if ratio > best:
            best, arg = ratio, float(a)
    return {"value": _num(INF if divergent else best), "divergent": divergent, "arg": arg,
            "ll": check_ll(F, G).as_dict(), "rows": rows}


# ---------------------------------------------------------- admissibility
def _status(v):
    return v.as_dict() if isinstance(v, Verdict) else v


def _flag(ok, **extra):
    return {"status": "holds" if ok else "fails", **extra}


def _route(rid, hyps, report, constant):
    ok = all(h.get("status") in ("holds", "consistent", "sufficient-condition holds")
             for h in hyps.values())
    if not ok:
        verdict = "hypothesis-failed"
    elif not report.finite:
        verdict = "norm-infinite"
    else:
        verdict = "admissible"
    return Route(rid, hyps, report, verdict, constant)


def _max_form(x, P):
    return max(x, x ** (1.0 / P)) if np.isfinite(x) else INF


def admissibility_report(W, F, G=None, N=None, omega_measure=None, muckenhoupt=False,
                         capacity=None, routes=ROUTES):
    """Every route's hypotheses, norm and verdict for the weight ``W``."""
    G = F if G is None else G
    N = W.N if N is None else N
    om = W.omega_measure if omega_measure is None else omega_measure
    same = F.same_as(G)
    Fc, Gc = F.complement(), G.complement()
    cache = {}

    def get(key, fn):
        if key not in cache:
            cache[key] = fn()
        return cache[key]

    dp_F = lambda: get("dpF", lambda: check_deltaprime(F))  # noqa: E731
    dp_Fc = lambda: get("dpFc", lambda: check_deltaprime(Fc))  # noqa: E731
    same_flag = _flag(same, note="route requires Psi = Phi")

    def route_bphi():
        h1 = check_H1(F, N, om)
        hyps = {"Phi=Psi": same_flag, "deltaprime(Phi)": _status(dp_F()),
                "deltaprime(Phi~)": _status(dp_Fc()), "H1": _status(h1)}
        if h1.holds and not h1.detail.get("vacuous"):
            rep = norms.norm_orlicz_bphi(W, F, N)
            hyps["B_Phi_convex"] = _flag(rep.hypotheses.get("B_Phi_convex", False))
        elif h1.holds:
            # H1 holds on a bounded domain only after changing Phi near 0; the
            # tabulated B_Phi is built from Phi itself and is not available
            hyps["B_Phi_constructed"] = _flag(False, note="H1 integral diverges for Phi itself")
            rep = norms.NormReport(INF, "orlicz_bphi", {}, False,
                                   notes=["B_Phi not constructed: H1 only holds vacuously"])
        else:
            rep = norms.NormReport(INF, "orlicz_bphi", {}, False, notes=["H1 fails: B_Phi undefined"])
        return _route("orlicz_bphi", hyps, rep, rep.value)

    def route_phi_infty():
        rep = norms.norm_phi_infty(W, F, N)
        hyps = {"Phi=Psi": same_flag, "deltaprime(Phi~)": _status(dp_Fc()),
                "P_Phi<N": rep.hypotheses["P_Phi<N"]}
        return _route("phi_infty", hyps, rep, rep.value)

    def route_x_phi():
        rep = norms.norm_x_phi(W, F, N)
        hyps = {"Phi=Psi": same_flag, "deltaprime(Phi)": _status(dp_F()),
                "delta2(Phi~)": _status(check_delta2(Fc)), "H2": rep.hypotheses["H2"]}
        return _route("x_phi", hyps, rep, rep.value)

    def route_l1():
        rep = norms.norm_l1(W)
        P = p_index(G)
        hyps = {"|Omega|<inf": _flag(np.isfinite(om), value=_num(om)),
                "deltaprime(Phi~)": _status(dp_Fc()), "H3": _status(check_H3(F, N))}
        route = _route("l1", hyps, rep, _max_form(rep.value, P))
        if check_deltaprime(Gc).holds and rep.finite:
            rep.notes.append(f"Psi~ in deltaprime: constant may be Psi^-1(||g||) = {float(G.inverse(rep.value)):.6g}")
        return route

    def route_x_phi_psi():
        h1 = check_H1(F, N, om)
        ll = check_ll(F, G)
        hyps = {"H1": _status(h1), "deltaprime(Phi)": _status(dp_F()),
                "deltaprime(Phi~)": _status(dp_Fc()), "deltaprime(Psi)": _status(check_deltaprime(G)),
                "Phi<<Psi": _status(ll)}
        rep = norms.norm_x_phi_psi(W, F, G, N)
        hyps["H4"] = rep.hypotheses["H4"]
        return _route("x_phi_psi", hyps, rep, _max_form(rep.value, p_index(G)))

    # certificates shared by several routes are computed before fan-out
    dp_F()
    dp_Fc()
    table = dict(zip(ROUTES, (route_bphi, route_phi_infty, route_x_phi, route_l1, route_x_phi_psi)))
    ids = [r for r in ROUTES if r in routes]
    with ThreadPoolExecutor(max_workers=max_workers(len(ids))) as pool:
        results = list(pool.map(lambda rid: table[rid](), ids))
    report = AdmissibilityReport(results)
    if muckenhoupt:
        w, v, b = hardy_configuration(W, F, N)
        report.muckenhoupt = muckenhoupt_sup_same(F, w, v, b).as_dict()
    if capacity is not None:
        R, a_grid = capacity
        report.capacity = capacity_criterion(W, F, G, N, R, a_grid)
    return report
