"""Luxemburg norms and the rearrangement-invariant norms built from ``g**``:
``L^{Phi,inf}``, ``X_Phi`` (through ``G_Phi`` and ``eta_Phi``) and
``X_{Phi,Psi}`` (through ``eta_{Phi,Psi}``), with the hypotheses H2 and H4.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from . import quadrature
from .rearrange import WeightProfile, maximal
from .young import Verdict, YoungFunction, check_delta2, p_index

INF = float("inf")

KINDS = ("luxemburg", "phi_infty", "x_phi", "x_phi_psi", "l1", "orlicz_bphi")

SUP_LO = 1e-8
SUP_HI = 1e8
SUP_DENSITY = 32
LUX_RTOL = 1e-10
# r-range used to read the behaviour of eta at 0
H_PROBE = (1e-12, 1e-9)
H_SLOPE_TOL = 1e-3


@dataclass
class NormReport:
    value: float
    kind: str
    grid: dict
    finite: bool
    sup_arg: float = float("nan")
    hypotheses: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def as_dict(self):
        def num(v):
            v = float(v)
            return None if np.isnan(v) else ("inf" if np.isinf(v) else v)

        return {
            "value": num(self.value),
            "kind": self.kind,
            "grid": self.grid,
            "finite": self.finite,
            "sup_arg": num(self.sup_arg),
            "hypotheses": self.hypotheses,
            "notes": list(self.notes),
        }


def zeta(s, N):
    return np.asarray(s, dtype=float) ** (1.0 / N - 1.0)


# ---------------------------------------------------------------- luxemburg
def modular(F, f, a=0.0, b=INF, weight=None, lam=1.0):
    """``int_a^b Phi(f/lam) w``; ``f`` callable or ``(values, measures)`` steps."""
    if isinstance(f, tuple):
        vals, meas = (np.asarray(x, dtype=float) for x in f)
        w = np.ones_like(vals) if weight is None else np.asarray(weight, dtype=float)
        return float(np.sum(F.eval(np.abs(vals) / lam) * meas * w))

    def integrand(s):
        with np.errstate(over="ignore", invalid="ignore"):
            v = F.eval(np.abs(f(s)) / lam)
            return v if weight is None else v * weight(s)

    return quadrature.integrate(integrand, a, b, per_decade=4, order=12).value


def luxemburg(F, f, a=0.0, b=INF, weight=None, rtol=LUX_RTOL):
    """``inf{lam > 0 : modular(lam) <= 1}``; ``inf`` if the modular never is finite."""
    if isinstance(f, tuple) and not np.any(np.asarray(f[0]) != 0):
        return 0.0

    def g(u):
        with np.errstate(divide="ignore"):
            return np.log(modular(F, f, a, b, weight, np.exp(u)))

    lo, hi = -1.0, 1.0
    glo, ghi = g(lo), g(hi)
    if glo == -INF and ghi == -INF:
        return 0.0
    # under delta2 the modular is finite for one lam iff for all; expanding
    # further would only reach lam where Phi(f/lam) underflows near the cuts
    if glo == INF and ghi == INF and check_delta2(F).holds:
        return INF
    k = 0
    while not ghi < 0:
        lo, glo = hi, ghi
        hi += 2.0**k
        ghi = g(hi)
        k += 1
        if hi > 700:
            return INF
    k = 0
    while not glo > 0:
        hi, ghi = lo, glo
        lo -= 2.0**k
        glo = g(lo)
        k += 1
        if lo < -700:
            return 0.0
    if not np.isfinite(glo):
        # modular infinite below, finite above: bisect the finiteness edge first
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            gm = g(mid)
            if gm > 0:
                lo, glo = mid, gm
                if np.isfinite(gm):
                    break
            else:
                hi, ghi = mid, gm
        if not np.isfinite(glo):
            return float(np.exp(hi))
    u = optimize.brentq(g, lo, hi, xtol=rtol * 1e-2, rtol=4 * np.finfo(float).eps)
    return float(np.exp(u))


# ------------------------------------------------------------- sup helpers
def _sup_range(W):
    hi = min(W.omega_measure, SUP_HI)
    return SUP_LO, hi, not np.isfinite(W.omega_measure)


def _sup(fn, W, density=SUP_DENSITY):
    lo, hi, open_hi = _sup_range(W)
    res = quadrature.grid_sup(fn, lo, hi, per_decade=density, extend_lo=True, extend_hi=open_hi)
    return res


def _flagged(res, kind, hyp, notes=()):
    return NormReport(res.value, kind, res.grid, res.finite, res.arg, hyp,
                      list(notes) + ([f"sup pinned at {res.pinned} end"] if res.pinned else []))


# -------------------------------------------------------------- L^{Phi,inf}
def norm_phi_infty(W, F, N=None, density=SUP_DENSITY):
    N = W.N if N is None else N
    P = p_index(F)
    hyp = {"P_Phi<N": {"status": "holds" if P < N else "fails", "value": P}}
    if W.is_zero:
        return NormReport(0.0, "phi_infty", {}, True, hypotheses=hyp)

    def ratio(s):
        return maximal(W, s) / F.eval(s ** (-1.0 / N))

    res = _sup(ratio, W, density)
    return _flagged(res, "phi_infty", hyp)


# ----------------------------------------------------------------- G, eta
def g_phi(F, N, s):
    z = zeta(s, N)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        y = F.eval(z)
        out = y * F.complement().eval(1.0 / y)
    return float(out) if np.ndim(s) == 0 else out


def _tail_integral(F, N, omega, r):
    """``int_r^omega 1/G_Phi`` for an array of ``r`` (single reverse sweep)."""
    Fc = F.complement()

    def inv_g(s):
        z = zeta(s, N)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            y = F.eval(z)
            return 1.0 / (y * Fc.eval(1.0 / y))

    r = np.asarray(r, dtype=float)
    order = np.argsort(r)
    rs = r[order]
    if np.isfinite(omega):
        top, tail = omega, False
    else:
        top, tail = max(rs[-1], 1.0) * quadrature.TAIL_CUT, True
    lo = rs[0]
    edges = np.unique(np.concatenate([quadrature.geometric_edges(lo, top, 8), rs[rs < top]]))
    vals, ok = quadrature.reverse_cumulative(inv_g, edges, order=16, tail=tail)
    out = np.empty_like(r)
    if not ok:
        out[:] = INF
        return out
    idx = np.searchsorted(edges, rs)
    v = np.where(rs < top, vals[np.minimum(idx, len(vals) - 1)], 0.0)
    out[order] = v
    return out


def eta_phi(F, N, omega, r):
    """``r phi(int_r^|Omega| 1/G_Phi)``; ``inf`` when the tail integral diverges."""
    r_arr = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(~(r_arr > 0)) or np.any(r_arr > omega):
        from .errors import DomainError

        raise DomainError("r must lie in (0, |Omega|)")
    integ = _tail_integral(F, N, omega, r_arr)
    with np.errstate(over="ignore", invalid="ignore"):
        out = np.where(np.isfinite(integ), r_arr * F.derivative(np.where(np.isfinite(integ), integ, 1.0)), INF)
    return float(out[0]) if np.ndim(r) == 0 else out.reshape(np.shape(r))


def _slope_at_zero(eta, omega):
    top = min(H_PROBE[1], 1e-3 * omega) if np.isfinite(omega) else H_PROBE[1]
    r = np.geomspace(top * 1e-3, top, 13)
    e = np.asarray(eta(r), dtype=float)
    if not np.all(np.isfinite(e)):
        return INF, -INF
    k = float(np.polyfit(np.log(r), np.log(e), 1)[0])
    return float(e[0]), k


def _limit_verdict(name, eta, omega):
    value, slope = _slope_at_zero(eta, omega)
    detail = {"slope_at_0": slope, "eta_at_probe": value}
    if not np.isfinite(value):
        return Verdict("fails", value=INF, detail=detail)
    if slope >= -H_SLOPE_TOL:
        return Verdict("holds", value=value, detail=detail)
    return Verdict("fails", value=INF, detail=detail)


def check_H2(F, N, omega):
    """``lim_{r -> 0} eta_Phi(r) < inf`` read from the log-log slope near 0."""
    return _limit_verdict("H2", lambda r: eta_phi(F, N, omega, r), omega)


def norm_x_phi(W, F, N=None, density=SUP_DENSITY):
    N = W.N if N is None else N
    h2 = check_H2(F, N, W.omega_measure)
    hyp = {"H2": h2.as_dict()}
    if W.is_zero:
        return NormReport(0.0, "x_phi", {}, True, hypotheses=hyp)

    def prod(r):
        return maximal(W, r) * eta_phi(F, N, W.omega_measure, r)

    res = _sup(prod, W, density)
    notes = [] if h2.holds else ["H2 fails: value computed for information only"]
    return _flagged(res, "x_phi", hyp, notes)


# ----------------------------------------------------------- eta_{Phi,Psi}
def zeta_norm(F, N, omega, r):
    """``||zeta||`` in the Luxemburg space of the complement of ``Phi`` on (r, |Omega|)."""
    Fc = F.complement()
    return luxemburg(Fc, lambda s: zeta(s, N), float(r), float(omega))


def eta_phi_psi(F, G, N, omega, r):
    r_arr = np.atleast_1d(np.asarray(r, dtype=float))
    Fc = F.complement()
    out = np.array([
        x * G.eval(luxemburg(Fc, lambda s: zeta(s, N), float(x), float(omega))) for x in r_arr
    ])
    return float(out[0]) if np.ndim(r) == 0 else out.reshape(np.shape(r))


def check_H4(F, G, N, omega):
    """``lim_{r -> 0} eta_{Phi,Psi}(r) < inf`` read from the log-log slope near 0."""
    return _limit_verdict("H4", lambda r: eta_phi_psi(F, G, N, omega, r), omega)


def norm_x_phi_psi(W, F, G, N=None, density=SUP_DENSITY):
    N = W.N if N is None else N
    h4 = check_H4(F, G, N, W.omega_measure)
    hyp = {"H4": h4.as_dict()}
    if W.is_zero:
        return NormReport(0.0, "x_phi_psi", {}, True, hypotheses=hyp)

    def prod(r):
        return maximal(W, r) * eta_phi_psi(F, G, N, W.omega_measure, r)

    res = _sup(prod, W, density)
    notes = [] if h4.holds else ["H4 fails: value computed for information only"]
    return _flagged(res, "x_phi_psi", hyp, notes)


# ------------------------------------------------------------ L1 and L^B~
def norm_l1(W):
    value, finite = W.l1()
    return NormReport(value if finite else INF, "l1", {"omega": W.omega_measure}, bool(finite and np.isfinite(value)))


def norm_orlicz(W, F):
    """Luxemburg norm of ``g`` for ``F``, computed on ``g*`` over (0, |Omega|)."""
    if W.is_zero:
        return 0.0
    if W.form == "sampled":
        return luxemburg(F, (np.asarray(W.values), np.asarray(W.measures)))
    if W.form == "constant":
        return W.c / F.inverse(1.0 / W.m)
    if W.form == "indicator":
        return W.c / F.inverse(1.0 / W.m)
    return luxemburg(F, W.star, 0.0, W.omega_measure)


def norm_orlicz_bphi(W, F, N=None):
    """``||g||`` in the Luxemburg space of the complement of ``B_Phi``."""
    from .conjugate import conjugate_bundle

    N = W.N if N is None else N
    bundle = conjugate_bundle(F, N)
    value = norm_orlicz(W, bundle.b_phi_complement)
    return NormReport(value, "orlicz_bphi", {"omega": W.omega_measure}, bool(np.isfinite(value)),
                      hypotheses={"B_Phi_convex": bundle.b_convex})


def norm(kind, W, F, G=None, N=None):
    """Dispatch by kind name, as used by the command line."""
    if kind == "phi_infty":
        return norm_phi_infty(W, F, N)
    if kind == "x_phi":
        return norm_x_phi(W, F, N)
    if kind == "x_phi_psi":
        return norm_x_phi_psi(W, F, G if G is not None else F, N)
    if kind == "l1":
        return norm_l1(W)
    if kind == "orlicz_bphi":
        return norm_orlicz_bphi(W, F, N)
    if kind == "luxemburg":
        v = norm_orlicz(W, F)
        return NormReport(v, "luxemburg", {"omega": W.omega_measure}, bool(np.isfinite(v)))
    raise ValueError(f"unknown norm kind {kind!r}")


__all__ = [
    "NormReport", "KINDS", "luxemburg", "modular", "norm_phi_infty", "g_phi", "eta_phi",
    "check_H2", "norm_x_phi", "zeta_norm", "eta_phi_psi", "check_H4", "norm_x_phi_psi",
    "norm_l1", "norm_orlicz", "norm_orlicz_bphi", "norm", "WeightProfile", "YoungFunction",
]
