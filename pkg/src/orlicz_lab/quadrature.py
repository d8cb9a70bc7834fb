"""Composite Gauss-Legendre quadrature on log-spaced panels, endpoint power
fits for singular heads and power-law tails, and a grid supremum search.

Every integrand in this package is power-dominated near 0 and near infinity,
so the strategy is uniform: integrate the proper part on geometric panels and
close each improper end analytically from a fitted local exponent.
"""

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy import optimize

INF = float("inf")

# relative cut used to split an improper end from the proper part
HEAD_CUT = 1e-14
TAIL_CUT = 1e14
# fitted exponents this close to -1 count as the logarithmic borderline
EXP_TOL = 1e-9


@lru_cache(maxsize=16)
def gauss_legendre(order):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def geometric_edges(a, b, per_decade, breaks=()):
    """Panel edges on [a, b] (0 < a < b < inf), geometric, with extra breaks."""
    n = max(1, int(np.ceil(per_decade * np.log10(b / a))))
    edges = np.geomspace(a, b, n + 1)
    if breaks:
        extra = [x for x in breaks if a < x < b]
        edges = np.unique(np.concatenate([edges, extra]))
    return edges


def panel_nodes(edges, order=16):
    """Gauss nodes and weights for panels whose edges are given.

    Panels are mapped through the log variable, so a power law integrand is
    resolved with the same relative accuracy on every panel.
    """
    x, w = gauss_legendre(order)
    lo = np.log(edges[:-1])[:, None]
    hi = np.log(edges[1:])[:, None]
    u = 0.5 * (hi - lo) * x + 0.5 * (hi + lo)
    s = np.exp(u)
    ws = 0.5 * (hi - lo) * w * s
    return s, ws


def local_exponent(f, x, step=0.5):
    """log-log slope of ``f`` between ``x`` and ``x*10**step``."""
    x = np.asarray(x, dtype=float)
    f0 = np.asarray(f(x), dtype=float)
    f1 = np.asarray(f(x * 10.0**step), dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.log(f1 / f0) / (step * np.log(10.0))


@dataclass
class Integral:
    value: float
    finite: bool
    head: float = 0.0
    tail: float = 0.0
    head_exponent: float = float("nan")
    tail_exponent: float = float("nan")
    notes: list = field(default_factory=list)

    def __float__(self):
        return float(self.value)


def _head(f, cut):
    f0 = float(np.asarray(f(np.array([cut])))[0])
    if f0 == 0.0:
        return 0.0, float("nan")
    k = float(local_exponent(f, np.array([cut]))[0])
    if not np.isfinite(k):
        return 0.0, k
    if k <= -1.0 + EXP_TOL:
        return INF, k
    return f0 * cut / (k + 1.0), k


def _tail(f, cut):
    f0 = float(np.asarray(f(np.array([cut])))[0])
    if f0 == 0.0:
        return 0.0, float("nan")
    k = float(local_exponent(f, np.array([cut]), step=-0.5)[0])
    if not np.isfinite(k):
        return 0.0, k
    if k >= -1.0 - EXP_TOL:
        return INF, k
    return -f0 * cut / (k + 1.0), k


def integrate(f, a, b, per_decade=8, order=16, breaks=(), head_cut=None, tail_cut=None):
    """Integrate a vectorized nonnegative ``f`` over [a, b], 0 <= a < b <= inf.

    An end at 0 is closed with ``f(c) c / (k+1)`` where ``k`` is the local
    exponent just inside the cut ``c``; an infinite end with ``-f(C) C/(k+1)``.
    A non-integrable exponent yields ``value = inf`` and ``finite = False``.
    """
    if not b > a:
        return Integral(0.0, True)
    lo, hi = a, b
    head = tail = 0.0
    kh = kt = float("nan")
    if a == 0.0:
        ref = b if np.isfinite(b) else 1.0
        lo = head_cut if head_cut is not None else ref * HEAD_CUT
        head, kh = _head(f, lo)
    if not np.isfinite(b):
        ref = max(lo, 1.0)
        hi = tail_cut if tail_cut is not None else ref * TAIL_CUT
        tail, kt = _tail(f, hi)
    if not (hi > lo):
        return Integral(head + tail, np.isfinite(head + tail), head, tail, kh, kt)
    s, w = panel_nodes(geometric_edges(lo, hi, per_decade, breaks), order)
    with np.errstate(over="ignore", invalid="ignore"):
        vals = np.asarray(f(s.ravel()), dtype=float).reshape(s.shape)
    body = float(np.sum(vals * w))
    total = body + head + tail
    finite = bool(np.isfinite(total))
    return Integral(total if finite else INF, finite, head, tail, kh, kt)


def cumulative(f, edges, order=16, head=True):
    """Running integral of ``f`` at each edge, starting from 0 at 0.

    ``edges`` must be increasing and positive; the piece [0, edges[0]] is
    closed by the head power fit when ``head`` is true.
    Returns ``(values, finite_head)``.
    """
    s, w = panel_nodes(np.asarray(edges, dtype=float), order)
    with np.errstate(over="ignore", invalid="ignore"):
        vals = np.asarray(f(s.ravel()), dtype=float).reshape(s.shape)
    pieces = np.sum(vals * w, axis=1)
    h = 0.0
    if head:
        h, _ = _head(f, float(edges[0]))
    out = np.concatenate([[h], h + np.cumsum(pieces)])
    return out, bool(np.isfinite(h))


def reverse_cumulative(f, edges, order=16, tail=True):
    """Integral of ``f`` from each edge to infinity (or to the last edge).

    With ``tail`` true the last edge is treated as a cut toward infinity.
    Returns ``(values, finite_tail)``.
    """
    s, w = panel_nodes(np.asarray(edges, dtype=float), order)
    with np.errstate(over="ignore", invalid="ignore"):
        vals = np.asarray(f(s.ravel()), dtype=float).reshape(s.shape)
    pieces = np.sum(vals * w, axis=1)
    t = 0.0
    if tail:
        t, _ = _tail(f, float(edges[-1]))
    out = np.concatenate([t + np.cumsum(pieces[::-1])[::-1], [t]])
    return out, bool(np.isfinite(t))


@dataclass
class SupResult:
    value: float
    arg: float
    finite: bool
    grid: dict
    pinned: str = ""


def grid_sup(fn, lo, hi, per_decade=32, extend_lo=False, extend_hi=False,
             rtol=1e-9, max_extend=3, extend_decades=4.0):
    """Supremum of a vectorized ``fn`` over (lo, hi) on a geometric grid.

    The grid argmax is refined by bounded Brent search in the log variable.
    If the argmax sits on an open end that may be extended, the range grows by
    ``extend_decades`` up to ``max_extend`` times; a value that keeps rising
    by more than ``rtol`` through every extension is reported as ``inf``.
    """
    n = max(3, int(np.ceil(per_decade * np.log10(hi / lo))) + 1)
    grid_spec = {"lo": lo, "hi": hi, "per_decade": per_decade}

    def safe(x):
        with np.errstate(all="ignore"):
            v = np.asarray(fn(np.asarray(x, dtype=float)), dtype=float)
        return np.where(np.isnan(v), -INF, v)

    x = np.geomspace(lo, hi, n)
    v = safe(x)
    i = int(np.argmax(v))
    best, arg = float(v[i]), float(x[i])
    pinned = ""
    if np.isinf(best) and best > 0:
        return SupResult(INF, arg, False, grid_spec, "value")

    for side, allowed in (("hi", extend_hi), ("lo", extend_lo)):
        edge = n - 1 if side == "hi" else 0
        if not allowed or i != edge:
            continue
        prev = best
        grew = 0
        cur = x[edge]
        for _ in range(max_extend):
            factor = 10.0**extend_decades
            cur = cur * factor if side == "hi" else cur / factor
            seg = np.geomspace(x[edge], cur, int(per_decade * extend_decades) + 1)
            sv = safe(seg)
            j = int(np.argmax(sv))
            if sv[j] > prev * (1.0 + rtol) + 1e-300:
                grew += 1
                prev, arg = float(sv[j]), float(seg[j])
                if j != len(seg) - 1:
                    break
            else:
                break
        if grew == max_extend:
            return SupResult(INF, arg, False, grid_spec, side)
        if prev > best:
            best = prev
            pinned = side if grew else ""
        grid_spec[f"extended_{side}"] = grew

    if 0 < i < n - 1 and arg == float(x[i]):
        a, b, c = np.log(x[i - 1]), np.log(x[i]), np.log(x[i + 1])
        if v[i] > v[i - 1] and v[i] > v[i + 1]:
            res = optimize.minimize_scalar(
                lambda u: -float(safe(np.array([np.exp(u)]))[0]),
                bounds=(a, c), method="bounded", options={"xatol": 1e-10},
            )
            val = -float(res.fun)
            if val > best and a <= res.x <= c:
                best, arg = val, float(np.exp(res.x))
    return SupResult(best, arg, bool(np.isfinite(best)), grid_spec, pinned)
