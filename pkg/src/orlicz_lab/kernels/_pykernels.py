"""Pure numpy implementations of the hot kernels.

Every function here has a twin with the same signature in ``_ckernels.pyx``.
Family codes: 0 power ``c*t**p``, 1 sum-power ``t**p + t**q``,
2 max-power ``max(t**p, t**q)``, 3 power-log ``t**p * log(e + t)``.
"""

import numpy as np

POWER, SUMPOW, MAXPOW, POWLOG = 0, 1, 2, 3

# log-space bracket used by every bisection; exp(+-700) stays finite in float64
LOG_LO = -700.0
LOG_HI = 700.0


def phi_eval(code, p, q, c, t):
    t = np.asarray(t, dtype=float)
    with np.errstate(over="ignore", under="ignore"):
        if code == POWER:
            return c * t**p
        if code == SUMPOW:
            return t**p + t**q
        if code == MAXPOW:
            return np.maximum(t**p, t**q)
        if code == POWLOG:
            return t**p * np.log(np.e + t)
    raise ValueError(f"unknown family code {code}")


def dphi_eval(code, p, q, c, t):
    t = np.asarray(t, dtype=float)
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        if code == POWER:
            return c * p * t ** (p - 1.0)
        if code == SUMPOW:
            return p * t ** (p - 1.0) + q * t ** (q - 1.0)
        if code == MAXPOW:
            lo, hi = min(p, q), max(p, q)
            # right-continuous at the crossover t = 1
            return np.where(t < 1.0, lo * t ** (lo - 1.0), hi * t ** (hi - 1.0))
        if code == POWLOG:
            return p * t ** (p - 1.0) * np.log(np.e + t) + t**p / (np.e + t)
    raise ValueError(f"unknown family code {code}")


def bisect_increasing(f, y, rtol=1e-10, maxiter=200):
    """Vectorized ``sup{t >= 0 : f(t) <= y}`` for a nondecreasing ``f``.

    Bisection runs on ``log t`` so the relative width shrinks uniformly over
    the whole float range. For continuous strictly increasing ``f`` this is the
    ordinary inverse; at jumps it returns the right-continuous inverse.
    Returns ``(t, converged)``.
    """
    y = np.atleast_1d(np.asarray(y, dtype=float))
    lo = np.full(y.shape, LOG_LO)
    hi = np.full(y.shape, LOG_HI)
    tol = np.log1p(rtol)
    active = y > 0
    it = 0
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        while it < maxiter:
            idx = np.nonzero(active & (hi - lo > tol))[0]
            if idx.size == 0:
                break
            mid = 0.5 * (lo[idx] + hi[idx])
            below = f(np.exp(mid)) <= y[idx]
            lo[idx] = np.where(below, mid, lo[idx])
            hi[idx] = np.where(below, hi[idx], mid)
            it += 1
    t = np.where(active, np.exp(0.5 * (lo + hi)), 0.0)
    converged = bool(np.all(~active | (hi - lo <= tol)))
    # a bracket pinned at the top of the range means f never reached y
    pinned = active & (lo >= LOG_HI - 1.0)
    return t, converged and not bool(np.any(pinned))


def phi_inverse(code, p, q, c, y, rtol=1e-10, maxiter=200):
    y = np.asarray(y, dtype=float)
    if code == POWER:
        return (np.maximum(y, 0.0) / c) ** (1.0 / p), True
    if code == MAXPOW:
        lo, hi = min(p, q), max(p, q)
        y = np.maximum(y, 0.0)
        return np.where(y < 1.0, y ** (1.0 / lo), y ** (1.0 / hi)), True
    t, ok = bisect_increasing(lambda s: phi_eval(code, p, q, c, s), y, rtol, maxiter)
    return t.reshape(y.shape), ok


def dphi_inverse(code, p, q, c, y, rtol=1e-10, maxiter=200):
    y = np.asarray(y, dtype=float)
    if code == POWER:
        return (np.maximum(y, 0.0) / (c * p)) ** (1.0 / (p - 1.0)), True
    if code == MAXPOW:
        lo, hi = min(p, q), max(p, q)
        y = np.maximum(y, 0.0)
        with np.errstate(divide="ignore"):
            out = np.where(
                y < lo,
                (y / lo) ** (1.0 / (lo - 1.0)),
                np.where(y < hi, 1.0, (y / hi) ** (1.0 / (hi - 1.0))),
            )
        return out, True
    t, ok = bisect_increasing(lambda s: dphi_eval(code, p, q, c, s), y, rtol, maxiter)
    return t.reshape(y.shape), ok


def radial_energy(code, p, q, c, u, h, weights):
    """Discrete ``sum_i w_i Phi(|u_{i+1}-u_i|/h)`` and its gradient in ``u``."""
    u = np.asarray(u, dtype=float)
    d = np.diff(u) / h
    a = np.abs(d)
    energy = float(np.sum(weights * phi_eval(code, p, q, c, a)))
    flux = weights * dphi_eval(code, p, q, c, a) * np.sign(d) / h
    grad = np.zeros_like(u)
    grad[:-1] -= flux
    grad[1:] += flux
    return energy, grad
