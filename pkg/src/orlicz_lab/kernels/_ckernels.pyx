# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of ``_pykernels``; identical signatures and semantics."""

import numpy as np
cimport numpy as cnp
from libc.math cimport pow, log, exp, fabs, log1p, M_E

cnp.import_array()

cdef double LOG_LO = -700.0
cdef double LOG_HI = 700.0


cdef inline double _phi(int code, double p, double q, double c, double t) noexcept nogil:
    cdef double a, b
    if code == 0:
        return c * pow(t, p)
    elif code == 1:
        return pow(t, p) + pow(t, q)
    elif code == 2:
        a = pow(t, p)
        b = pow(t, q)
        return a if a > b else b
    else:
        return pow(t, p) * log(M_E + t)


cdef inline double _dphi(int code, double p, double q, double c, double t) noexcept nogil:
    cdef double lo, hi
    if code == 0:
        return c * p * pow(t, p - 1.0)
    elif code == 1:
        return p * pow(t, p - 1.0) + q * pow(t, q - 1.0)
    elif code == 2:
        lo = p if p < q else q
        hi = q if p < q else p
        if t < 1.0:
            return lo * pow(t, lo - 1.0)
        return hi * pow(t, hi - 1.0)
    else:
        return p * pow(t, p - 1.0) * log(M_E + t) + pow(t, p) / (M_E + t)


cdef inline void _fvals(int code, double p, double q, double c, double s,
                        int deriv, double *f, double *fp) noexcept nogil:
    # value and t-derivative of Phi (deriv=0) or phi (deriv=1) at t = exp(s),
    # sharing the powers so each call costs a handful of transcendentals
    cdef double t = exp(s), a2, a1, a0, b2, b1, b0, L, e
    if code == 1:
        a2 = exp((p - 2.0) * s)
        a1 = a2 * t
        a0 = a1 * t
        b2 = exp((q - 2.0) * s)
        b1 = b2 * t
        b0 = b1 * t
        if deriv:
            f[0] = p * a1 + q * b1
            fp[0] = p * (p - 1.0) * a2 + q * (q - 1.0) * b2
        else:
            f[0] = a0 + b0
            fp[0] = p * a1 + q * b1
    else:
        a2 = exp((p - 2.0) * s)
        a1 = a2 * t
        a0 = a1 * t
        e = M_E + t
        L = log(e)
        if deriv:
            f[0] = p * a1 * L + a0 / e
            fp[0] = p * (p - 1.0) * a2 * L + 2.0 * p * a1 / e - a0 / (e * e)
        else:
            f[0] = a0 * L
            fp[0] = p * a1 * L + a0 / e


cdef inline double _bisect(int code, double p, double q, double c, double y,
                           int deriv, double tol, int maxiter, int *ok,
                           double s0) noexcept nogil:
    # Newton on log f(e^s) = log y, safeguarded by a log-space bisection
    # bracket; codes 1 and 3 are smooth and strictly increasing.
    cdef double lo = LOG_LO, hi = LOG_HI, s = s0, snew, f = 0.0, fp = 0.0, g, slope
    cdef double ly
    cdef int it = 0, done = 0
    if y <= 0.0:
        return 0.0
    ly = log(y)
    while it < maxiter:
        it += 1
        _fvals(code, p, q, c, s, deriv, &f, &fp)
        if not (f > 0.0):
            lo = s
            s = 0.5 * (lo + hi)
            continue
        if f > 1.0e308:
            hi = s
            s = 0.5 * (lo + hi)
            continue
        g = log(f) - ly
        if g <= 0.0:
            lo = s
        else:
            hi = s
        slope = exp(s) * fp / f
        snew = s - g / slope if slope > 0.0 else 0.5 * (lo + hi)
        # converged steps are accepted before the bracket test, since a root hit
        # exactly makes s itself a bracket end
        if fabs(snew - s) < 0.5 * tol or hi - lo < tol:
            s = snew
            done = 1
            break
        if not (snew >= lo and snew <= hi):
            snew = 0.5 * (lo + hi)
        s = snew
    if not done or s >= LOG_HI - 1.0:
        ok[0] = 0
    return exp(s)


def phi_eval(int code, double p, double q, double c, t):
    cdef cnp.ndarray[double, ndim=1] x = np.ascontiguousarray(t, dtype=float).ravel()
    cdef cnp.ndarray[double, ndim=1] out = np.empty_like(x)
    cdef Py_ssize_t i, n = x.shape[0]
    with nogil:
        for i in range(n):
            out[i] = _phi(code, p, q, c, x[i])
    return out.reshape(np.shape(t))


def dphi_eval(int code, double p, double q, double c, t):
    cdef cnp.ndarray[double, ndim=1] x = np.ascontiguousarray(t, dtype=float).ravel()
    cdef cnp.ndarray[double, ndim=1] out = np.empty_like(x)
    cdef Py_ssize_t i, n = x.shape[0]
    with nogil:
        for i in range(n):
            out[i] = _dphi(code, p, q, c, x[i])
    return out.reshape(np.shape(t))


def _inverse(int code, double p, double q, double c, y, int deriv,
             double rtol, int maxiter):
    cdef cnp.ndarray[double, ndim=1] x = np.ascontiguousarray(y, dtype=float).ravel()
    cdef cnp.ndarray[double, ndim=1] out = np.empty_like(x)
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double tol = log1p(rtol)
    cdef double lo, hi, v, s0 = 0.0
    cdef int ok = 1
    with nogil:
        for i in range(n):
            v = x[i]
            if v <= 0.0:
                out[i] = 0.0
            elif code == 0:
                if deriv:
                    out[i] = pow(v / (c * p), 1.0 / (p - 1.0))
                else:
                    out[i] = pow(v / c, 1.0 / p)
            elif code == 2:
                lo = p if p < q else q
                hi = q if p < q else p
                if deriv:
                    if v < lo:
                        out[i] = pow(v / lo, 1.0 / (lo - 1.0))
                    elif v < hi:
                        out[i] = 1.0
                    else:
                        out[i] = pow(v / hi, 1.0 / (hi - 1.0))
                else:
                    out[i] = pow(v, 1.0 / lo) if v < 1.0 else pow(v, 1.0 / hi)
            else:
                # warm start from the previous element: callers mostly pass sorted grids
                out[i] = _bisect(code, p, q, c, v, deriv, tol, maxiter, &ok, s0)
                s0 = log(out[i])
    return out.reshape(np.shape(y)), bool(ok)


def phi_inverse(int code, double p, double q, double c, y,
                double rtol=1e-10, int maxiter=200):
    return _inverse(code, p, q, c, y, 0, rtol, maxiter)


def dphi_inverse(int code, double p, double q, double c, y,
                 double rtol=1e-10, int maxiter=200):
    return _inverse(code, p, q, c, y, 1, rtol, maxiter)


cdef inline void _phi_dphi(int code, double p, double q, double c, double t,
                           double *f, double *df) noexcept nogil:
    # Phi(t) and phi(t) sharing the powers: phi = (exponent) * power / t
    cdef double a, b, e, L
    if code == 0:
        a = c * pow(t, p)
        f[0] = a
        df[0] = p * a / t
    elif code == 1:
        a = pow(t, p)
        b = pow(t, q)
        f[0] = a + b
        df[0] = (p * a + q * b) / t
    elif code == 2:
        a = pow(t, p if t < 1.0 else q) if p < q else pow(t, q if t < 1.0 else p)
        f[0] = a
        if p < q:
            df[0] = (p if t < 1.0 else q) * a / t
        else:
            df[0] = (q if t < 1.0 else p) * a / t
    else:
        a = pow(t, p)
        e = M_E + t
        L = log(e)
        f[0] = a * L
        df[0] = p * a * L / t + a / e


def radial_energy(int code, double p, double q, double c, u, double h, weights):
    cdef cnp.ndarray[double, ndim=1] uu = np.ascontiguousarray(u, dtype=float)
    cdef cnp.ndarray[double, ndim=1] w = np.ascontiguousarray(weights, dtype=float)
    cdef cnp.ndarray[double, ndim=1] grad = np.zeros_like(uu)
    cdef Py_ssize_t i, m = w.shape[0]
    cdef double d, a, f, df, flux, energy = 0.0
    with nogil:
        for i in range(m):
            d = (uu[i + 1] - uu[i]) / h
            a = fabs(d)
            if a == 0.0:
                continue
            _phi_dphi(code, p, q, c, a, &f, &df)
            energy += w[i] * f
            flux = w[i] * df / h
            if d < 0.0:
                flux = -flux
            grad[i] -= flux
            grad[i + 1] += flux
    return energy, grad
