"""Empirical check of the weighted modular inequality on radial test families.

Each test reports ``Psi^{-1}(int g Psi(|u|))`` against
``Phi^{-1}(int Phi(|u'|))``; the largest ratio is the empirical constant.
"""

from dataclasses import dataclass, field

import numpy as np

from .parallel import pmap
from .radial import RadialProfile, ball_radius, bump, cone, radial_integral
from .rearrange import _with_domain_break, gradient_modular

INF = float("inf")

FAMILIES = ("cones", "bumps", "dilate", "amplitude")
RADIAL_NOTE = ("radial family: radially decreasing tests are the extremal direction "
               "for rearrangement-invariant weights by symmetrization; heuristic, not a proof")


@dataclass
class HarnessResult:
    tests: list
    empirical_constant: float
    family: str
    slope: float = float("nan")
    bound_comparison: dict = None
    meta: dict = field(default_factory=dict)

    def as_dict(self):
        def num(v):
            v = float(v)
            return None if np.isnan(v) else ("inf" if np.isinf(v) else v)

        return {
            "family": self.family,
            "empirical_constant": num(self.empirical_constant),
            "slope": num(self.slope),
            "bound_comparison": self.bound_comparison,
            "meta": self.meta,
            "tests": [{k: (num(v) if isinstance(v, float) else v) for k, v in t.items()}
                      for t in self.tests],
        }


def modular_lhs(W, G, U):
    """``Psi^{-1}(N w_N int g Psi(|u|) rho^(N-1))``; ``inf`` for a divergent head."""
    if not np.any(U.u != 0) or W.is_zero:
        return 0.0

    def f(r):
        return W.radial(r) * G.eval(np.abs(U.value(r)))

    total = radial_integral(f, U.N, _with_domain_break(U.rho, W))
    return float(G.inverse(total)) if np.isfinite(total) else INF


def modular_rhs(F, U):
    """``Phi^{-1}(N w_N int Phi(|u'|) rho^(N-1))`` with piecewise-constant slopes."""
    if not np.any(U.u != 0):
        return 0.0
    return float(F.inverse(gradient_modular(F, U)))


def _radius_scale(W):
    # finite domains hold every test inside the support ball
    return ball_radius(W.N, W.omega_measure) if np.isfinite(W.omega_measure) else None


def family_members(W, family, cones_a=(0.0, 0.2, 0.4, 0.6, 0.8), b_values=None,
                   lambdas=None, amplitudes=None, base_nodes=400):
    """``[(test_id, param, profile)]`` for a family name."""
    N = W.N
    Rd = _radius_scale(W)
    span = np.logspace(-2, 2, 5) if Rd is None else Rd * np.logspace(-4, 0, 5)
    b_values = span if b_values is None else np.asarray(b_values, dtype=float)
    if family == "cones":
        out = []
        for b in b_values:
            for fa in cones_a:
                out.append((f"cone:a={fa * b:.6g},b={b:.6g}", float(b),
                            cone(fa * b, b, N, nodes=2)))
        return out
    if family == "bumps":
        return [(f"bump:R={b:.6g},w={wd:g}", float(b), bump(N, b, base_nodes, wd))
                for b in b_values for wd in (0.5, 1.0, 2.0)]
    if family == "dilate":
        if lambdas is None:
            lambdas = np.logspace(-2, 2, 9) if Rd is None else np.logspace(-4, 0, 9)
        base = bump(N, 1.0 if Rd is None else Rd, base_nodes)
        return [(f"dilate:lambda={lam:.6g}", float(lam), base.dilate(lam)) for lam in lambdas]
    if family == "amplitude":
        amplitudes = np.logspace(-2, 2, 9) if amplitudes is None else amplitudes
        base = bump(N, 1.0 if Rd is None else Rd, base_nodes)
        return [(f"amplitude:t={t:.6g}", float(t), base.scale(t)) for t in amplitudes]
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def run_family(W, F, G, family="cones", route=None, **kwargs):
    """Ratios ``lhs / rhs`` over a test family, with the empirical constant.

    ``route`` may be a route object from ``admit`` (with ``id`` and
    ``constant``); the reported comparison is ``empirical / expression``,
    which bounds the free factor of the bound from below.
    """
    members = family_members(W, family, **kwargs)

    def one(item):
        tid, param, U = item
        lhs = modular_lhs(W, G, U)
        rhs = modular_rhs(F, U)
        ratio = lhs / rhs if rhs > 0 else (0.0 if lhs == 0 else INF)
        return {"test_id": tid, "param": param, "lhs": lhs, "rhs": rhs, "ratio": ratio}

    tests = pmap(one, members)
    ratios = np.array([t["ratio"] for t in tests])
    emp = float(np.max(ratios)) if len(ratios) else 0.0
    slope = float("nan")
    if family in ("dilate", "amplitude"):
        x = np.log([t["param"] for t in tests])
        good = ratios > 0
        if good.sum() >= 2 and np.all(np.isfinite(ratios[good])):
            slope = float(np.polyfit(x[good], np.log(ratios[good]), 1)[0])
    result = HarnessResult(tests, emp, family, slope, None, {"note": RADIAL_NOTE, "N": W.N,
                                                             "weight": W.spec()})
    if route is not None:
        expr = float(route.constant)
        result.bound_comparison = {
            "route": route.id, "expression": expr,
            "implied_factor": emp / expr if expr > 0 and np.isfinite(expr) else None,
            "satisfied": bool(np.isfinite(emp) and np.isfinite(expr)),
        }
    return result


__all__ = ["RadialProfile", "HarnessResult", "modular_lhs", "modular_rhs", "run_family",
           "family_members", "FAMILIES"]
