"""Young functions, Orlicz-Lorentz weight norms and weighted modular Sobolev
inequalities on radial domains."""

from . import admit, conjugate, eigen, norms, quadrature, radial, rearrange, regressions, verify, young
from .admit import admissibility_report, capacity_ball, capacity_criterion, muckenhoupt_sup_same
from .conjugate import conjugate_bundle, sobolev_conjugate
from .eigen import minimize_lambda1
from .errors import (DegenerateInputError, DomainError, HypothesisError, NonConvergenceError,
                     OrliczLabError, SpecError)
from .kernels import BACKEND_NAME
from .norms import norm
from .radial import RadialProfile, cone, bump
from .rearrange import WeightProfile, constant, hardy, indicator
from .regressions import run_examples
from .specs import parse_spec, parse_weight, parse_young
from .young import maxpow, power, powlog, sumpow

__version__ = "0.1.0"

__all__ = [
    "BACKEND_NAME", "DegenerateInputError", "DomainError", "HypothesisError",
    "NonConvergenceError", "OrliczLabError", "RadialProfile", "SpecError", "WeightProfile",
    "admissibility_report", "admit", "bump", "capacity_ball", "capacity_criterion", "cone",
    "conjugate", "conjugate_bundle", "constant", "eigen", "hardy", "indicator", "maxpow",
    "minimize_lambda1", "muckenhoupt_sup_same", "norm", "norms", "parse_spec", "parse_weight",
    "parse_young", "power", "powlog", "quadrature", "radial", "rearrange", "regressions",
    "run_examples", "sobolev_conjugate", "sumpow", "verify", "young",
]
