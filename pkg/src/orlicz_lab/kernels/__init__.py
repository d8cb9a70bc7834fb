"""Hot numerical kernels with a compiled core and a numpy fallback.

The Cython extension ``_ckernels`` is used when it was built; otherwise the
pure numpy module ``_pykernels`` is imported. Set ``ORLICZ_LAB_BACKEND`` to
``python`` to force the fallback or ``compiled`` to fail loudly when the
extension is missing.  Both modules expose the same functions;
``get_backend`` returns either one whole for tests and benchmarks.
"""

import os
from types import ModuleType

from . import _pykernels

POWER, SUMPOW, MAXPOW, POWLOG = (
    _pykernels.POWER,
    _pykernels.SUMPOW,
    _pykernels.MAXPOW,
    _pykernels.POWLOG,
)


def _load(choice: str) -> ModuleType:
    if choice == "python":
        return _pykernels
    try:
        from . import _ckernels
    except ImportError:
        if choice == "compiled":
            raise
        return _pykernels
    return _ckernels


backend = _load(os.environ.get("ORLICZ_LAB_BACKEND", "auto").lower())
BACKEND_NAME = "compiled" if backend is not _pykernels else "python"

# Elementwise evaluation and closed-form inverses stay on numpy, whose SIMD
# libm beats a scalar C loop; the compiled core takes the Newton inverses and
# the fused energy loop (see benchmarks/bench_kernels.py).
ITERATIVE = (SUMPOW, POWLOG)
phi_eval = _pykernels.phi_eval
dphi_eval = _pykernels.dphi_eval
radial_energy = backend.radial_energy


def phi_inverse(code, p, q, c, y, rtol=1e-10, maxiter=200):
    mod = backend if code in ITERATIVE else _pykernels
    return mod.phi_inverse(code, p, q, c, y, rtol, maxiter)


def dphi_inverse(code, p, q, c, y, rtol=1e-10, maxiter=200):
    mod = backend if code in ITERATIVE else _pykernels
    return mod.dphi_inverse(code, p, q, c, y, rtol, maxiter)
bisect_increasing = _pykernels.bisect_increasing


def get_backend(name: str) -> ModuleType:
    """Return a specific backend module (``"python"`` or ``"compiled"``)."""
    return _load(name) if name == "python" else _load("compiled")


__all__ = [
    "BACKEND_NAME",
    "POWER",
    "SUMPOW",
    "MAXPOW",
    "POWLOG",
    "bisect_increasing",
    "dphi_eval",
    "dphi_inverse",
    "get_backend",
    "phi_eval",
    "phi_inverse",
    "radial_energy",
]
