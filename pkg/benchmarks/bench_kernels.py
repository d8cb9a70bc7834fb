"""Compiled versus numpy kernels on the hot loops.

    python benchmarks/bench_kernels.py [--n 200000] [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from orlicz_lab.kernels import MAXPOW, POWER, POWLOG, SUMPOW, get_backend

CASES = {"pow": (POWER, 2.5, 0.0), "sumpow": (SUMPOW, 2.0, 3.0), "maxpow": (MAXPOW, 2.0, 3.0),
         "powlog": (POWLOG, 2.0, 0.0)}


def bench(mod, n, repeat):
    t = np.geomspace(1e-6, 1e6, n)
    u = np.linspace(1.0, 0.0, n)
    A = np.linspace(1e-3, 1.0, n - 1)
    out = {}
    for name, (code, p, q) in CASES.items():
        y = mod.phi_eval(code, p, q, 1.0, t)
        calls = {
            "phi_eval": lambda: mod.phi_eval(code, p, q, 1.0, t),
            "phi_inverse": lambda: mod.phi_inverse(code, p, q, 1.0, y[::20]),
            "radial_energy": lambda: mod.radial_energy(code, p, q, 1.0, u, 1.0 / n, A),
        }
        for op, fn in calls.items():
            out[(name, op)] = min(timeit.repeat(fn, number=1, repeat=repeat))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    py = bench(get_backend("python"), args.n, args.repeat)
    try:
        comp = bench(get_backend("compiled"), args.n, args.repeat)
    except ImportError:
        comp = None
        print("compiled backend not built; timing the numpy fallback only")
    print(f"{'family':8s} {'kernel':14s} {'python ms':>10s} {'compiled ms':>12s} {'speedup':>8s}")
    for key, tp in py.items():
        tc = comp[key] if comp else float("nan")
        print(f"{key[0]:8s} {key[1]:14s} {1e3 * tp:10.2f} {1e3 * tc:12.2f} {tp / tc:8.1f}")


if __name__ == "__main__":
    main()
