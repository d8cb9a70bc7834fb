"""Command-line front end: ``orlicz-lab <subcommand> ...``.

Exit codes: 0 success, 1 failed regression rows, 2 hypothesis-failed
verdicts, 3 numeric nonconvergence, 4 parse or input error.
"""

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from . import admit, conjugate, eigen, norms, regressions, verify
from .errors import (DegenerateInputError, DomainError, HypothesisError, NonConvergenceError,
                     SpecError)
from .parallel import pmap
from .radial import ball_measure
from .specs import parse_omega, parse_range, parse_weight, parse_young

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

EXIT_OK, EXIT_REGRESSION, EXIT_HYPOTHESIS, EXIT_NONCONVERGENCE, EXIT_PARSE = 0, 1, 2, 3, 4
INF = float("inf")

# every grid and tolerance default, overridable by --config and then by flags
DEFAULTS = {
    "omega": "inf",
    "emit": "json",
    "conjugate": {"lo": 1e-3, "hi": 1e3, "per_decade": 40, "points": 25},
    "norm": {"kind": "phi_infty"},
    "check": {"R": 1.0, "a_grid": "0.05:0.95:19", "muckenhoupt": False, "capacity": False},
    "verify": {"family": "cones", "route": None},
    "eigen": {"R": 1.0, "r": "1", "nodes": 2000, "tol": 1e-6, "maxiter": 500, "restarts": 0,
              "seed": 0, "samples": 50},
    "examples": {},
}
POSITIVE = ("lo", "hi", "per_decade", "points", "R", "nodes", "tol", "maxiter", "samples")


@dataclass
class RunConfig:
    subcommand: str
    phi: str = None
    psi: str = None
    weight: str = None
    dim: int = None
    omega: str = "inf"
    emit: str = "json"
    output: str = None
    options: dict = field(default_factory=dict)


class InputError(Exception):
    """Bad command line or config value (exit code 4)."""


def _load_toml(path):
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc.strerror}") from None
    except tomllib.TOMLDecodeError as exc:
        raise InputError(f"config {path}: {exc}") from None


def build_config(args):
    """Defaults, then the config file (top level and ``[subcommand]``), then flags."""
    sub = args.command
    file_cfg = _load_toml(args.config) if args.config else {}
    top = {k: v for k, v in file_cfg.items() if not isinstance(v, dict)}
    section = file_cfg.get(sub, {})
    merged = {"omega": DEFAULTS["omega"], "emit": DEFAULTS["emit"], **DEFAULTS[sub]}
    for src in (top, section):
        merged.update({k.replace("-", "_"): v for k, v in src.items()})
    for k, v in vars(args).items():
        if v is not None and k not in ("command", "config", "threads"):
            merged[k] = v
    base = {k: merged.pop(k, None) for k in ("phi", "psi", "weight", "dim", "output")}
    cfg = RunConfig(sub, omega=str(merged.pop("omega")), emit=merged.pop("emit"), **base)
    cfg.options = merged
    for key in POSITIVE:
        if key in cfg.options and not float(cfg.options[key]) > 0:
            raise InputError(f"{key} must be positive, got {cfg.options[key]!r}")
    if cfg.dim is not None:
        cfg.dim = int(cfg.dim)
        if cfg.dim < 1:
            raise InputError("--dim must be a positive integer")
    return cfg


def _require(cfg, *names):
    missing = [n for n in names if getattr(cfg, n) is None]
    if missing:
        raise InputError(f"{cfg.subcommand} needs " + ", ".join(f"--{n}" for n in missing))


def _canonical(cfg, F=None, G=None, W=None):
    """The effective config with specs in canonical form."""
    d = asdict(cfg)
    if F is not None:
        d["phi"] = F.spec()
    if G is not None:
        d["psi"] = G.spec()
    if W is not None:
        d["weight"] = W.spec()
    return d


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        if np.isnan(v):
            return None
        return ("inf" if v > 0 else "-inf") if np.isinf(v) else v
    return obj


def dump_json(obj):
    return json.dumps(_clean(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def dump_csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(header)
    for r in rows:
        w.writerow(["inf" if isinstance(v, float) and np.isinf(v) else
                    (repr(float(v)) if isinstance(v, (float, np.floating)) else v) for v in r])
    return buf.getvalue()


def _emit(cfg, text):
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _young_pair(cfg):
    F = parse_young(cfg.phi)
    G = parse_young(cfg.psi) if cfg.psi else F
    return F, G


# ------------------------------------------------------------ subcommands
def cmd_conjugate(cfg):
    _require(cfg, "phi", "dim")
    F = parse_young(cfg.phi)
    o = cfg.options
    b = conjugate.conjugate_bundle(F, cfg.dim, float(o["lo"]), float(o["hi"]), int(o["per_decade"]))
    t = np.geomspace(float(o["lo"]), float(o["hi"]), int(o["points"]))
    cols = (t, b.phi_N.eval(t), b.b_phi.eval(t), b.b_phi_complement.eval(t))
    if cfg.emit == "csv":
        _emit(cfg, dump_csv(["t", "phi_N", "b_phi", "b_phi_complement"], zip(*cols)))
    else:
        _emit(cfg, dump_json({
            "config": _canonical(cfg, F), "slopes": b.slopes(), "b_convex": b.b_convex,
            "grid": b.grid,
            "table": {"t": cols[0], "phi_N": cols[1], "b_phi": cols[2], "b_phi_complement": cols[3]},
        }))
    return EXIT_OK


def cmd_norm(cfg):
    _require(cfg, "phi", "weight", "dim")
    F, G = _young_pair(cfg)
    W = parse_weight(cfg.weight, cfg.dim, parse_omega(cfg.omega))
    kind = cfg.options["kind"]
    if kind not in norms.KINDS:
        raise InputError(f"unknown norm kind {kind!r}; expected one of {', '.join(norms.KINDS)}")
    rep = norms.norm(kind, W, F, G, cfg.dim)
    _emit(cfg, dump_json({"config": _canonical(cfg, F, G, W), "norm": rep.as_dict()}))
    failed = any(isinstance(h, dict) and h.get("status") == "fails" for h in rep.hypotheses.values())
    return EXIT_HYPOTHESIS if failed else EXIT_OK


def cmd_check(cfg):
    _require(cfg, "phi", "weight", "dim")
    F, G = _young_pair(cfg)
    om = parse_omega(cfg.omega)
    W = parse_weight(cfg.weight, cfg.dim, om)
    o = cfg.options
    cap = (float(o["R"]), parse_range(o["a_grid"])) if o.get("capacity") else None
    rep = admit.admissibility_report(W, F, G, cfg.dim, om, muckenhoupt=bool(o.get("muckenhoupt")),
                                     capacity=cap)
    out = rep.as_dict()
    out["config"] = _canonical(cfg, F, G, W)
    out["admissible"] = rep.admissible
    _emit(cfg, dump_json(out))
    failed = any(r.verdict == "hypothesis-failed" for r in rep.routes)
    return EXIT_HYPOTHESIS if failed and not rep.admissible else EXIT_OK


def cmd_verify(cfg):
    _require(cfg, "phi", "weight", "dim")
    F, G = _young_pair(cfg)
    om = parse_omega(cfg.omega)
    W = parse_weight(cfg.weight, cfg.dim, om)
    family = cfg.options["family"]
    if family not in verify.FAMILIES:
        raise InputError(f"unknown family {family!r}; expected one of {', '.join(verify.FAMILIES)}")
    route = None
    if cfg.options.get("route"):
        rep = admit.admissibility_report(W, F, G, cfg.dim, om, routes=(cfg.options["route"],))
        if not rep.routes:
            raise InputError(f"unknown route {cfg.options['route']!r}")
        route = rep.routes[0]
    res = verify.run_family(W, F, G, family, route=route)
    if cfg.emit == "csv":
        rows = [(t["test_id"], t["param"], t["lhs"], t["rhs"], t["ratio"]) for t in res.tests]
        _emit(cfg, dump_csv(["test_id", "param", "lhs", "rhs", "ratio"], rows))
    else:
        out = res.as_dict()
        out["config"] = _canonical(cfg, F, G, W)
        _emit(cfg, dump_json(out))
    return EXIT_OK


def cmd_eigen(cfg):
    _require(cfg, "phi", "weight", "dim")
    F, G = _young_pair(cfg)
    o = cfg.options
    R = float(o["R"])
    cfg.omega = repr(ball_measure(cfg.dim, R))
    W = parse_weight(cfg.weight, cfg.dim, float(cfg.omega))
    levels = parse_range(o["r"])
    if np.any(~(levels > 0)):
        raise InputError("eigen levels r must be positive")

    def one(r):
        res = eigen.minimize_lambda1(F, G, W, cfg.dim, R, float(r), nodes=int(o["nodes"]),
                                     tol=float(o["tol"]), maxiter=int(o["maxiter"]),
                                     restarts=int(o["restarts"]), seed=int(o["seed"]))
        return res.as_dict(int(o["samples"]))

    # independent levels run in parallel; results keep the order of the sweep
    results = pmap(one, levels)
    _emit(cfg, dump_json({"config": _canonical(cfg, F, G, W), "results": results}))
    return EXIT_OK


def cmd_examples(cfg):
    rows, ok, seconds = regressions.run_examples()
    if cfg.emit == "csv":
        table = [(r["id"], r["quantity"], r["measured"], r["target"], r["tol"],
                  "pass" if r["pass"] else "FAIL") for r in rows]
        _emit(cfg, dump_csv(["id", "quantity", "measured", "target", "tol", "status"], table))
    else:
        _emit(cfg, dump_json({"config": _canonical(cfg), "rows": rows, "all_passed": ok,
                              "seconds": seconds}))
    return EXIT_OK if ok else EXIT_REGRESSION


COMMANDS = {"conjugate": cmd_conjugate, "norm": cmd_norm, "check": cmd_check,
            "verify": cmd_verify, "eigen": cmd_eigen, "examples": cmd_examples}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def build_parser():
    p = _Parser(prog="orlicz-lab", description=__doc__.splitlines()[0])
    p.add_argument("--threads", type=int, help="cap on worker threads (sets ORLICZ_LAB_THREADS)")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, psi=True, weight=True, omega=True, emits=("json",)):
        sp.add_argument("--config", help="TOML file with defaults ([<subcommand>] section)")
        sp.add_argument("--phi", help="Young function spec, e.g. pow:p=2")
        if psi:
            sp.add_argument("--psi", help="second Young function (defaults to --phi)")
        if weight:
            sp.add_argument("--weight", help="weight spec, e.g. hardy:a=2")
        sp.add_argument("--dim", type=int, help="dimension N")
        if omega:
            sp.add_argument("--omega", help="domain measure |Omega| or 'inf'")
        sp.add_argument("--emit", choices=emits)
        sp.add_argument("--output", "-o", help="write to this file instead of stdout")

    sp = sub.add_parser("conjugate", help="tabulate Phi_N, B_Phi and its complement")
    common(sp, psi=False, weight=False, omega=False, emits=("csv", "json"))
    sp.add_argument("--lo", type=float)
    sp.add_argument("--hi", type=float)
    sp.add_argument("--per-decade", type=int)
    sp.add_argument("--points", type=int)

    sp = sub.add_parser("norm", help="one weight norm")
    common(sp)
    sp.add_argument("--kind", choices=norms.KINDS)

    sp = sub.add_parser("check", help="admissibility report over all routes")
    common(sp)
    sp.add_argument("--capacity", action="store_true", default=None,
                    help="add the capacity criterion on B_R")
    sp.add_argument("--R", type=float)
    sp.add_argument("--a-grid", help="inner radii lo:hi:n")
    sp.add_argument("--muckenhoupt", action="store_true", default=None,
                    help="add the Muckenhoupt sup of the Hardy configuration")

    sp = sub.add_parser("verify", help="empirical modular inequality on a test family")
    common(sp, emits=("csv", "json"))
    sp.add_argument("--family", choices=verify.FAMILIES)
    sp.add_argument("--route", choices=admit.ROUTES, help="compare with the constant of this route")

    sp = sub.add_parser("eigen", help="radial lambda_1(r) on the ball B_R")
    common(sp, omega=False)
    sp.add_argument("--R", type=float)
    sp.add_argument("--r", help="level r or lo:hi:n")
    sp.add_argument("--nodes", type=int)
    sp.add_argument("--tol", type=float)
    sp.add_argument("--maxiter", type=int)
    sp.add_argument("--restarts", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--samples", type=int, help="profile samples in the JSON output")

    sp = sub.add_parser("examples", help="closed-form regression table")
    sp.add_argument("--config")
    sp.add_argument("--emit", choices=("csv", "json"))
    sp.add_argument("--output", "-o")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is not None:
        if args.threads < 1:
            parser.error("--threads must be at least 1")
        os.environ["ORLICZ_LAB_THREADS"] = str(args.threads)
    try:
        cfg = build_config(args)
        return COMMANDS[cfg.subcommand](cfg)
    except HypothesisError as exc:
        print(f"orlicz-lab: hypothesis failed: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (SpecError, InputError, DomainError, DegenerateInputError) as exc:
        print(f"orlicz-lab: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NonConvergenceError as exc:
        print(f"orlicz-lab: no convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
