"""Spec strings for Young functions and weights.

Young functions: ``pow:p=2[,c=1]``, ``sumpow:p=2,q=3``, ``maxpow:p=2,q=3``,
``powlog:p=2``, ``twopowdual:p=2,q=3`` and ``table:<csv of t,phi>``.
Weights (need a dimension): ``hardy:a=2[,c=1]``, ``const:c=1,m=1``,
``indicator:m=1``, ``sample:<csv of value,measure>`` and
``radial:<csv of rho,g>``.  Errors carry the 0-based column of the problem.
"""

import csv

import numpy as np

from . import rearrange, young
from .errors import DomainError, SpecError
from .radial import ball_radius

INF = float("inf")

YOUNG_FAMILIES = {
    "pow": ("p",), "sumpow": ("p", "q"), "maxpow": ("p", "q"), "powlog": ("p",),
    "twopowdual": ("p", "q"),
}
YOUNG_OPTIONAL = {"pow": ("c",)}
WEIGHT_FAMILIES = {"hardy": ("a",), "const": ("c", "m"), "indicator": ("m",)}
WEIGHT_OPTIONAL = {"hardy": ("c",), "indicator": ("c",)}
FILE_FAMILIES = ("table", "sample", "radial")


def _split(text):
    """``(head, {key: (value, column)}, body_column)``."""
    if ":" not in text:
        raise SpecError("expected '<family>:<parameters>'", text, len(text))
    head, body = text.split(":", 1)
    start = len(head) + 1
    head = head.strip().lower()
    if head in FILE_FAMILIES:
        if not body.strip():
            raise SpecError("missing file path", text, start)
        return head, body.strip(), start
    params = {}
    pos = start
    for part in body.split(",") if body else []:
        if "=" not in part:
            raise SpecError(f"expected key=value, got {part!r}", text, pos)
        k, v = part.split("=", 1)
        key = k.strip()
        vpos = pos + len(k) + 1
        try:
            val = float(v)
        except ValueError:
            raise SpecError(f"{key} must be a number, got {v.strip()!r}", text, vpos) from None
        if key in params:
            raise SpecError(f"duplicate parameter {key}", text, pos)
        params[key] = (val, vpos)
        pos += len(part) + 1
    return head, params, start


def _check_keys(text, head, params, required, optional, start):
    for key, (_, pos) in params.items():
        if key not in required + optional:
            raise SpecError(f"unknown parameter {key!r} for {head}", text, pos - len(key) - 1)
    for key in required:
        if key not in params:
            raise SpecError(f"{head} needs parameter {key}", text, start)


def _read_csv(text, path, start, names):
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = [r for r in csv.reader(fh) if r and not r[0].lstrip().startswith("#")]
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}", text, start) from None
    if rows and not _is_number(rows[0][0]):
        rows = rows[1:]
    data = []
    for i, r in enumerate(rows):
        if len(r) < 2 or not (_is_number(r[0]) and _is_number(r[1])):
            raise SpecError(f"malformed CSV row {i + 1} in {path}: expected {names}", text, start)
        data.append((float(r[0]), float(r[1])))
    if not data:
        raise SpecError(f"no data rows in {path}", text, start)
    a = np.array(data)
    return a[:, 0], a[:, 1]


def _is_number(s):
    try:
        float(s)
    except ValueError:
        return False
    return True


def parse_young(text):
    head, params, start = _split(text)
    if head == "table":
        t, phi = _read_csv(text, params, start, "t,phi")
        try:
            return young.from_phi_samples(t, phi, source=params)
        except DomainError as exc:
            raise SpecError(str(exc), text, start) from None
    if head not in YOUNG_FAMILIES:
        raise SpecError(f"unknown Young family {head!r}", text, 0)
    _check_keys(text, head, params, YOUNG_FAMILIES[head], YOUNG_OPTIONAL.get(head, ()), start)
    vals = {k: v for k, (v, _) in params.items()}
    for key in ("p", "q"):
        if key in params and not vals[key] > 1:
            raise SpecError(f"{key} must exceed 1", text, params[key][1])
    if "c" in params and not vals["c"] > 0:
        raise SpecError("c must be positive", text, params["c"][1])
    if head == "pow":
        return young.power(vals["p"], vals.get("c", 1.0))
    if head == "sumpow":
        return young.sumpow(vals["p"], vals["q"])
    if head == "maxpow":
        return young.maxpow(vals["p"], vals["q"])
    if head == "powlog":
        return young.powlog(vals["p"])
    F = young.two_power_density(vals["p"], vals["q"]).complement()
    F.label = f"twopowdual:p={young._fmt(vals['p'])},q={young._fmt(vals['q'])}"
    return F


def parse_weight(text, N=None, omega=INF):
    head, params, start = _split(text)
    if N is None:
        raise SpecError("weight specs need a dimension (--dim)", text, 0)
    if head == "sample":
        v, m = _read_csv(text, params, start, "value,measure")
        try:
            return rearrange.sampled(v, m, N, None if not np.isfinite(omega) else omega)
        except DomainError as exc:
            raise SpecError(str(exc), text, start) from None
    if head == "radial":
        rho, g = _read_csv(text, params, start, "rho,g")
        try:
            return rearrange.radial_table(rho, g, N)
        except DomainError as exc:
            raise SpecError(str(exc), text, start) from None
    if head not in WEIGHT_FAMILIES:
        raise SpecError(f"unknown weight family {head!r}", text, 0)
    _check_keys(text, head, params, WEIGHT_FAMILIES[head], WEIGHT_OPTIONAL.get(head, ()), start)
    vals = {k: v for k, (v, _) in params.items()}
    for key in ("a", "m"):
        if key in params and not vals[key] > 0:
            raise SpecError(f"{key} must be positive", text, params[key][1])
    if "c" in params and vals["c"] < 0:
        raise SpecError("c must be nonnegative", text, params["c"][1])
    try:
        if head == "hardy":
            return rearrange.hardy(vals["a"], N, ball_radius(N, omega), vals.get("c", 1.0))
        if head == "const":
            return rearrange.constant(vals["c"], vals["m"], N)
        W = rearrange.indicator(vals["m"], N, omega)
        return W.scale(vals["c"]) if "c" in vals else W
    except DomainError as exc:
        raise SpecError(str(exc), text, start) from None


def parse_spec(text, N=None, omega=INF):
    """Young function or weight, whichever family the head names."""
    head = text.split(":", 1)[0].strip().lower()
    if head in YOUNG_FAMILIES or head == "table":
        return parse_young(text)
    if head in WEIGHT_FAMILIES or head in ("sample", "radial"):
        return parse_weight(text, N, omega)
    raise SpecError(f"unknown family {head!r}", text, 0)


def parse_omega(text):
    t = str(text).strip().lower()
    if t in ("inf", "infinity", "+inf"):
        return INF
    try:
        v = float(t)
    except ValueError:
        raise SpecError("omega must be a positive number or 'inf'", str(text), 0) from None
    if not v > 0:
        raise SpecError("omega must be positive", str(text), 0)
    return v


def parse_range(text, integer_count=True):
    """``lo:hi:n`` into a linspace, or a single value into a one-element array."""
    parts = str(text).split(":")
    try:
        if len(parts) == 1:
            return np.array([float(parts[0])])
        if len(parts) == 3:
            lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
            if n < 1:
                raise ValueError
            return np.linspace(lo, hi, n)
    except ValueError:
        pass
    raise SpecError("expected a number or lo:hi:n", str(text), 0)
