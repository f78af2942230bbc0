"""JSON formats for measures, transforms, cost matrices and plans.

Subset keys are either a bitmask integer string ("5") or element labels
joined with "+" ("x1+x3"); bitmask keys are canonical on output. The empty
set is "0".
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .cost import CostMatrix
from .errors import ParseError
from .setfun import Capacity, SetVector, Universe, maxplus, mobius, popcount, validate_capacity
from .transport import METHODS, TransportPlan


def number(v: float):
    """12 significant digits; -0.0 printed as 0."""
    v = float(f"{float(v):.12g}")
    return 0.0 if v == 0 else v


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _read_json(source):
    if isinstance(source, dict):
        return source
    try:
        text = Path(source).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {source}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: invalid JSON ({exc})") from exc


def parse_subset_key(key: str, universe: Universe) -> int:
    key = str(key).strip()
    if key.isdigit():
        mask = int(key)
        if mask >= universe.size:
            raise ParseError(f"subset key {key} out of range for n={universe.n}")
        return mask
    mask = 0
    for label in key.split("+"):
        label = label.strip()
        if label not in universe.labels:
            raise ParseError(f"unknown element {label!r} in subset key {key!r}")
        mask |= 1 << universe.labels.index(label)
    return mask


def format_subset_key(mask: int, universe: Universe, labels: bool = False) -> str:
    if not labels or mask == 0:
        return str(mask)
    return "+".join(universe.labels[i] for i in range(universe.n) if mask >> i & 1)


def _universe(doc) -> Universe:
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool):
        raise ParseError('"n" must be an integer')
    labels = doc.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != n):
        raise ParseError('"labels" must be a list of n strings')
    try:
        return Universe(n, tuple(labels) if labels is not None else None)
    except ValueError as exc:
        if type(exc) is ValueError:
            raise ParseError(str(exc)) from exc
        raise


def measure_values(doc) -> tuple:
    """Universe and dense values of a measure document, unvalidated."""
    if not isinstance(doc, dict):
        raise ParseError("measure file must hold a JSON object")
    u = _universe(doc)
    raw = doc.get("values")
    if not isinstance(raw, dict):
        raise ParseError('"values" must be an object keyed by subset')
    vals = np.full(u.size, np.nan)
    vals[0] = 0.0
    seen = set()
    for key, v in raw.items():
        mask = parse_subset_key(key, u)
        if mask in seen:
            raise ParseError(f"subset {u.describe(mask)} given twice")
        seen.add(mask)
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ParseError(f"value for {key!r} is not a number")
        vals[mask] = float(v)
    missing = [u.describe(s) for s in range(1, u.size) if s not in seen]
    if missing:
        raise ParseError(f"missing values for {len(missing)} subsets, e.g. {missing[0]}")
    return u, vals


def load_measure(source) -> Capacity:
    u, vals = measure_values(_read_json(source))
    return validate_capacity(vals, u)


def measure_to_dict(mu: Capacity, labels: bool = False) -> dict:
    u = mu.universe
    return {
        "n": u.n,
        "labels": list(u.labels),
        "values": {format_subset_key(s, u, labels): number(mu.values[s]) for s in range(1, u.size)},
    }


def setvector_to_dict(sv: SetVector, labels: bool = False) -> dict:
    u = sv.universe
    return {
        "kind": sv.kind,
        "n": u.n,
        "labels": list(u.labels),
        "values": {format_subset_key(s, u, labels): number(sv.values[s]) for s in range(u.size)},
    }


def transform(mu: Capacity, kind: str) -> SetVector:
    if kind == "mobius":
        return mobius(mu)
    if kind == "maxplus":
        return maxplus(mu)
    raise ValueError(f"unknown transform {kind!r}")


def load_cost(source, x: Universe, y: Universe) -> CostMatrix:
    """Cost file: {"matrix": [[...]]} (2**n rows of 2**m) or
    {"default": c0, "entries": [{"from": key, "to": key, "cost": c}]}."""
    doc = _read_json(source)
    if not isinstance(doc, dict):
        raise ParseError("cost file must hold a JSON object")
    if "matrix" in doc:
        try:
            mat = np.array(doc["matrix"], dtype=float)
        except (TypeError, ValueError) as exc:
            raise ParseError(f"cost matrix is not numeric: {exc}") from exc
        if mat.shape != (x.size, y.size):
            raise ParseError(f"cost matrix must be {x.size}x{y.size}, got {mat.shape}")
    elif "entries" in doc:
        if "default" not in doc:
            raise ParseError('sparse cost files need a "default" value')
        mat = np.full((x.size, y.size), float(doc["default"]))
        for e in doc["entries"]:
            try:
                mat[parse_subset_key(e["from"], x), parse_subset_key(e["to"], y)] = float(e["cost"])
            except (KeyError, TypeError) as exc:
                raise ParseError(f"bad cost entry {e!r}") from exc
    else:
        raise ParseError('cost file needs "matrix" or "entries"')
    try:
        return CostMatrix(x, y, mat)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def plan_to_dict(plan: TransportPlan, labels: bool = False) -> dict:
    x, y = plan.x, plan.y
    a = plan.assg
    doc = {
        "method": plan.method,
        "status": plan.status,
        "objective": number(plan.objective) if np.isfinite(plan.objective) else None,
        "n": x.n,
        "m": y.n,
    }
    entries = []
    if plan.method == "classical":
        for i in range(x.n):
            for j in range(y.n):
                if a[i, j] != 0:
                    entries.append({"from": format_subset_key(1 << i, x, labels),
                                    "to": format_subset_key(1 << j, y, labels),
                                    "mass": number(a[i, j])})
        doc["assg"] = entries
        return doc
    for s in range(1, x.size):
        for t in range(1, y.size):
            if a[s, t] != 0:
                entries.append({"from": format_subset_key(s, x, labels),
                                "to": format_subset_key(t, y, labels),
                                "mass": number(a[s, t])})
    doc["assg"] = entries
    if plan.method == "maxplus":
        doc["lack_mu"] = {format_subset_key(s, x, labels): number(a[s, 0])
                          for s in range(1, x.size) if a[s, 0] != 0}
        doc["lack_nu"] = {format_subset_key(t, y, labels): number(a[0, t])
                          for t in range(1, y.size) if a[0, t] != 0}
    return doc


def plan_from_dict(doc, x: Universe, y: Universe) -> TransportPlan:
    doc = _read_json(doc)
    method = doc.get("method")
    if method not in METHODS:
        raise ParseError(f"unknown plan method {method!r}")
    shape = (x.n, y.n) if method == "classical" else (x.size, y.size)
    a = np.zeros(shape)

    def cell(key, u):
        mask = parse_subset_key(key, u)
        if method != "classical":
            return mask
        if mask == 0 or mask & (mask - 1):
            raise ParseError("classical plans are keyed by singletons")
        return mask.bit_length() - 1

    try:
        for e in doc.get("assg", []):
            a[cell(e["from"], x), cell(e["to"], y)] += float(e["mass"])
        for key, v in doc.get("lack_mu", {}).items():
            a[parse_subset_key(key, x), 0] += float(v)
        for key, v in doc.get("lack_nu", {}).items():
            a[0, parse_subset_key(key, y)] += float(v)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed plan entry: {exc}") from exc
    obj = doc.get("objective")
    return TransportPlan(x, y, method, a, float("nan") if obj is None else float(obj),
                         doc.get("status", "optimal"))


def format_table(plan: TransportPlan, mu: Capacity, nu: Capacity) -> str:
    """Plan as a grid: one row per subset of Y (largest first), one column
    per subset of X, with the transform values alongside."""
    x, y = plan.x, plan.y
    tm = maxplus(mu) if plan.method == "maxplus" else mobius(mu)
    tn = maxplus(nu) if plan.method == "maxplus" else mobius(nu)
    cols = sorted(range(x.size), key=lambda s: (popcount(s), s))
    rows = sorted(range(y.size), key=lambda t: (popcount(t), t), reverse=True)
    name_x = [x.describe(s) for s in cols]
    width = max(8, *(len(s) for s in name_x))
    head_y = max(8, *(len(y.describe(t)) for t in rows))

    def fmt(v):
        return f"{number(v):.6g}".rjust(width)

    lines = []
    for t in rows:
        cells = " ".join(fmt(plan.assg[s, t]) for s in cols)
        lines.append(f"{fmt(nu.values[t])} {fmt(tn.values[t])} {y.describe(t).rjust(head_y)} | {cells}")
    lines.append("-" * len(lines[-1]))
    pad = " " * (2 * width + head_y + 2)
    lines.append(f"{pad} | " + " ".join(s.rjust(width) for s in name_x))
    lines.append(f"{'tau'.rjust(2 * width + head_y + 2)} | " + " ".join(fmt(tm.values[s]) for s in cols))
    lines.append(f"{'mu'.rjust(2 * width + head_y + 2)} | " + " ".join(fmt(mu.values[s]) for s in cols))
    return "\n".join(lines) + "\n"
