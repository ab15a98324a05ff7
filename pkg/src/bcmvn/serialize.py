"""JSON and CSV forms of datasets, weights and training traces.

Every float is written with 17 significant digits, which round-trips IEEE
doubles exactly, and key order is fixed, so equal objects give equal bytes.
Complex scalars are ``[re, im]`` pairs; bicomplex scalars use the
``{"x1", "x2", "x3", "x4"}`` object of :func:`bcmvn.algebra.bicomplex_to_json`.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from .algebra import Hyperbolic, bicomplex_from_json, bicomplex_to_json
from .algebra import hyperbolic_from_json, hyperbolic_to_json
from .datasets import BicomplexDataset, ComplexDataset, GenSpec, RealHidden, RealSeparableProblem
from .errors import ParseError
from .linalg import BicomplexVector
from .perceptron import BicomplexWeights, ComplexWeights, TrainingTrace, UpdateRecord

VERSION = 1
INLINE_WIDTH = 100


def fmt_float(x) -> str:
    x = float(x)
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def _scalar(value) -> str:
    if value is None or isinstance(value, (bool, str)):
        return json.dumps(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return fmt_float(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _inline(value) -> str:
    if isinstance(value, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_inline(v)}" for k, v in value.items()) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_inline(v) for v in value) + "]"
    return _scalar(value)


def dumps(value, indent=0) -> str:
    """Deterministic JSON text; short containers stay on one line."""
    flat = _inline(value)
    if len(flat) + indent <= INLINE_WIDTH or not isinstance(value, (dict, list, tuple)) or not value:
        return flat
    pad = " " * (indent + 2)
    if isinstance(value, dict):
        body = ",\n".join(f"{pad}{json.dumps(k)}: {dumps(v, indent + 2)}" for k, v in value.items())
        return "{\n" + body + "\n" + " " * indent + "}"
    body = ",\n".join(pad + dumps(v, indent + 2) for v in value)
    return "[\n" + body + "\n" + " " * indent + "]"


def write_json(path, value):
    Path(path).write_text(dumps(value) + "\n", encoding="utf-8")


def read_json(path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from exc


def _complex_to_json(z):
    z = complex(z)
    return [z.real, z.imag]


def _complex_from_json(obj):
    if not (isinstance(obj, list) and len(obj) == 2):
        raise ParseError(f"expected [re, im], got {obj!r}")
    return complex(float(obj[0]), float(obj[1]))


def _bcvec_to_json(V: BicomplexVector):
    return [bicomplex_to_json(z) for z in V]


def _bcvec_from_json(items):
    return BicomplexVector.from_scalars(bicomplex_from_json(o) for o in items)


def _header(kind, mode):
    return {"format": f"bcmvn.{kind}", "version": VERSION, "mode": mode}


def _check_header(obj, kind):
    if not isinstance(obj, dict) or obj.get("format") != f"bcmvn.{kind}":
        raise ParseError(f"not a bcmvn {kind} file")
    if obj.get("version") != VERSION:
        raise ParseError(f"unsupported {kind} version {obj.get('version')!r}")
    mode = obj.get("mode")
    if mode not in ("real", "complex", "bicomplex"):
        raise ParseError(f"unknown mode {mode!r}")
    return mode


# datasets


def dataset_to_json(ds):
    out = _header("dataset", ds.mode)
    out["k"] = None if ds.mode == "real" else ds.k
    out["spec"] = None if ds.spec is None else ds.spec.to_json()
    if ds.mode == "real":
        out["hidden"] = None if ds.hidden is None else {"a": list(ds.hidden.a), "delta": ds.hidden.delta}
        out["samples"] = [{"x": list(x), "label": int(y)} for x, y in zip(ds.X, ds.labels)]
    elif ds.mode == "complex":
        out["hidden"] = None if ds.hidden is None else [_complex_to_json(w) for w in ds.hidden]
        out["samples"] = [
            {"x": [_complex_to_json(v) for v in x], "label": int(q)} for x, q in zip(ds.X, ds.labels)
        ]
    else:
        out["hidden"] = None if ds.hidden is None else _bcvec_to_json(ds.hidden)
        out["samples"] = [
            {"x": _bcvec_to_json(ds.vector(i)), "label": [int(q) for q in ds.labels[i]]} for i in range(len(ds))
        ]
    return out


def dataset_from_json(obj):
    mode = _check_header(obj, "dataset")
    try:
        spec = None if obj.get("spec") is None else GenSpec.from_json(obj["spec"])
        samples = obj["samples"]
        if not samples:
            raise ParseError("dataset has no samples")
        hidden = obj.get("hidden")
        if mode == "real":
            X = np.array([[float(v) for v in s["x"]] for s in samples])
            labels = np.array([int(s["label"]) for s in samples])
            h = None if hidden is None else RealHidden(np.array(hidden["a"], float), float(hidden["delta"]))
            return RealSeparableProblem(X, labels, h, spec)
        k = int(obj["k"])
        if mode == "complex":
            X = np.array([[_complex_from_json(v) for v in s["x"]] for s in samples], complex)
            labels = np.array([int(s["label"]) for s in samples])
            h = None if hidden is None else np.array([_complex_from_json(v) for v in hidden], complex)
            return ComplexDataset(X, labels, k, h, spec)
        vecs = [_bcvec_from_json(s["x"]) for s in samples]
        Z1 = np.array([v.z1 for v in vecs])
        Z2 = np.array([v.z2 for v in vecs])
        labels = np.array([[int(q) for q in s["label"]] for s in samples])
        if labels.shape != (len(samples), 2):
            raise ParseError("bicomplex labels must be [q1, q2] pairs")
        h = None if hidden is None else _bcvec_from_json(hidden)
        return BicomplexDataset(Z1, Z2, labels, k, h, spec)
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed dataset: {exc!r}") from exc


def save_dataset(path, ds):
    write_json(path, dataset_to_json(ds))


def load_dataset(path):
    return dataset_from_json(read_json(path))


# weights


def weights_to_json(weights, mode, k=None):
    out = _header("weights", mode)
    out["k"] = k
    if mode == "real":
        out["bias"] = None
        out["w"] = list(np.asarray(weights, float))
    elif mode == "complex":
        out["bias"] = _complex_to_json(weights.bias)
        out["w"] = [_complex_to_json(v) for v in weights.w]
    else:
        out["bias"] = bicomplex_to_json(weights.bias)
        out["w"] = _bcvec_to_json(weights.w)
    return out


def weights_from_json(obj):
    """Returns ``(mode, k, weights)``."""
    mode = _check_header(obj, "weights")
    try:
        k = obj.get("k")
        if mode == "real":
            return mode, None, np.array([float(v) for v in obj["w"]])
        if mode == "complex":
            w = ComplexWeights(_complex_from_json(obj["bias"]), np.array([_complex_from_json(v) for v in obj["w"]]))
        else:
            w = BicomplexWeights(bicomplex_from_json(obj["bias"]), _bcvec_from_json(obj["w"]))
        return mode, int(k), w
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed weights: {exc!r}") from exc


def save_weights(path, weights, mode, k=None):
    write_json(path, weights_to_json(weights, mode, k))


def load_weights(path):
    return weights_from_json(read_json(path))


# traces


def _norm_json(norm):
    return hyperbolic_to_json(norm) if isinstance(norm, Hyperbolic) else norm


def trace_to_json(trace: TrainingTrace):
    out = _header("trace", trace.mode)
    out["config"] = trace.config
    out["converged"] = trace.converged
    out["steps_to_converge"] = trace.steps_to_converge
    out["epochs"] = [list(e) if isinstance(e, tuple) else e for e in trace.epochs]
    out["updates"] = [
        {
            "step": u.step,
            "sample": list(u.sample) if isinstance(u.sample, tuple) else u.sample,
            "q": list(u.q) if isinstance(u.q, tuple) else u.q,
            "s": list(u.s) if isinstance(u.s, tuple) else u.s,
            "norm": _norm_json(u.norm),
        }
        for u in trace.updates
    ]
    return out


def trace_from_json(obj) -> TrainingTrace:
    mode = _check_header(obj, "trace")
    bc = mode == "bicomplex"
    try:
        updates = [
            UpdateRecord(
                int(u["step"]),
                tuple(u["sample"]) if bc else u["sample"],
                tuple(u["q"]) if bc else u["q"],
                tuple(u["s"]) if bc else u["s"],
                hyperbolic_from_json(u["norm"]) if bc else float(u["norm"]),
            )
            for u in obj["updates"]
        ]
        epochs = [tuple(e) if bc else int(e) for e in obj["epochs"]]
        return TrainingTrace(mode, dict(obj.get("config") or {}), updates, epochs, bool(obj["converged"]))
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed trace: {exc!r}") from exc


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, (float, np.floating)):
        return fmt_float(v)
    return str(v)


def trace_to_csv(trace: TrainingTrace) -> str:
    """One row per update. Bicomplex rows split pairs into slot columns and
    give the hyperbolic norm both as ``x + k y`` and as slot norms ``s, t``."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if trace.mode == "bicomplex":
        writer.writerow(["step", "sample1", "sample2", "q1", "q2", "s1", "s2", "norm_x", "norm_y", "norm_s", "norm_t"])
        for u in trace.updates:
            n = u.norm
            row = [u.step, *u.sample, *u.q, *u.s, n.x, n.y, n.s, n.t]
            writer.writerow([_cell(v) for v in row])
    else:
        writer.writerow(["step", "sample", "q", "s", "norm"])
        for u in trace.updates:
            writer.writerow([_cell(v) for v in (u.step, u.sample, u.q, u.s, u.norm)])
    return buf.getvalue()


def save_trace(path, trace):
    write_json(path, trace_to_json(trace))


def save_trace_csv(path, trace):
    Path(path).write_text(trace_to_csv(trace), encoding="utf-8")


def load_trace(path) -> TrainingTrace:
    return trace_from_json(read_json(path))

