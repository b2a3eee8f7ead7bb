"""Text documents for fiducials, SIC systems, vectors, matrices and reports.

A document is a JSON object::

    {"format": "qplex", "version": 1, "kind": ..., "dim": d,
     "meta": {...}, "data": {...}}

Keys are written in sorted order and floats with 17 significant digits, so
identical content gives byte-identical files and every float round-trips
exactly.  Complex arrays are nested lists ending in ``[re, im]`` pairs;
matrices are row-major.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from . import __version__
from .sic import QuasiSic, SicFiducial, SicSystem

FORMAT = "qplex"
VERSION = 1

KINDS = (
    "fiducial",
    "sic_system",
    "prob_vector",
    "measurement",
    "stretched_matrix",
    "point_set",
    "report",
    "params",
    "operator",
)


class DocumentError(ValueError):
    """Malformed or inconsistent document; the message names the field."""


@dataclass
class Document:
    kind: str
    dim: int | None
    data: dict[str, Any]
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DocumentError(f"kind: unknown document kind {self.kind!r}")


def encode_complex(a) -> list:
    a = np.asarray(a, dtype=complex)
    return np.stack([a.real, a.imag], axis=-1).tolist()


def decode_complex(x, where: str) -> np.ndarray:
    a = _array(x, where)
    if a.ndim == 0 or a.shape[-1] != 2:
        raise DocumentError(f"{where}: complex entries must be [re, im] pairs, got shape {a.shape}")
    return a[..., 0] + 1j * a[..., 1]


def _array(x, where: str) -> np.ndarray:
    try:
        a = np.array(x, dtype=float)
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"{where}: not a rectangular numeric array ({exc})") from None
    if not np.all(np.isfinite(a)):
        bad = tuple(int(i) for i in np.argwhere(~np.isfinite(a))[0])
        raise DocumentError(f"{where}{list(bad)}: non-finite number")
    return a


def _shape(a: np.ndarray, shape: tuple, where: str):
    if len(a.shape) != len(shape) or any(s is not None and s != t for s, t in zip(shape, a.shape)):
        want = tuple("*" if s is None else s for s in shape)
        raise DocumentError(f"{where}: expected shape {want}, got {a.shape}")


def _float(x: float) -> str:
    if not math.isfinite(x):
        raise DocumentError(f"cannot write non-finite number {x!r}")
    s = format(x, ".17g")
    if "." not in s and "e" not in s and "n" not in s:
        s += ".0"
    return s


def _dump(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_dump(obj[k], indent, level + 1)}" for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (list, tuple, dict)) for v in obj):
            # innermost rows stay on one line
            return "[" + ", ".join(_dump(v, indent, level + 1) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + _dump(v, indent, level + 1) for v in obj) + "\n" + end + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        return _dump(obj.tolist(), indent, level)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(doc: Document) -> str:
    top = {
        "format": FORMAT,
        "version": VERSION,
        "kind": doc.kind,
        "dim": doc.dim,
        "meta": {"tool_version": __version__, **doc.meta},
        "data": doc.data,
    }
    return _dump(top, 2, 0) + "\n"


def save_document(doc: Document, path) -> None:
    validate(doc)
    text = dumps(doc)
    Path(path).write_text(text, encoding="utf-8")


def loads(text: str, source: str = "<string>") -> Document:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(raw, dict):
        raise DocumentError(f"{source}: top level must be an object")
    if raw.get("format") != FORMAT:
        raise DocumentError(f"{source}: format: expected {FORMAT!r}, got {raw.get('format')!r}")
    for key in ("kind", "data"):
        if key not in raw:
            raise DocumentError(f"{source}: missing field {key!r}")
    if not isinstance(raw["data"], dict):
        raise DocumentError(f"{source}: data: must be an object")
    dim = raw.get("dim")
    if dim is not None and (not isinstance(dim, int) or dim < 1):
        raise DocumentError(f"{source}: dim: must be a positive integer or null, got {dim!r}")
    doc = Document(raw["kind"], dim, raw["data"], raw.get("meta") or {})
    try:
        validate(doc)
    except DocumentError as exc:
        raise DocumentError(f"{source}: {exc}") from None
    return doc


def load_document(path) -> Document:
    p = Path(path)
    if not p.is_file():
        raise DocumentError(f"{p}: no such file")
    return loads(p.read_text(encoding="utf-8"), str(p))


def _need(data, key, kind):
    if key not in data:
        raise DocumentError(f"data.{key}: missing for kind {kind!r}")
    return data[key]


def _check_probs(p: np.ndarray, where: str, tol: float = 1e-10):
    flat = p.reshape(-1, p.shape[-1])
    bad = np.argwhere(flat < -tol)
    if bad.size:
        row, i = (int(v) for v in bad[0])
        idx = f"[{i}]" if p.ndim == 1 else f"[{row}][{i}]"
        raise DocumentError(f"{where}{idx}: negative probability {float(flat[row, i])!r}")
    sums = flat.sum(axis=1)
    k = int(np.argmax(np.abs(sums - 1)))
    if abs(sums[k] - 1) > tol:
        idx = "" if p.ndim == 1 else f"[{k}]"
        raise DocumentError(f"{where}{idx}: probabilities sum to {float(sums[k])!r}, expected 1")


def validate(doc: Document) -> None:
    """Kind/payload agreement, shapes against ``dim``, finiteness."""
    k, d, data = doc.kind, doc.dim, doc.data
    if d is None and k in ("fiducial", "sic_system", "operator"):
        raise DocumentError(f"dim: required for kind {k!r}")
    if k == "fiducial":
        v = decode_complex(_need(data, "vector", k), "data.vector")
        _shape(v, (d,), "data.vector")
    elif k == "sic_system":
        p = decode_complex(_need(data, "projectors", k), "data.projectors")
        _shape(p, (d * d, d, d), "data.projectors")
    elif k == "operator":
        m = decode_complex(_need(data, "matrix", k), "data.matrix")
        if m.ndim == 2:
            _shape(m, (d, d), "data.matrix")
        else:
            _shape(m, (None, d, d), "data.matrix")
    elif k == "prob_vector":
        p = _array(_need(data, "p", k), "data.p")
        n = len(p) if d is None else d * d
        _shape(p, (n,), "data.p")
        _check_probs(p, "data.p")
    elif k == "point_set":
        p = _array(_need(data, "points", k), "data.points")
        _shape(p, (None, None if d is None else d * d), "data.points")
        labels = data.get("labels") or []
        if labels and len(labels) != len(p):
            raise DocumentError(f"data.labels: {len(labels)} labels for {len(p)} points")
    elif k == "measurement":
        r = _array(_need(data, "r", k), "data.r")
        _shape(r, (None, None if d is None else d * d), "data.r")
    elif k == "stretched_matrix":
        R = _array(_need(data, "R", k), "data.R")
        n = None if d is None else d * d
        _shape(R, (n, n), "data.R")
        if R.shape[0] != R.shape[1]:
            raise DocumentError(f"data.R: must be square, got {R.shape}")
    elif k == "params":
        for key in ("N", "alpha"):
            _need(data, key, k)
    elif k == "report":
        _need(data, "command", k)
        _need(data, "checks", k)


# payload helpers -------------------------------------------------------------

def fiducial_doc(fid, meta=None) -> Document:
    return Document("fiducial", fid.dim, {"vector": encode_complex(fid.vector)}, dict(meta or {}))


def sic_system_doc(system, meta=None, quasi: bool = False) -> Document:
    data = {"projectors": encode_complex(system.projectors), "quasi": quasi,
            "provenance": getattr(system, "provenance", "quasi-simplex")}
    if getattr(system, "fiducial", None) is not None:
        data["fiducial"] = encode_complex(system.fiducial.vector)
    return Document("sic_system", system.dim, data, dict(meta or {}))


def prob_doc(p, d: int, meta=None) -> Document:
    return Document("prob_vector", d, {"p": np.asarray(p, float).tolist()}, dict(meta or {}))


def points_doc(points, d: int | None, labels=None, meta=None) -> Document:
    data = {"points": np.atleast_2d(np.asarray(points, float)).tolist()}
    if labels:
        data["labels"] = list(labels)
    return Document("point_set", d, data, dict(meta or {}))


def operator_doc(m, d: int, meta=None) -> Document:
    return Document("operator", d, {"matrix": encode_complex(m)}, dict(meta or {}))


def fiducial_from(doc: Document):
    _expect(doc, "fiducial")
    return SicFiducial(doc.dim, decode_complex(doc.data["vector"], "data.vector"))


def system_from(doc: Document):
    _expect(doc, "sic_system")
    d = doc.dim
    ops = decode_complex(doc.data["projectors"], "data.projectors")
    if doc.data.get("quasi"):
        return QuasiSic(d, ops, (ops - np.eye(d) / d) / np.sqrt((d - 1) / d))
    fid = doc.data.get("fiducial")
    fid = SicFiducial(d, decode_complex(fid, "data.fiducial")) if fid is not None else None
    return SicSystem(d, ops, doc.data.get("provenance", "explicit"), fid)


def _expect(doc: Document, *kinds):
    if doc.kind not in kinds:
        raise DocumentError(f"kind: expected {' or '.join(kinds)}, got {doc.kind!r}")
