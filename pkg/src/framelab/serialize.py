"""JSON file formats: frame files and certificate/analysis reports.

Frames are stored as schema_version "1" JSON with [re, im] entry pairs;
doubles survive a parse/serialize round trip bit-exactly because Python's
json module emits shortest round-trip decimal strings.
"""

from __future__ import annotations

import hashlib
import json
import math
from typing import Optional

import numpy as np

from . import __version__
from .certificates import CertificateReport
from .frames import FrameSystem
from .geometry import IndexGeometry
from .hp import INF

SCHEMA_VERSION = "1"


def _geometry_to_json(geom: IndexGeometry):
    if geom.kind == "linear":
        return "linear"
    return {"circular": geom.period}


def _geometry_from_json(obj) -> IndexGeometry:
    if obj == "linear":
        return IndexGeometry.linear()
    if isinstance(obj, dict) and "circular" in obj:
        return IndexGeometry.circular(int(obj["circular"]))
    raise ValueError(f"unrecognized geometry {obj!r}")


def frame_to_json(f: FrameSystem) -> dict:
    is_real = bool(np.all(f.vectors.imag == 0.0))
    doc = {
        "schema_version": SCHEMA_VERSION,
        "dim": f.dim,
        "field": "real" if is_real else "complex",
        "vectors": [
            [[float(z.real), float(z.imag)] for z in row] for row in f.vectors
        ],
        "index_positions": [int(k) for k in f.index_positions],
        "geometry": _geometry_to_json(f.geometry),
        "label": f.label,
    }
    if f.provenance is not None:
        doc["provenance"] = f.provenance
    return doc


def frame_from_json(doc: dict) -> FrameSystem:
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {doc.get('schema_version')!r}")
    dim = int(doc["dim"])
    vectors = np.array(
        [[complex(re, im) for re, im in row] for row in doc["vectors"]],
        dtype=complex,
    )
    if vectors.ndim != 2 or vectors.shape[1] != dim:
        raise ValueError("vector lengths do not match the declared dimension")
    return FrameSystem(
        vectors=vectors,
        index_positions=np.array(doc["index_positions"], dtype=int),
        label=doc.get("label", ""),
        geometry=_geometry_from_json(doc.get("geometry", "linear")),
        provenance=doc.get("provenance"),
    )


def write_frame(f: FrameSystem, path) -> None:
    with open(path, "w") as fh:
        json.dump(frame_to_json(f), fh, indent=1)
        fh.write("\n")


def read_frame(path) -> FrameSystem:
    with open(path) as fh:
        return frame_from_json(json.load(fh))


def file_digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        h.update(fh.read())
    return h.hexdigest()


def _p_key(p: float) -> str:
    return "inf" if p == INF else f"{p:g}"


def _bounds_to_json(b) -> Optional[dict]:
    if b is None:
        return None
    return {"A": b.lower, "B": b.upper}


def _number(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return x


def certificate_to_json(report: CertificateReport) -> dict:
    doc = {
        "certificate_id": report.certificate_id,
        "hypothesis_values": {k: _number(v) for k, v in
                              report.hypothesis_values.items()},
        "hypothesis_holds": report.hypothesis_holds,
        "predicted_bounds": _bounds_to_json(report.predicted_bounds),
        "actual_bounds": _bounds_to_json(report.actual_bounds),
        "bracketing_ok": report.bracketing_ok,
        "notes": report.notes,
    }
    if report.predicted_per_p is not None:
        doc["predicted_per_p"] = {
            _p_key(p): {"A_p": lo, "B_p": hi}
            for p, (lo, hi) in report.predicted_per_p.items()
        }
    if report.actual_per_p is not None:
        doc["actual_per_p"] = {
            _p_key(p): {
                "A_p": b.lower,
                "B_p": b.upper,
                "lower_method": b.lower_method,
                "upper_method": b.upper_method,
            }
            for p, b in report.actual_per_p.items()
        }
    return doc


def report_document(payload: dict, inputs: dict) -> dict:
    """Wrap a result payload with tool version and input digests."""
    return {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "inputs": {name: file_digest(path) for name, path in inputs.items()},
        **payload,
    }
