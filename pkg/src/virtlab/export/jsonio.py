"""Deterministic JSON writers.

All floats are printed with at most 9 significant digits and fixed key
order, so the emitted bytes depend only on the data. These writers back
both the CLI artifacts and the HTTP service bodies.
"""

from __future__ import annotations

import math

import numpy as np

from ..geometry import Polyline, SurfaceMesh, Vec3
from ..patterns import PatternGrid, PlaneCut, pattern_surface_with_values
from ..scene import Scene


def fmt_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValueError("JSON output requires finite numbers")
    if abs(x) < 1e-15:
        return "0"
    s = "%.9g" % x
    return "0" if s == "-0" else s


def dump_json(obj) -> str:
    """Serialize dicts/lists/numbers/strings/bools compactly and stably."""
    parts: list[str] = []
    _dump(obj, parts)
    return "".join(parts)


def _dump(obj, parts: list[str]):
    if obj is None:
        parts.append("null")
    elif obj is True:
        parts.append("true")
    elif obj is False:
        parts.append("false")
    elif isinstance(obj, str):
        parts.append(_json_string(obj))
    elif isinstance(obj, (int, np.integer)):
        parts.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        parts.append(fmt_float(float(obj)))
    elif isinstance(obj, np.ndarray) and obj.ndim in (1, 2) and obj.dtype.kind in "if":
        parts.append(_dump_numeric_array(obj))
    elif isinstance(obj, dict):
        parts.append("{")
        for i, (k, v) in enumerate(obj.items()):
            if i:
                parts.append(",")
            parts.append(_json_string(str(k)))
            parts.append(":")
            _dump(v, parts)
        parts.append("}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        parts.append("[")
        for i, v in enumerate(obj):
            if i:
                parts.append(",")
            _dump(v, parts)
        parts.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def _dump_numeric_array(arr: np.ndarray) -> str:
    """Bulk formatter for numeric arrays, byte-identical to the scalar path."""
    if not np.all(np.isfinite(arr)):
        raise ValueError("JSON output requires finite numbers")
    if arr.dtype.kind == "i":
        flat = [str(v) for v in arr.reshape(-1).tolist()]
    else:
        snapped = np.where(np.abs(arr) < 1e-15, 0.0, arr)
        flat = ["%.9g" % v for v in snapped.reshape(-1).tolist()]
    if arr.ndim == 1:
        return "[" + ",".join(flat) + "]"
    if not len(arr):
        return "[]"
    width = arr.shape[1]
    rows = [",".join(flat[i : i + width]) for i in range(0, len(flat), width)]
    return "[[" + "],[".join(rows) + "]]"


_ESCAPES = {'"': '\\"', "\\": "\\\\", "\n": "\\n", "\r": "\\r", "\t": "\\t"}


def _json_string(s: str) -> str:
    out = ['"']
    for ch in s:
        if ch in _ESCAPES:
            out.append(_ESCAPES[ch])
        elif ord(ch) < 0x20:
            out.append("\\u%04x" % ord(ch))
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


def write_mesh_json(obj, values=None, mapping: str = "field") -> str:
    """Schema {"vertices": [[x,y,z],...], "faces": [[i,j,k],...], "values": [...]?}.

    Accepts a SurfaceMesh (values optional) or a PatternGrid, which is
    turned into its radial surface with per-vertex normalized values.
    """
    if isinstance(obj, PatternGrid):
        mesh, values = pattern_surface_with_values(obj, mapping)
    elif isinstance(obj, SurfaceMesh):
        mesh = obj
    else:
        raise TypeError("expected SurfaceMesh or PatternGrid")
    doc: dict = {
        "vertices": mesh.vertices,
        "faces": mesh.faces,
    }
    if values is not None:
        doc["values"] = np.asarray(values, dtype=float)
    return dump_json(doc)


def _vec(v: Vec3) -> list[float]:
    return [v.x, v.y, v.z]


def _geometry_payload(geometry) -> dict:
    if isinstance(geometry, SurfaceMesh):
        return {
            "type": "mesh",
            "vertices": geometry.vertices,
            "faces": geometry.faces,
        }
    if isinstance(geometry, Polyline):
        return {
            "type": "polyline",
            "points": geometry.points,
            "closed": geometry.closed,
        }
    return {"type": "text", "text": geometry}


def _track_payload(track) -> dict:
    if track.kind == "rotation":
        keyframes = [[f, [_vec(axis), angle]] for f, (axis, angle) in track.keyframes]
    elif track.kind == "position":
        keyframes = [[f, _vec(v)] for f, v in track.keyframes]
    else:
        keyframes = [[f, np.asarray(v)] for f, v in track.keyframes]
    return {
        "target": track.target_id,
        "kind": track.kind,
        "period": track.period,
        "keyframes": keyframes,
    }


def write_scene_json(scene: Scene) -> str:
    """Full scene graph as JSON (nodes, tracks, viewpoints, background)."""
    scene.validate()
    doc = {
        "background": list(scene.background.as_tuple()),
        "viewpoints": [
            {
                "position": _vec(vp.position),
                "look_at": _vec(vp.look_at),
                "description": vp.description,
            }
            for vp in scene.viewpoints
        ],
        "nodes": [
            {
                "id": n.id,
                "kind": n.kind,
                "color": list(n.color.as_tuple()),
                "opacity": n.opacity,
                "transform": {
                    "translation": _vec(n.transform.translation),
                    "rotation_axis": _vec(n.transform.rotation_axis),
                    "rotation_angle": n.transform.rotation_angle,
                    "scale": n.transform.scale,
                },
                "geometry": _geometry_payload(n.geometry),
            }
            for n in scene.nodes
        ],
        "tracks": [_track_payload(t) for t in scene.tracks],
    }
    return dump_json(doc)
