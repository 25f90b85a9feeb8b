"""VRML97 (.wrl) emission.

Output is a pure function of the scene: numbers are printed as the
shortest decimal with at most 6 significant digits ("-0" normalized to
"0"), fields are emitted in a fixed order, and DEF names equal node ids,
so repeated exports are byte-identical.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from ..geometry import Polyline, SurfaceMesh, Vec3
from ..scene import AnimationTrack, Scene, SceneNode, Viewpoint, bake

HEADER = "#VRML V2.0 utf8"


def fmt(x: float) -> str:
    if abs(x) < 1e-12:
        return "0"
    s = "%.6g" % x
    return "0" if s == "-0" else s


def _fmt_vec(values) -> str:
    return " ".join(fmt(float(v)) for v in values)


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def _look_at_orientation(vp: Viewpoint) -> tuple[Vec3, float]:
    """Axis-angle turning the default -z gaze (+y up) onto the viewpoint."""
    f = (vp.look_at - vp.position).normalized()
    up_hint = Vec3(0.0, 0.0, 1.0)
    r = f.cross(up_hint)
    if r.norm() < 1e-9:
        r = f.cross(Vec3(0.0, 1.0, 0.0))
    r = r.normalized()
    u = r.cross(f)
    # columns map camera axes (right, up, -gaze) into world space
    m = np.array([r.as_array(), u.as_array(), (-f).as_array()]).T
    return _matrix_to_axis_angle(m)


def _matrix_to_axis_angle(m: np.ndarray) -> tuple[Vec3, float]:
    c = max(-1.0, min(1.0, (float(np.trace(m)) - 1.0) / 2.0))
    angle = math.acos(c)
    if angle < 1e-9:
        return Vec3(0.0, 0.0, 1.0), 0.0
    if math.pi - angle < 1e-6:
        # antisymmetric part vanishes; take the dominant diagonal axis
        d = np.sqrt(np.maximum(0.0, (np.diag(m) + 1.0) / 2.0))
        k = int(np.argmax(d))
        axis = np.zeros(3)
        axis[k] = d[k]
        axis[(k + 1) % 3] = m[k, (k + 1) % 3] / (2.0 * d[k])
        axis[(k + 2) % 3] = m[k, (k + 2) % 3] / (2.0 * d[k])
        return Vec3.from_array(axis).normalized(), math.pi
    axis = np.array([m[2, 1] - m[1, 2], m[0, 2] - m[2, 0], m[1, 0] - m[0, 1]])
    return Vec3.from_array(axis / (2.0 * math.sin(angle))), angle


def _emit_geometry(node: SceneNode, out: list[str]):
    g = node.geometry
    if isinstance(g, SurfaceMesh):
        out.append("      geometry IndexedFaceSet {")
        out.append("        solid FALSE")
        points = " ".join(
            f"{fmt(v[0])} {fmt(v[1])} {fmt(v[2])}," for v in g.vertices
        ).rstrip(",")
        out.append(f"        coord DEF {node.id}_pts Coordinate {{ point [ {points} ] }}")
        idx = " ".join(f"{f[0]} {f[1]} {f[2]} -1" for f in g.faces)
        out.append(f"        coordIndex [ {idx} ]")
        out.append("      }")
    elif isinstance(g, Polyline):
        out.append("      geometry IndexedLineSet {")
        points = " ".join(
            f"{fmt(p[0])} {fmt(p[1])} {fmt(p[2])}," for p in g.points
        ).rstrip(",")
        out.append(f"        coord DEF {node.id}_pts Coordinate {{ point [ {points} ] }}")
        order = list(range(len(g.points))) + ([0] if g.closed else [])
        out.append(f"        coordIndex [ {' '.join(str(i) for i in order)} -1 ]")
        out.append("      }")
    else:
        out.append(
            f'      geometry Text {{ string [ "{_escape(g)}" ] '
            "fontStyle FontStyle { size 0.15 } }"
        )


def _emit_node(node: SceneNode, out: list[str]):
    t = node.transform
    out.append(f"DEF {node.id} Transform {{")
    out.append(f"  translation {fmt(t.translation.x)} {fmt(t.translation.y)} {fmt(t.translation.z)}")
    out.append(
        f"  rotation {_fmt_vec(t.rotation_axis.as_tuple())} {fmt(t.rotation_angle)}"
    )
    out.append(f"  scale {fmt(t.scale)} {fmt(t.scale)} {fmt(t.scale)}")
    out.append("  children [")
    out.append("    Shape {")
    emissive = isinstance(node.geometry, (Polyline, str))
    color = _fmt_vec(node.color.as_tuple())
    material = f"diffuseColor {color}"
    if emissive:
        material += f" emissiveColor {color}"
    if node.opacity < 1.0:
        material += f" transparency {fmt(1.0 - node.opacity)}"
    out.append(f"      appearance Appearance {{ material Material {{ {material} }} }}")
    _emit_geometry(node, out)
    out.append("    }")
    out.append("  ]")
    out.append("}")


def _emit_track(track: AnimationTrack, index: int, out: list[str]):
    base = f"{track.target_id}_t{index:02d}"
    out.append(
        f"DEF {base}_timer TimeSensor {{ cycleInterval {fmt(track.period)} loop TRUE }}"
    )
    keys = " ".join(fmt(f) for f, _ in track.keyframes)
    if track.kind == "rotation":
        values = ", ".join(
            f"{_fmt_vec(axis.as_tuple())} {fmt(angle)}" for _, (axis, angle) in track.keyframes
        )
        out.append(
            f"DEF {base}_interp OrientationInterpolator {{ key [ {keys} ] keyValue [ {values} ] }}"
        )
        target_field = "set_rotation"
        target = track.target_id
    elif track.kind == "position":
        values = ", ".join(_fmt_vec(v.as_tuple()) for _, v in track.keyframes)
        out.append(
            f"DEF {base}_interp PositionInterpolator {{ key [ {keys} ] keyValue [ {values} ] }}"
        )
        target_field = "set_translation"
        target = track.target_id
    else:
        frames = []
        for _, pts in track.keyframes:
            frames.append(" ".join(f"{fmt(p[0])} {fmt(p[1])} {fmt(p[2])}," for p in pts).rstrip(","))
        values = ", ".join(frames)
        out.append(
            f"DEF {base}_interp CoordinateInterpolator {{ key [ {keys} ] keyValue [ {values} ] }}"
        )
        target_field = "set_point"
        target = f"{track.target_id}_pts"
    out.append(f"ROUTE {base}_timer.fraction_changed TO {base}_interp.set_fraction")
    out.append(f"ROUTE {base}_interp.value_changed TO {target}.{target_field}")


def write_vrml(scene: Scene) -> str:
    """Serialize a validated scene to VRML97 text (UTF-8, LF endings)."""
    scene.validate()
    out = [HEADER, ""]
    out.append(f"Background {{ skyColor [ {_fmt_vec(scene.background.as_tuple())} ] }}")
    for vp in scene.viewpoints:
        axis, angle = _look_at_orientation(vp)
        out.append(
            f"Viewpoint {{ position {_fmt_vec(vp.position.as_tuple())} "
            f"orientation {_fmt_vec(axis.as_tuple())} {fmt(angle)} "
            f'description "{_escape(vp.description)}" }}'
        )
    for node in scene.nodes:
        _emit_node(node, out)
    for i, track in enumerate(scene.tracks):
        _emit_track(track, i, out)
    return "\n".join(out) + "\n"


def write_frame_sequence(scene: Scene, n_frames: int, out_dir) -> list[Path]:
    """Bake frames k/n_frames and write frame_000.wrl ... into out_dir."""
    if n_frames < 1:
        raise ValueError("need n_frames >= 1")
    if not scene.tracks:
        raise ValueError("scene has no animation tracks")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for k in range(n_frames):
        frame = bake(scene, k / n_frames)
        path = out_dir / f"frame_{k:03d}.wrl"
        path.write_text(write_vrml(frame), encoding="utf-8", newline="\n")
        paths.append(path)
    return paths
