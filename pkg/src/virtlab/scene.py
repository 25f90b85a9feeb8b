"""Renderer-agnostic scene graph with asynchronous animation tracks.

A scene is a flat list of colored nodes (meshes, polylines, arrows, text),
predefined viewpoints, and looping animation tracks. Tracks with distinct
periods realize asynchronous movement; baking evaluates all tracks at one
reference phase and returns a static scene (used for per-frame export).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .geometry import (
    BLUE,
    GREEN,
    ORIGIN,
    RED,
    Color,
    Polyline,
    SurfaceMesh,
    Vec3,
)

# Nodes tagged with a coordinate role must carry the convention color.
ROLE_COLORS = {
    "x": RED, "y": GREEN, "z": BLUE,
    "r": RED, "theta": GREEN, "phi": BLUE,
    "xoy": RED, "yoz": GREEN, "zox": BLUE,
    "sphere": RED, "cone": GREEN, "semiplane": BLUE,
}

ARROW_SEGMENTS = 12
# 2 centers + tail ring + shaft-top ring + head-base ring
ARROW_VERTEX_COUNT = 2 + 3 * ARROW_SEGMENTS
ARROW_FACE_COUNT = 6 * ARROW_SEGMENTS


@dataclass
class Transform:
    translation: Vec3 = ORIGIN
    rotation_axis: Vec3 = Vec3(0.0, 0.0, 1.0)
    rotation_angle: float = 0.0
    scale: float = 1.0


@dataclass
class SceneNode:
    id: str
    kind: str  # mesh | polyline | arrow | text
    geometry: SurfaceMesh | Polyline | str
    color: Color
    opacity: float = 1.0
    transform: Transform = field(default_factory=Transform)
    role: str | None = None

    def __post_init__(self):
        if not 0.0 <= self.opacity <= 1.0:
            raise ValueError("opacity outside [0, 1]")


@dataclass
class AnimationTrack:
    target_id: str
    kind: str  # rotation | position | morph
    period: float
    keyframes: list  # (fraction, value) pairs

    def __post_init__(self):
        if self.period <= 0.0:
            raise ValueError("period must be > 0")
        if self.kind not in ("rotation", "position", "morph"):
            raise ValueError(f"unknown track kind {self.kind!r}")
        fr = [f for f, _ in self.keyframes]
        if any(b <= a for a, b in zip(fr, fr[1:])):
            raise ValueError("keyframe fractions must be strictly increasing")
        if len(fr) < 2 or fr[0] != 0.0 or fr[-1] != 1.0:
            raise ValueError("keyframes must start at 0 and end at 1")
        if self.kind == "morph":
            shapes = {np.asarray(v).shape for _, v in self.keyframes}
            if len(shapes) != 1:
                raise ValueError("morph keyframes must share one vertex count")


@dataclass(frozen=True)
class Viewpoint:
    position: Vec3
    look_at: Vec3 = ORIGIN
    description: str = ""

    def __post_init__(self):
        if (self.position - self.look_at).norm() == 0.0:
            raise ValueError("viewpoint position equals its look-at point")


def default_first_octant_viewpoint() -> Viewpoint:
    return Viewpoint(Vec3(2.5, 2.0, 1.5), ORIGIN, "First octant")


class Scene:
    """Single-writer scene builder; node ids are insertion-ordered."""

    def __init__(self, background: Color = Color(1.0, 1.0, 1.0)):
        self.background = background
        self.nodes: list[SceneNode] = []
        self.tracks: list[AnimationTrack] = []
        self.viewpoints: list[Viewpoint] = []
        self._by_id: dict[str, SceneNode] = {}

    def _add(self, kind: str, geometry, color: Color, opacity: float, role: str | None) -> SceneNode:
        node = SceneNode(f"{kind}_{len(self.nodes):03d}", kind, geometry, color, opacity, role=role)
        self.nodes.append(node)
        self._by_id[node.id] = node
        return node

    def add_mesh(self, mesh: SurfaceMesh, opacity: float = 1.0, role: str | None = None) -> SceneNode:
        return self._add("mesh", mesh, mesh.color, opacity, role)

    def add_polyline(self, line: Polyline, role: str | None = None) -> SceneNode:
        return self._add("polyline", line, line.color, 1.0, role)

    def add_arrow(
        self,
        start: Vec3,
        end: Vec3,
        color: Color,
        shaft_radius: float = 0.02,
        role: str | None = None,
    ) -> SceneNode:
        mesh = arrow_mesh(start, end, color, shaft_radius)
        return self._add("arrow", mesh, color, 1.0, role)

    def add_text(self, text: str, position: Vec3, color: Color = Color(0, 0, 0), size: float = 0.15) -> SceneNode:
        node = self._add("text", text, color, 1.0, None)
        node.transform.translation = position
        node.transform.scale = size / 0.15
        return node

    def node(self, node_id: str) -> SceneNode:
        return self._by_id[node_id]

    def add_viewpoint(self, vp: Viewpoint) -> Viewpoint:
        self.viewpoints.append(vp)
        return vp

    def add_track(self, track: AnimationTrack) -> AnimationTrack:
        if track.target_id not in self._by_id:
            raise ValueError(f"track targets unknown node {track.target_id!r}")
        if track.kind == "morph":
            target = self._by_id[track.target_id]
            n = _point_count(target.geometry)
            frame_n = np.asarray(track.keyframes[0][1]).shape[0]
            if n != frame_n:
                raise ValueError("morph frames incompatible with target geometry")
        self.tracks.append(track)
        return track

    def validate(self) -> "Scene":
        if not self.viewpoints:
            raise ValueError("scene needs at least one viewpoint")
        ids = [n.id for n in self.nodes]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate node ids")
        for track in self.tracks:
            if track.target_id not in self._by_id:
                raise ValueError(f"track targets unknown node {track.target_id!r}")
        for node in self.nodes:
            if node.role is not None:
                expected = ROLE_COLORS.get(node.role)
                if expected is not None and node.color != expected:
                    raise ValueError(f"node {node.id} violates the color convention for role {node.role}")
        return self


def _point_count(geometry) -> int:
    if isinstance(geometry, SurfaceMesh):
        return len(geometry.vertices)
    if isinstance(geometry, Polyline):
        return len(geometry.points)
    raise ValueError("geometry has no animatable points")


def axes_triad(scene: Scene, length: float = 1.0, shaft_radius: float = 0.012) -> list[SceneNode]:
    """Arrows along +x, +y, +z colored R, G, B."""
    if length <= 0.0:
        raise ValueError("axis length must be > 0")
    return [
        scene.add_arrow(ORIGIN, Vec3(length, 0, 0), RED, shaft_radius, role="x"),
        scene.add_arrow(ORIGIN, Vec3(0, length, 0), GREEN, shaft_radius, role="y"),
        scene.add_arrow(ORIGIN, Vec3(0, 0, length), BLUE, shaft_radius, role="z"),
    ]


def arrow_mesh(start: Vec3, end: Vec3, color: Color, shaft_radius: float = 0.02) -> SurfaceMesh:
    """Closed arrow: 12-segment cylinder shaft plus cone head.

    Head length is min(25% of the arrow length, 4 * shaft_radius); the head
    base radius is twice the shaft radius. Vertex/face counts are the fixed
    constants ARROW_VERTEX_COUNT and ARROW_FACE_COUNT.
    """
    axis = end - start
    length = axis.norm()
    if length == 0.0:
        raise ValueError("arrow endpoints coincide")
    d = axis * (1.0 / length)
    head_len = min(0.25 * length, 4.0 * shaft_radius)
    head_radius = 2.0 * shaft_radius
    base = start + d * (length - head_len)

    u = d.cross(Vec3(0.0, 0.0, 1.0))
    if u.norm() < 1e-9:
        u = Vec3(1.0, 0.0, 0.0)
    else:
        u = u.normalized()
    v = d.cross(u)

    n = ARROW_SEGMENTS
    ang = np.arange(n) * (2.0 * math.pi / n)
    ua, va = u.as_array(), v.as_array()
    ring = np.cos(ang)[:, None] * ua + np.sin(ang)[:, None] * va
    s0 = start.as_array() + shaft_radius * ring
    s1 = base.as_array() + shaft_radius * ring
    h0 = base.as_array() + head_radius * ring

    verts = np.vstack([start.as_array(), end.as_array(), s0, s1, h0])
    tail, apex = 0, 1
    i0, i1, i2 = 2, 2 + n, 2 + 2 * n
    faces = []
    for k in range(n):
        kn = (k + 1) % n
        faces.append((tail, i0 + kn, i0 + k))
        faces.append((i0 + k, i0 + kn, i1 + kn))
        faces.append((i0 + k, i1 + kn, i1 + k))
        faces.append((i1 + k, i1 + kn, i2 + kn))
        faces.append((i1 + k, i2 + kn, i2 + k))
        faces.append((i2 + k, i2 + kn, apex))
    return SurfaceMesh(verts, np.asarray(faces, dtype=np.int32), color).validate()


def spin_track(target_id: str, axis: Vec3, period: float) -> AnimationTrack:
    """One full revolution per period about the given axis."""
    a = axis.normalized()
    keys = [(k / 4.0, (a, k * math.pi / 2.0)) for k in range(5)]
    return AnimationTrack(target_id, "rotation", period, keys)


def morph_track(
    target_id: str, period: float, frames: list[np.ndarray], cyclic: bool = True
) -> AnimationTrack:
    """Coordinate morph through the given frames.

    cyclic frames close smoothly (frame 0 repeats at fraction 1); a
    non-cyclic sweep holds each frame at fraction k/n and snaps back to the
    first frame at the very end of the loop.
    """
    n = len(frames)
    if n < 1:
        raise ValueError("need at least one morph frame")
    keys = [(k / n, np.asarray(frames[k], dtype=float)) for k in range(n)]
    keys.append((1.0, np.asarray(frames[0], dtype=float)))
    return AnimationTrack(target_id, "morph", period, keys)


def _axis_angle_to_quat(axis: Vec3, angle: float) -> np.ndarray:
    a = axis.normalized().as_array()
    half = 0.5 * angle
    return np.array([math.cos(half), *(math.sin(half) * a)])


def _quat_to_axis_angle(q: np.ndarray) -> tuple[Vec3, float]:
    q = q / np.linalg.norm(q)
    w = max(-1.0, min(1.0, float(q[0])))
    angle = 2.0 * math.acos(w)
    s = math.sqrt(max(0.0, 1.0 - w * w))
    if s < 1e-12:
        return Vec3(0.0, 0.0, 1.0), 0.0
    return Vec3(*(q[1:] / s)), angle


def _slerp(q0: np.ndarray, q1: np.ndarray, t: float) -> np.ndarray:
    dot = float(q0 @ q1)
    if dot < 0.0:
        q1, dot = -q1, -dot
    if dot > 1.0 - 1e-12:
        out = (1.0 - t) * q0 + t * q1
        return out / np.linalg.norm(out)
    omega = math.acos(max(-1.0, min(1.0, dot)))
    return (math.sin((1.0 - t) * omega) * q0 + math.sin(t * omega) * q1) / math.sin(omega)


def _track_value(track: AnimationTrack, phase: float):
    """Evaluate a track at phase in [0, 1] (linear / slerp interpolation)."""
    keys = track.keyframes
    if phase <= 0.0:
        return keys[0][1]
    if phase >= 1.0:
        return keys[-1][1]
    hi = next(i for i, (f, _) in enumerate(keys) if f >= phase)
    if keys[hi][0] == phase:
        return keys[hi][1]
    lo = hi - 1
    f0, v0 = keys[lo]
    f1, v1 = keys[hi]
    t = (phase - f0) / (f1 - f0)
    if track.kind == "rotation":
        q = _slerp(_axis_angle_to_quat(*v0), _axis_angle_to_quat(*v1), t)
        # keep continuous spins monotone past 180 degrees
        axis, angle = _quat_to_axis_angle(q)
        a0, a1 = v0[1], v1[1]
        if v0[0].as_tuple() == v1[0].as_tuple():
            return (v0[0], a0 + t * (a1 - a0))
        return (axis, angle)
    if track.kind == "position":
        return v0 + (v1 - v0) * t
    return (1.0 - t) * np.asarray(v0) + t * np.asarray(v1)


def bake(scene: Scene, fraction: float) -> Scene:
    """Static copy with every track applied at the reference phase.

    fraction refers to the longest track period; shorter tracks advance
    proportionally faster ((fraction * T_ref / T) mod 1).
    """
    if not scene.tracks:
        raise ValueError("scene has no animation tracks to bake")
    t_ref = max(t.period for t in scene.tracks)
    baked = Scene(scene.background)
    baked.viewpoints = list(scene.viewpoints)
    for node in scene.nodes:
        geometry = node.geometry
        if isinstance(geometry, SurfaceMesh):
            geometry = SurfaceMesh(geometry.vertices.copy(), geometry.faces, geometry.color)
        elif isinstance(geometry, Polyline):
            geometry = Polyline(geometry.points.copy(), geometry.closed, geometry.color)
        clone = SceneNode(
            node.id, node.kind, geometry, node.color, node.opacity,
            replace(node.transform), node.role,
        )
        baked.nodes.append(clone)
        baked._by_id[clone.id] = clone
    for track in scene.tracks:
        phase = math.fmod(fraction * t_ref / track.period, 1.0)
        value = _track_value(track, phase)
        node = baked._by_id[track.target_id]
        if track.kind == "rotation":
            node.transform.rotation_axis, node.transform.rotation_angle = value[0], value[1]
        elif track.kind == "position":
            node.transform.translation = value
        else:
            pts = np.asarray(value, dtype=float)
            if isinstance(node.geometry, SurfaceMesh):
                node.geometry.vertices = pts
            else:
                node.geometry.points = pts
    return baked
