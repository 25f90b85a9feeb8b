"""Catalog of the built-in presentation scenarios and the JSON config loader.

Each scenario describes one laboratory figure: its parameters (degrees and
wavelengths at this interface), animation frame count, and viewpoints.
build() turns a spec into a renderable Scene plus the kind-specific data
products (pattern grids, cuts, ellipse tables, sweep tables).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import farfield, patterns, waves
from .farfield import AntennaArray, DipoleElement, PhasorVec
from .geometry import (
    BLUE,
    GREEN,
    ORIGIN,
    RED,
    TWO_PI,
    Color,
    Polyline,
    SphericalPoint,
    SurfaceMesh,
    Vec3,
    X_AXIS,
    Y_AXIS,
    Z_AXIS,
    coordinate_curve,
    coordinate_surface_mesh,
    main_plane_directions,
    rotation_about_axis,
    scs_to_ccs,
    sphere_cone_intersection,
    standard_triples,
    volume_element,
)
from .scene import (
    Scene,
    SceneNode,
    Viewpoint,
    arrow_mesh,
    axes_triad,
    default_first_octant_viewpoint,
    morph_track,
    spin_track,
)

GRAY = Color(0.35, 0.35, 0.35)
LIGHT_GRAY = Color(0.75, 0.75, 0.75)
DARK = Color(0.1, 0.1, 0.1)
GOLD = Color(0.85, 0.65, 0.1)
ORANGE = Color(0.9, 0.45, 0.1)

VP_FRONT = Viewpoint(Vec3(3.4, 0.0, 0.0), ORIGIN, "Front (+x)")
VP_SIDE = Viewpoint(Vec3(0.0, 3.4, 0.0), ORIGIN, "Side (+y)")
VP_TOP = Viewpoint(Vec3(0.0, 0.0, 3.4), ORIGIN, "Top (+z)")
VP_LOW = Viewpoint(Vec3(2.5, 2.0, -1.5), ORIGIN, "Lower octant")
VP_CLOSE = Viewpoint(Vec3(1.3, 1.0, 0.8), ORIGIN, "Close-up")
VP_FAR = Viewpoint(Vec3(4.2, 3.4, 2.5), ORIGIN, "Far")


@dataclass(frozen=True)
class ScenarioSpec:
    id: str
    kind: str
    title: str
    params: dict
    n_frames: int = 1
    viewpoints: tuple[Viewpoint, ...] = ()

    def __post_init__(self):
        if self.n_frames < 1:
            raise ValueError("n_frames must be >= 1")
        object.__setattr__(self, "viewpoints", tuple(self.viewpoints))


@dataclass
class BuildResult:
    spec: ScenarioSpec
    scene: Scene
    data: dict
    cuts: list[patterns.PlaneCut] | None = None


class ConfigError(ValueError):
    pass


# parameter name -> (python type, validator or None); validators raise with
# the offending key in the message
def _positive(key):
    def check(v):
        if v <= 0:
            raise ConfigError(f"parameter {key!r} must be > 0")
    return check


def _in_range(key, lo, hi):
    def check(v):
        if not lo <= v <= hi:
            raise ConfigError(f"parameter {key!r} out of range [{lo}, {hi}]")
    return check


def _grid_check(key):
    def check(v):
        if (
            not isinstance(v, (list, tuple))
            or len(v) != 2
            or not all(isinstance(x, int) and x >= 2 for x in v)
        ):
            raise ConfigError(f"parameter {key!r} must be [n_theta, n_phi] with integers >= 2")
    return check


def _vec_check(key):
    def check(v):
        if not isinstance(v, (list, tuple)) or len(v) != 3:
            raise ConfigError(f"parameter {key!r} must be [x, y, z]")
    return check


PARAM_SCHEMAS: dict[str, dict] = {
    "waves_line": {
        "z0": (float, 50.0, _positive("z0")),
        "zl": (list, [100.0, 50.0], None),
        "length_wl": (float, 3.0, _positive("length_wl")),
        "n_points": (int, 181, _positive("n_points")),
    },
    "standing_phasor": {
        "length_wl": (float, 1.25, _positive("length_wl")),
        "n_points": (int, 61, _positive("n_points")),
        "spoke_every": (int, 5, _positive("spoke_every")),
    },
    "volume_element": {
        "r0": (float, 1.0, _positive("r0")),
        "dr": (float, 0.3, _positive("dr")),
        "theta0_deg": (float, 40.0, _in_range("theta0_deg", 0.0, 180.0)),
        "dtheta_deg": (float, 30.0, _positive("dtheta_deg")),
        "phi0_deg": (float, 75.0, _in_range("phi0_deg", 0.0, 360.0)),
        "dphi_deg": (float, 30.0, _positive("dphi_deg")),
    },
    "unit_triples": {
        "step_deg": (float, 45.0, _positive("step_deg")),
        "arrow_length": (float, 0.3, _positive("arrow_length")),
    },
    "scs_composite": {
        "r": (float, 1.0, _positive("r")),
        "theta_deg": (float, 50.0, _in_range("theta_deg", 0.0, 180.0)),
        "phi_deg": (float, 30.0, _in_range("phi_deg", 0.0, 360.0)),
    },
    "sphere_cone_sweep": {
        "r": (float, 1.0, _positive("r")),
        "cutout_deg": (list, [0.0, 30.0], None),
    },
    "polarization_triptych": {
        "scale": (float, 0.35, _positive("scale")),
    },
    "field_decomposition": {
        "e_c": (list, [1.0, 0.0, 0.0], _vec_check("e_c")),
        "e_s": (list, [0.0, 0.6, 0.0], _vec_check("e_s")),
    },
    "ellipse_trace": {
        "e_c": (list, [0.0, 0.0, 1.0], _vec_check("e_c")),
        "e_s": (list, [-0.5, 0.0, 0.0], _vec_check("e_s")),
        "propagation": (list, [0.0, 1.0, 0.0], _vec_check("propagation")),
    },
    "farfield_ellipse": {
        "theta_deg": (float, 60.0, _in_range("theta_deg", 0.0, 180.0)),
        "phi_deg": (float, 45.0, _in_range("phi_deg", 0.0, 360.0)),
        "major": (float, 0.5, _positive("major")),
        "minor": (float, 0.25, _positive("minor")),
    },
    "crossed_dipoles": {
        "phase_lead_deg": (float, 90.0, None),
        "leading": (str, "y", None),
        "marked_phi_deg": (list, [0.0, 240.0, 270.0], None),
        "convention": (str, farfield.TOWARD_SOURCE, None),
    },
    "two_dipole_array": {
        "length_wl": (float, 2.4, _positive("length_wl")),
        "element_axis": (list, [0.2, 0.4, 0.894], _vec_check("element_axis")),
        "spacing_wl": (float, 0.25, _positive("spacing_wl")),
        "spacing_axis": (list, [0.3, 0.5, 0.812], _vec_check("spacing_axis")),
        "phase_diff_deg": (float, 30.0, None),
        "grid": (list, [91, 180], _grid_check("grid")),
        "mapping": (str, "field", None),
    },
    "anechoic_sweep": {
        "n_steps": (int, 12, _positive("n_steps")),
        "length_wl": (float, 0.5, _positive("length_wl")),
    },
    "explorer_default": {
        "theta_deg": (float, 0.0, _in_range("theta_deg", 0.0, 180.0)),
        "phi_deg": (float, 0.0, _in_range("phi_deg", 0.0, 360.0)),
        "length_wl": (float, 0.5, _in_range("length_wl", 0.05, 3.0)),
        "grid": (list, [31, 60], _grid_check("grid")),
        "opacity": (float, 0.7, _in_range("opacity", 0.0, 1.0)),
        "mapping": (str, "field", None),
    },
    "characteristics": {
        "l_min": (float, 0.1, _positive("l_min")),
        "l_max": (float, 3.0, _positive("l_max")),
        "steps": (int, 100, _positive("steps")),
    },
}

KINDS = tuple(PARAM_SCHEMAS)

_CATALOG_ROWS = [
    # id, kind, title, params override, n_frames, extra viewpoints
    ("fig1_left", "waves_line",
     "Current waves on a terminated wire", {}, 12, ()),
    ("fig1_right", "standing_phasor",
     "Standing dipole current as rotating phasors", {}, 12,
     (VP_FRONT, VP_SIDE, VP_TOP, VP_LOW, VP_CLOSE)),
    ("fig2_left", "volume_element",
     "SCS difference volume element", {}, 1, ()),
    ("fig2_right", "unit_triples",
     "SCS unit-vector triples on the main planes", {}, 1, ()),
    ("fig3_left", "scs_composite",
     "SCS surfaces, curves and unit vectors", {}, 1, ()),
    ("fig3_right", "sphere_cone_sweep",
     "Sphere-cone intersection sweep", {}, 37, ()),
    ("fig4_left", "polarization_triptych",
     "Linear, circular and elliptical polarization", {}, 1, ()),
    ("fig4_right", "field_decomposition",
     "Field decomposition into E_c and E_s", {}, 20, ()),
    ("fig5_left", "ellipse_trace",
     "CW elliptical far-field trace toward y", {}, 23, ()),
    ("fig5_right", "farfield_ellipse",
     "CCW elliptical far field in a 1st-octant direction", {}, 19, ()),
    ("fig6", "crossed_dipoles",
     "Polarization of crossed short dipoles", {}, 73, ()),
    ("fig7", "two_dipole_array",
     "Two-dipole array pattern and main-plane cuts", {}, 38, ()),
    ("fig8", "anechoic_sweep",
     "Anechoic chamber pattern-cut measurement", {}, 12,
     (Viewpoint(Vec3(0.3, -2.8, 1.6), Vec3(0.0, 0.0, 0.9), "Receiver side"),)),
    ("fig9", "explorer_default",
     "Interactive dipole explorer (default state)", {}, 1,
     (VP_FRONT, VP_SIDE, VP_TOP, VP_LOW, VP_FAR)),
    ("fig10", "characteristics",
     "Linear dipole characteristics sweep", {}, 100, ()),
]


def _defaults_for(kind: str) -> dict:
    return {name: default for name, (_, default, _) in PARAM_SCHEMAS[kind].items()}


def catalog() -> list[ScenarioSpec]:
    """The 15 built-in scenarios, one per laboratory figure panel."""
    specs = []
    for sid, kind, title, overrides, n_frames, extra_vps in _CATALOG_ROWS:
        params = _defaults_for(kind)
        params.update(overrides)
        specs.append(
            ScenarioSpec(
                id=sid,
                kind=kind,
                title=title,
                params=params,
                n_frames=n_frames,
                viewpoints=(default_first_octant_viewpoint(), *extra_vps),
            )
        )
    return specs


def catalog_by_id() -> dict[str, ScenarioSpec]:
    return {s.id: s for s in catalog()}


def spec_to_jsonable(spec: ScenarioSpec) -> dict:
    return {
        "id": spec.id,
        "kind": spec.kind,
        "title": spec.title,
        "params": spec.params,
        "frames": spec.n_frames,
        "viewpoints": [
            {
                "position": list(vp.position.as_tuple()),
                "look_at": list(vp.look_at.as_tuple()),
                "description": vp.description,
            }
            for vp in spec.viewpoints
        ],
    }


_TOP_KEYS = {"id", "kind", "title", "params", "frames", "viewpoints"}


def parse_config(doc) -> ScenarioSpec:
    """Validate a config mapping (already JSON-decoded) into a ScenarioSpec.

    Angles are degrees and lengths wavelengths. Unknown keys anywhere are
    rejected with the offending key named.
    """
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown key {sorted(unknown)[0]!r}")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise ConfigError(f"unknown kind {kind!r}")
    sid = doc.get("id")
    if not isinstance(sid, str) or not sid:
        raise ConfigError("missing or invalid 'id'")

    schema = PARAM_SCHEMAS[kind]
    raw = doc.get("params", {})
    if not isinstance(raw, dict):
        raise ConfigError("'params' must be an object")
    params = _defaults_for(kind)
    for key, value in raw.items():
        if key not in schema:
            raise ConfigError(f"unknown parameter {key!r} for kind {kind!r}")
        expected, _, check = schema[key]
        if expected is float:
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ConfigError(f"parameter {key!r} must be a number")
            value = float(value)
        elif expected is int:
            if not isinstance(value, int) or isinstance(value, bool):
                raise ConfigError(f"parameter {key!r} must be an integer")
        elif expected is str:
            if not isinstance(value, str):
                raise ConfigError(f"parameter {key!r} must be a string")
        elif expected is list:
            if not isinstance(value, list):
                raise ConfigError(f"parameter {key!r} must be a list")
        if check is not None:
            check(value)
        params[key] = value

    n_frames = doc.get("frames", dict((s[0], s[4]) for s in _CATALOG_ROWS).get(sid))
    if n_frames is None:
        n_frames = 1
    if not isinstance(n_frames, int) or n_frames < 1:
        raise ConfigError("'frames' must be an integer >= 1")

    if "viewpoints" in doc:
        vps = []
        for i, item in enumerate(doc["viewpoints"]):
            if not isinstance(item, dict) or "position" not in item:
                raise ConfigError(f"viewpoint {i} needs a 'position'")
            extra = set(item) - {"position", "look_at", "description"}
            if extra:
                raise ConfigError(f"unknown key {sorted(extra)[0]!r} in viewpoint {i}")
            pos = item["position"]
            look = item.get("look_at", [0.0, 0.0, 0.0])
            for name, v in (("position", pos), ("look_at", look)):
                if not isinstance(v, list) or len(v) != 3:
                    raise ConfigError(f"viewpoint {i} {name} must be [x, y, z]")
            vps.append(
                Viewpoint(Vec3(*map(float, pos)), Vec3(*map(float, look)),
                          str(item.get("description", "")))
            )
        viewpoints = tuple(vps)
    else:
        builtin = {s[0]: s for s in _CATALOG_ROWS}.get(sid)
        extra = builtin[5] if builtin else ()
        viewpoints = (default_first_octant_viewpoint(), *extra)

    title = doc.get("title")
    if title is None:
        builtin = {s[0]: s[2] for s in _CATALOG_ROWS}
        title = builtin.get(sid, sid)
    elif not isinstance(title, str):
        raise ConfigError("'title' must be a string")

    return ScenarioSpec(sid, kind, title, params, n_frames, viewpoints)


# ---------------------------------------------------------------------------
# scene builders
# ---------------------------------------------------------------------------


def _base_scene(spec: ScenarioSpec, axes_length: float = 1.2) -> Scene:
    scene = Scene()
    for vp in spec.viewpoints:
        scene.add_viewpoint(vp)
    axes_triad(scene, axes_length)
    return scene


def _merge_meshes(meshes: list[SurfaceMesh], color: Color) -> SurfaceMesh:
    verts, faces, offset = [], [], 0
    for m in meshes:
        verts.append(m.vertices)
        faces.append(m.faces + offset)
        offset += len(m.vertices)
    return SurfaceMesh(np.vstack(verts), np.vstack(faces), color)


def _marker_mesh(center: Vec3, size: float, color: Color) -> SurfaceMesh:
    c = center.as_array()
    pts = c + size * np.array(
        [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]], dtype=float
    )
    faces = [
        (0, 2, 4), (2, 1, 4), (1, 3, 4), (3, 0, 4),
        (2, 0, 5), (1, 2, 5), (3, 1, 5), (0, 3, 5),
    ]
    return SurfaceMesh(pts, np.asarray(faces, dtype=np.int32), color)


def _ellipse_points(e_c: np.ndarray, e_s: np.ndarray, n: int = 64) -> np.ndarray:
    tau = np.linspace(0.0, TWO_PI, n, endpoint=False)
    return np.cos(tau)[:, None] * e_c + np.sin(tau)[:, None] * e_s


def _field_arrow_frames(
    anchor: Vec3, e_c: np.ndarray, e_s: np.ndarray, n_frames: int,
    scale: float = 1.0, radius: float = 0.012, min_len: float = 0.02,
) -> list[np.ndarray]:
    """Arrow vertex frames following E(tau); near-zero fields are clamped."""
    frames = []
    last_dir = e_c if np.linalg.norm(e_c) > 0 else np.array([1.0, 0.0, 0.0])
    for k in range(n_frames):
        tau = TWO_PI * k / n_frames
        v = (math.cos(tau) * e_c + math.sin(tau) * e_s) * scale
        n = np.linalg.norm(v)
        if n < min_len:
            v = last_dir / np.linalg.norm(last_dir) * min_len
        else:
            last_dir = v
        tip = anchor + Vec3.from_array(v)
        frames.append(arrow_mesh(anchor, tip, DARK, radius).vertices)
    return frames


def _direction(theta_deg: float, phi_deg: float) -> Vec3:
    return scs_to_ccs(SphericalPoint(1.0, math.radians(theta_deg), math.radians(phi_deg)))


def _crossed_pair(params: dict) -> AntennaArray:
    lead = math.radians(params["phase_lead_deg"])
    phase_y = lead if params["leading"] == "y" else 0.0
    phase_z = 0.0 if params["leading"] == "y" else lead
    return AntennaArray(
        (
            DipoleElement(ORIGIN, Z_AXIS, "short", phase=phase_z),
            DipoleElement(ORIGIN, Y_AXIS, "short", phase=phase_y),
        )
    )


def _build_waves_line(spec: ScenarioSpec, scene: Scene) -> dict:
    p = spec.params
    wire = waves.TerminatedWire(p["z0"], complex(p["zl"][0], p["zl"][1]), p["length_wl"])
    z = np.linspace(0.0, wire.length, p["n_points"])
    amp = 0.45
    offsets = {"p": 0.0, "i": 0.7, "r": 1.4, "s": 2.1, "t": 2.8}
    colors = {
        "p": DARK, "i": Color(0.0, 0.0, 0.85), "r": Color(0.85, 0.0, 0.0),
        "s": Color(0.6, 0.0, 0.6), "t": Color(0.0, 0.55, 0.0),
    }
    frames_data = []
    taus = [TWO_PI * k / spec.n_frames for k in range(spec.n_frames)]
    per_tau = [waves.wave_components(wire, z, tau) for tau in taus]

    scene.add_polyline(
        Polyline(np.stack([z, np.zeros_like(z), np.zeros_like(z)], axis=1), color=GRAY)
    )
    nodes = {}
    for name in ("p", "i", "r", "s", "t"):
        first = getattr(per_tau[0], name)
        pts = np.stack([z, np.full_like(z, offsets[name]), amp * first], axis=1)
        nodes[name] = scene.add_polyline(Polyline(pts, color=colors[name]))
        scene.add_text(name, Vec3(-0.35, offsets[name], 0.0), colors[name])
        frames = [
            np.stack([z, np.full_like(z, offsets[name]), amp * getattr(wc, name)], axis=1)
            for wc in per_tau
        ]
        scene.add_track(morph_track(nodes[name].id, 6.0, frames))
    # motion arrows: i and t travel toward the load (z = 0), r away from it
    scene.add_arrow(Vec3(1.9, offsets["i"], 0.75), Vec3(1.3, offsets["i"], 0.75), colors["i"])
    scene.add_arrow(Vec3(1.3, offsets["r"], 0.75), Vec3(1.9, offsets["r"], 0.75), colors["r"])
    scene.add_arrow(Vec3(1.9, offsets["t"], 0.75), Vec3(1.3, offsets["t"], 0.75), colors["t"])

    for tau, wc in zip(taus, per_tau):
        frames_data.append(
            {
                "tau_deg": math.degrees(tau),
                "p": wc.p, "i": wc.i, "r": wc.r, "s": wc.s, "t": wc.t,
            }
        )
    gamma = wire.gamma
    return {
        "z": z,
        "gamma": [gamma.real, gamma.imag],
        "frames": frames_data,
    }


def _build_standing_phasor(spec: ScenarioSpec, scene: Scene) -> dict:
    p = spec.params
    length, n_points = p["length_wl"], p["n_points"]
    frame_set = waves.rotating_phasor_frames(length, n_points, spec.n_frames)
    zeta = frame_set.positions
    current = waves.standing_current_profile(length, zeta)

    wire = np.stack([np.zeros_like(zeta), np.zeros_like(zeta), zeta], axis=1)
    scene.add_polyline(Polyline(wire, color=DARK))
    env = np.stack([current, np.zeros_like(zeta), zeta], axis=1)
    scene.add_polyline(Polyline(env, color=LIGHT_GRAY))
    scene.add_polyline(Polyline(env * np.array([-1.0, 1.0, 1.0]), color=LIGHT_GRAY))

    def tips(vecs: np.ndarray) -> np.ndarray:
        return np.stack([vecs[:, 0], vecs[:, 1], zeta], axis=1)

    helix = scene.add_polyline(Polyline(tips(frame_set.frames[0]), color=ORANGE))
    scene.add_track(
        morph_track(helix.id, 6.0, [tips(v) for v in frame_set.frames])
    )

    spoke_idx = list(range(0, n_points, p["spoke_every"]))
    def spokes(vecs: np.ndarray) -> np.ndarray:
        pts = []
        for i in spoke_idx:
            pts.append((0.0, 0.0, zeta[i]))
            pts.append((vecs[i, 0], vecs[i, 1], zeta[i]))
            pts.append((0.0, 0.0, zeta[i]))
        return np.asarray(pts)

    spoke_node = scene.add_polyline(Polyline(spokes(frame_set.frames[0]), color=GOLD))
    scene.add_track(
        morph_track(spoke_node.id, 6.0, [spokes(v) for v in frame_set.frames])
    )
    return {
        "zeta": zeta,
        "current": current,
        "frames": [{"x": v[:, 0], "y": v[:, 1]} for v in frame_set.frames],
    }


def _build_volume_element(spec: ScenarioSpec, scene: Scene) -> dict:
    p = spec.params
    meshes = volume_element(
        p["r0"], p["dr"],
        math.radians(p["theta0_deg"]), math.radians(p["dtheta_deg"]),
        math.radians(p["phi0_deg"]), math.radians(p["dphi_deg"]),
    )
    roles = ["sphere", "sphere", "cone", "cone", "semiplane", "semiplane"]
    for mesh, role in zip(meshes, roles):
        node = scene.add_mesh(mesh, opacity=0.85, role=role)
        scene.add_track(spin_track(node.id, Z_AXIS, 16.0))
    return {
        "faces": [
            {"role": role, "n_vertices": len(m.vertices), "n_faces": len(m.faces)}
            for m, role in zip(meshes, roles)
        ]
    }


def _build_unit_triples(spec: ScenarioSpec, scene: Scene) -> dict:
    p = spec.params
    step = math.radians(p["step_deg"])
    triples = standard_triples(main_plane_directions(step))
    for plane, role in (("xoy", "xoy"), ("yoz", "yoz"), ("zox", "zox")):
        if plane == "xoy":
            curve = coordinate_curve("phi_circle", r=1.0, theta=math.pi / 2, n=96)
            curve = Polyline(curve.points, curve.closed, RED)
        elif plane == "yoz":
            a = np.linspace(0.0, TWO_PI, 96, endpoint=False)
            curve = Polyline(
                np.stack([np.zeros_like(a), np.sin(a), np.cos(a)], axis=1),
                closed=True, color=GREEN,
            )
        else:
            a = np.linspace(0.0, TWO_PI, 96, endpoint=False)
            curve = Polyline(
                np.stack([np.sin(a), np.zeros_like(a), np.cos(a)], axis=1),
                closed=True, color=BLUE,
            )
        node = scene.add_polyline(curve, role=role)
        scene.add_track(spin_track(node.id, Z_AXIS, 12.0))

    ln = p["arrow_length"]
    groups = {"r": ([], RED), "theta": ([], GREEN), "phi": ([], BLUE)}
    undefined = []
    for triple in triples:
        anchor = scs_to_ccs(triple.direction)
        if not triple.defined:
            undefined.append(anchor)
            continue
        for role, vec in (("r", triple.e_r), ("theta", triple.e_theta), ("phi", triple.e_phi)):
            groups[role][0].append(arrow_mesh(anchor, anchor + vec * ln, groups[role][1], 0.01))
    for role, (meshes, color) in groups.items():
        node = scene.add_mesh(_merge_meshes(meshes, color), role=role)
        scene.add_track(spin_track(node.id, Z_AXIS, 12.0))
    for anchor in undefined:
        scene.add_mesh(_marker_mesh(anchor, 0.04, GRAY))
        scene.add_text("undefined", anchor + Vec3(0.08, 0.0, 0.0), GRAY)
    return {
        "n_triples": len(triples),
        "n_defined": sum(1 for t in triples if t.defined),
        "n_undefined": sum(1 for t in triples if not t.defined),
        "directions": [
            {
                "theta_deg": math.degrees(t.direction.theta),
                "phi_deg": math.degrees(t.direction.phi),
                "defined": t.defined,
            }
            for t in triples
        ],
    }


def _build_scs_composite(spec: ScenarioSpec, scene: Scene) -> dict:
    p = spec.params
    r = p["r"]
    theta = math.radians(p["theta_deg"])
    phi = math.radians(p["phi_deg"])
    nodes = [
        scene.add_mesh(coordinate_surface_mesh("sphere", r), opacity=0.3, role="sphere"),
        scene.add_mesh(
            coordinate_surface_mesh("cone", theta, r_range=(0.0, 1.3 * r)),
            opacity=0.55, role="cone",
        ),
        scene.add_mesh(
            coordinate_surface_mesh("semiplane", phi, r_range=(0.0, 1.3 * r)),
            opacity=0.55, role="semiplane",
        ),
        scene.add_polyline(coordinate_curve("ray", theta=theta, phi=phi, r_max=1.3 * r), role="r"),
        scene.add_polyline(coordinate_curve("meridian", r=r, phi=phi), role="theta"),
        scene.add_polyline(coordinate_curve("phi_circle", r=r, theta=theta), role="phi"),
    ]
    triple = standard_triples([(theta, phi)])[0]
    anchor = scs_to_ccs(SphericalPoint(r, theta, phi))
    for role, vec, color in (
        ("r", triple.e_r, RED), ("theta", triple.e_theta, GREEN), ("phi", triple.e_phi, BLUE)
    ):
        nodes.append(scene.add_arrow(anchor, anchor + vec * 0.35, color, 0.012, role=role))
    for node in nodes:
        scene.add_track(spin_track(node.id, Z_AXIS, 20.0))
    return {
        "point": {"r": r, "theta_deg": p["theta_deg"], "phi_deg": p["phi_deg"]},
        "ccs": list(anchor.as_tuple()),
    }


def _build_sphere_cone_sweep(spec: ScenarioSpec, scene: Scene) -> dict:
    p = spec.params
    r = p["r"]
    cutout = (math.radians(p["cutout_deg"][0]), math.radians(p["cutout_deg"][1]))
    outer = coordinate_surface_mesh("sphere", r, cutout=cutout)
    inner = coordinate_surface_mesh("sphere", 0.97 * r, cutout=cutout)
    scene.add_mesh(outer, role="sphere")
    scene.add_mesh(SurfaceMesh(inner.vertices, inner.faces, ORANGE))

    n_frames = spec.n_frames
    thetas = np.linspace(0.0, math.pi, n_frames)
    clamp = math.radians(0.5)  # the cone surface degenerates on the z-axis
    cone_meshes = [
        coordinate_surface_mesh(
            "cone", min(max(float(t), clamp), math.pi - clamp), r_range=(0.0, 1.4 * r)
        )
        for t in thetas
    ]
    circle_frames = [sphere_cone_intersection(r, float(t), n=96).points for t in thetas]

    mid = n_frames // 3
    cone_node = scene.add_mesh(
        SurfaceMesh(cone_meshes[mid].vertices, cone_meshes[mid].faces, GREEN),
        opacity=0.75, role="cone",
    )
    circle = scene.add_polyline(
        Polyline(circle_frames[mid], closed=True, color=BLUE), role="phi"
    )
    scene.add_track(morph_track(cone_node.id, 8.0, [m.vertices for m in cone_meshes]))
    scene.add_track(morph_track(circle.id, 8.0, circle_frames))
    return {
        "theta_deg": [math.degrees(t) for t in thetas],
        "circle_radius": [r * math.sin(t) for t in thetas],
    }


def _build_polarization_triptych(spec: ScenarioSpec, scene: Scene) -> dict:
    scale = spec.params["scale"]
    presets = [
        # linear on x, circular on y, elliptical on z, at the unit points
        ("linear", Vec3(1.0, 0.0, 0.0), np.array([0.0, 0.0, 1.0]), np.zeros(3), 4.0),
        ("circular", Vec3(0.0, 1.0, 0.0), np.array([0.0, 0.0, 1.0]), np.array([1.0, 0.0, 0.0]), 6.0),
        ("elliptical", Vec3(0.0, 0.0, 1.0), np.array([1.0, 0.0, 0.0]), np.array([0.0, 0.5, 0.0]), 10.0),
    ]
    info = []
    for name, anchor, e_c, e_s, period in presets:
        trace = _ellipse_points(e_c, e_s, 64) * scale + anchor.as_array()
        scene.add_polyline(Polyline(trace, closed=True, color=GRAY))
        frames = _field_arrow_frames(anchor, e_c, e_s, 24, scale)
        node = scene.add_mesh(
            SurfaceMesh(frames[0], arrow_mesh(anchor, anchor + Vec3(0, 0, scale), DARK, 0.012).faces, DARK)
        )
        scene.add_track(morph_track(node.id, period, frames))
        scene.add_text(name, anchor + Vec3(0.0, 0.0, scale + 0.15), DARK)
        info.append({"classification": name, "anchor": list(anchor.as_tuple()), "period_s": period})
    return {"presets": info}


def _build_field_decomposition(spec: ScenarioSpec, scene: Scene) -> dict:
    p = spec.params
    e_c = np.asarray(p["e_c"], dtype=float)
    e_s = np.asarray(p["e_s"], dtype=float)
    n = spec.n_frames
    scene.add_polyline(Polyline(_ellipse_points(e_c, e_s, 72), closed=True, color=GRAY))

    blue, green = Color(0.0, 0.0, 0.9), Color(0.0, 0.6, 0.0)
    parts = {
        "Ec": (lambda tau: math.cos(tau) * e_c, blue),
        "Es": (lambda tau: math.sin(tau) * e_s, green),
        "E": (lambda tau: math.cos(tau) * e_c + math.sin(tau) * e_s, DARK),
    }
    for label, (fn, color) in parts.items():
        frames = []
        last = np.array([1.0, 0.0, 0.0])
        for k in range(n):
            v = fn(TWO_PI * k / n)
            ln = np.linalg.norm(v)
            if ln < 0.02:
                v = last / np.linalg.norm(last) * 0.02
            else:
                last = v
            frames.append(arrow_mesh(ORIGIN, Vec3.from_array(v), color, 0.012).vertices)
        node = scene.add_mesh(SurfaceMesh(frames[0], arrow_mesh(ORIGIN, Vec3(0, 0, 1), color, 0.012).faces, color))
        scene.add_track(morph_track(node.id, 5.0, frames))
    scene.add_text("Ec", Vec3.from_array(e_c * 1.15), blue)
    scene.add_text("Es", Vec3.from_array(e_s * 1.15) if np.linalg.norm(e_s) else Vec3(0, 0.2, 0), green)

    phasor = PhasorVec.from_array(e_c - 1j * e_s)
    prop = np.cross(e_c, e_s)
    data: dict = {"e_c": e_c, "e_s": e_s}
    if np.linalg.norm(prop) > 1e-12:
        ellipse = farfield.polarization(
            phasor, Vec3.from_array(prop / np.linalg.norm(prop)), farfield.TOWARD_OBSERVER
        )
        data["axial_ratio"] = ellipse.axial_ratio
        data["handedness"] = ellipse.handedness
        data["classification"] = ellipse.classification
    return data


def _build_ellipse_trace(spec: ScenarioSpec, scene: Scene) -> dict:
    p = spec.params
    e_c = np.asarray(p["e_c"], dtype=float)
    e_s = np.asarray(p["e_s"], dtype=float)
    prop = Vec3(*p["propagation"]).normalized()
    anchor = prop * 1.3
    n = spec.n_frames
    samples_per_frame = 3
    total = samples_per_frame * (n - 1) + 1
    tau = np.linspace(0.0, TWO_PI, total)
    path = np.cos(tau)[:, None] * e_c + np.sin(tau)[:, None] * e_s + anchor.as_array()

    frames = []
    for k in range(n):
        upto = samples_per_frame * k
        pts = path.copy()
        pts[upto + 1 :] = path[upto]  # trace grows; hidden tail collapses
        frames.append(pts)
    trace = scene.add_polyline(Polyline(frames[0], color=Color(0.8, 0.1, 0.1)))
    scene.add_track(morph_track(trace.id, 7.0, frames))

    arrow_frames = []
    for k in range(n):
        tip = Vec3.from_array(path[samples_per_frame * k])
        arrow_frames.append(arrow_mesh(anchor, tip, DARK, 0.012).vertices)
    arrow_node = scene.add_mesh(
        SurfaceMesh(arrow_frames[0], arrow_mesh(anchor, anchor + Vec3(0, 0, 1), DARK, 0.012).faces, DARK)
    )
    scene.add_track(morph_track(arrow_node.id, 7.0, arrow_frames))
    scene.add_arrow(ORIGIN, anchor, GRAY, 0.015)

    ellipse = farfield.polarization(
        PhasorVec.from_array(e_c - 1j * e_s), prop, farfield.TOWARD_OBSERVER
    )
    return {
        "axial_ratio": ellipse.axial_ratio,
        "handedness": ellipse.handedness,
        "classification": ellipse.classification,
        "propagation": list(prop.as_tuple()),
    }


def _build_farfield_ellipse(spec: ScenarioSpec, scene: Scene) -> dict:
    p = spec.params
    theta = math.radians(p["theta_deg"])
    phi = math.radians(p["phi_deg"])
    triple = standard_triples([(theta, phi)])[0]
    e_c = triple.e_theta.as_array() * p["major"]
    e_s = triple.e_phi.as_array() * p["minor"]
    anchor = scs_to_ccs(SphericalPoint(1.4, theta, phi))

    scene.add_arrow(ORIGIN, anchor, GRAY, 0.015)
    scene.add_polyline(
        Polyline(_ellipse_points(e_c, e_s, 72) + anchor.as_array(), closed=True, color=GRAY)
    )
    frames = _field_arrow_frames(anchor, e_c, e_s, spec.n_frames)
    node = scene.add_mesh(
        SurfaceMesh(frames[0], arrow_mesh(anchor, anchor + Vec3(0, 0, 1), DARK, 0.012).faces, DARK)
    )
    scene.add_track(morph_track(node.id, 6.0, frames))
    for role, vec, color in (
        ("r", triple.e_r, RED), ("theta", triple.e_theta, GREEN), ("phi", triple.e_phi, BLUE)
    ):
        scene.add_arrow(anchor, anchor + vec * 0.3, color, 0.01, role=role)

    ellipse = farfield.polarization(
        PhasorVec.from_array(e_c - 1j * e_s), triple.e_r, farfield.TOWARD_OBSERVER
    )
    return {
        "direction": {"theta_deg": p["theta_deg"], "phi_deg": p["phi_deg"]},
        "axial_ratio": ellipse.axial_ratio,
        "handedness": ellipse.handedness,
        "classification": ellipse.classification,
    }


def _build_crossed_dipoles(spec: ScenarioSpec, scene: Scene) -> dict:
    p = spec.params
    array = _crossed_pair(p)
    convention = p["convention"]
    rod = 0.18
    scene.add_polyline(Polyline([[0, 0, -rod], [0, 0, rod]], color=DARK))
    scene.add_polyline(Polyline([[0, -rod, 0], [0, rod, 0]], color=DARK))
    ring = coordinate_curve("phi_circle", r=1.2, theta=math.pi / 2, n=120)
    scene.add_polyline(ring, role="phi")

    marked = []
    for phi_deg in p["marked_phi_deg"]:
        d = _direction(90.0, phi_deg)
        e = farfield.array_farfield(array, d)
        dec = farfield.decompose(e)
        anchor = d * 1.2
        pts = _ellipse_points(dec.e_c.as_array(), dec.e_s.as_array(), 48) * 0.3 + anchor.as_array()
        scene.add_polyline(Polyline(pts, closed=True, color=DARK))
        ellipse = farfield.polarization(e, d, convention)
        label = (
            "linear"
            if ellipse.handedness == farfield.LINEAR
            else f"{ellipse.handedness} {ellipse.classification}"
        )
        scene.add_text(
            f"phi={phi_deg:g} deg: {label}", anchor + Vec3(0.0, 0.0, 0.45), DARK
        )
        marked.append(
            {
                "phi_deg": phi_deg,
                "axial_ratio": None if math.isinf(ellipse.axial_ratio) else ellipse.axial_ratio,
                "handedness": ellipse.handedness,
                "classification": ellipse.classification,
            }
        )

    # sweeping ellipse: observation azimuth runs one full turn
    n = spec.n_frames
    sweep_phis = np.linspace(0.0, 360.0, n)
    trace_frames, guide_frames = [], []
    for phi_deg in sweep_phis:
        d = _direction(90.0, float(phi_deg))
        e = farfield.array_farfield(array, d)
        dec = farfield.decompose(e)
        anchor_a = d.as_array() * 1.2
        trace_frames.append(
            _ellipse_points(dec.e_c.as_array(), dec.e_s.as_array(), 48) * 0.3 + anchor_a
        )
        guide_frames.append(np.array([[0.0, 0.0, 0.0], anchor_a]))
    sweeper = scene.add_polyline(
        Polyline(trace_frames[0], closed=True, color=Color(0.8, 0.1, 0.1))
    )
    guide = scene.add_polyline(Polyline(guide_frames[0], color=Color(0.8, 0.1, 0.1)))
    scene.add_track(morph_track(sweeper.id, 12.0, trace_frames))
    scene.add_track(morph_track(guide.id, 12.0, guide_frames))
    return {"convention": convention, "marked": marked}


def _fig7_array(p: dict) -> AntennaArray:
    axis = Vec3(*p["element_axis"]).normalized()
    spacing_axis = Vec3(*p["spacing_axis"]).normalized()
    half = spacing_axis * (p["spacing_wl"] / 2.0)
    dphase = math.radians(p["phase_diff_deg"])
    return AntennaArray(
        (
            DipoleElement(-1.0 * half, axis, "sinusoidal", p["length_wl"], phase=0.0),
            DipoleElement(half, axis, "sinusoidal", p["length_wl"], phase=dphase),
        )
    )


def _add_cut_polylines(scene: Scene, cuts, mapping: str) -> list[SceneNode]:
    nodes = []
    for cut in cuts:
        radii = np.sqrt(cut.values) if mapping == "field" else cut.values
        dirs = patterns.cut_directions(cut.plane, len(cut.angles))
        pts = radii[:, None] * dirs
        nodes.append(
            scene.add_polyline(Polyline(pts, closed=True, color=cut.color), role=cut.plane)
        )
    return nodes


def _build_two_dipole_array(spec: ScenarioSpec, scene: Scene) -> dict:
    p = spec.params
    array = _fig7_array(p)
    grid = patterns.SphericalGrid(p["grid"][0], p["grid"][1])
    pg = patterns.pattern_grid(array, grid)
    mesh, vertex_values = patterns.pattern_surface_with_values(pg, p["mapping"])
    cuts = patterns.main_plane_cuts(array)

    pattern_node = scene.add_mesh(mesh, opacity=0.92)
    cut_nodes = _add_cut_polylines(scene, cuts, p["mapping"])
    rod_nodes = []
    display = 0.25  # dipole rods drawn shorter than 2.4 wavelengths
    for el in array.elements:
        a, c = el.axis, el.center
        rod = Polyline(
            [(c - a * display).as_tuple(), (c + a * display).as_tuple()], color=DARK
        )
        rod_nodes.append(scene.add_polyline(rod))
    for node in [pattern_node, *cut_nodes, *rod_nodes]:
        scene.add_track(spin_track(node.id, Z_AXIS, 10.0))

    return {
        "elements": [
            {
                "center": list(el.center.as_tuple()),
                "axis": list(el.axis.as_tuple()),
                "length_wl": el.length,
                "phase_deg": math.degrees(el.phase),
            }
            for el in array.elements
        ],
        "grid": [grid.n_theta, grid.n_phi],
        "pattern_max": float(pg.values.max()),
        "mesh_vertices": len(mesh.vertices),
        "vertex_values_max": float(vertex_values.max()),
        "cuts": [
            {
                "plane": c.plane,
                "angles_deg": np.degrees(c.angles),
                "values": c.values,
            }
            for c in cuts
        ],
        "_svg_cuts": cuts,
    }


def _absorber_wall(origin: np.ndarray, du: np.ndarray, dv: np.ndarray, normal: np.ndarray,
                   count: int, height: float) -> SurfaceMesh:
    """Grid of absorber pyramids covering the quad origin + [0,1]du + [0,1]dv."""
    verts, faces = [], []
    for i in range(count):
        for j in range(count):
            base = origin + du * (i / count) + dv * (j / count)
            su, sv = du / count, dv / count
            corners = [base, base + su, base + su + sv, base + sv]
            apex = base + 0.5 * su + 0.5 * sv + normal * height
            k = len(verts)
            verts.extend(corners + [apex])
            faces.extend([(k, k + 1, k + 4), (k + 1, k + 2, k + 4),
                          (k + 2, k + 3, k + 4), (k + 3, k, k + 4)])
    return SurfaceMesh(np.asarray(verts), np.asarray(faces, dtype=np.int32), Color(0.1, 0.12, 0.35))


def _build_anechoic_sweep(spec: ScenarioSpec, scene: Scene) -> dict:
    p = spec.params
    aut = AntennaArray(
        (DipoleElement(ORIGIN, Z_AXIS, "sinusoidal", p["length_wl"]),)
    )
    trace = patterns.measurement_sweep(aut, X_AXIS, Y_AXIS, p["n_steps"])

    # chamber shell: floor plus two back walls lined with pyramidal absorbers
    scene.add_mesh(_absorber_wall(
        np.array([-1.6, -1.6, 0.0]), np.array([3.2, 0.0, 0.0]), np.array([0.0, 3.2, 0.0]),
        np.array([0.0, 0.0, 1.0]), 8, 0.12,
    ))
    scene.add_mesh(_absorber_wall(
        np.array([-1.6, 1.6, 0.0]), np.array([3.2, 0.0, 0.0]), np.array([0.0, 0.0, 2.0]),
        np.array([0.0, -1.0, 0.0]), 8, 0.12,
    ))
    scene.add_mesh(_absorber_wall(
        np.array([-1.6, -1.6, 0.0]), np.array([0.0, 3.2, 0.0]), np.array([0.0, 0.0, 2.0]),
        np.array([1.0, 0.0, 0.0]), 8, 0.12,
    ))

    # antenna under test: discone placeholder on a mast at chamber center
    mast_top = Vec3(0.0, 0.0, 0.9)
    scene.add_polyline(Polyline([[0, 0, 0.12], mast_top.as_tuple()], color=GRAY))
    disc = coordinate_surface_mesh(
        "cone", math.radians(89.0), r_range=(0.02, 0.3), resolution=(2, 24)
    )
    cone = coordinate_surface_mesh(
        "cone", math.radians(150.0), r_range=(0.0, 0.45), resolution=(4, 24)
    )
    up = mast_top.as_array()
    disc_node = scene.add_mesh(
        SurfaceMesh(disc.vertices + up + [0, 0, 0.04], disc.faces, LIGHT_GRAY)
    )
    cone_node = scene.add_mesh(SurfaceMesh(cone.vertices + up, cone.faces, LIGHT_GRAY))
    for node in (disc_node, cone_node):
        scene.add_track(spin_track(node.id, X_AXIS, 12.0))

    # receiving dipole on the +y side, and the growing measured trace
    recv = Vec3(0.0, 1.45, 0.9)
    scene.add_polyline(
        Polyline([(recv + Vec3(0, 0, -0.15)).as_tuple(), (recv + Vec3(0, 0, 0.15)).as_tuple()],
                 color=DARK)
    )
    pts = trace.polar_points() * 0.5
    display_offset = np.array([0.0, 0.0, 0.9])
    frames = []
    for k in range(p["n_steps"]):
        frame = pts.copy()
        frame[k + 1 :] = pts[k]
        frames.append(frame + display_offset)
    trace_node = scene.add_polyline(Polyline(frames[0], color=Color(0.8, 0.1, 0.1)))
    scene.add_track(morph_track(trace_node.id, 12.0, frames))

    return {
        "rotation_axis": list(trace.rotation_axis.as_tuple()),
        "receiver_direction": list(trace.receiver_direction.as_tuple()),
        "angles_deg": np.degrees(trace.angles),
        "values": trace.values,
        "_svg_cuts": [patterns.PlaneCut("yoz", trace.angles, trace.values, GREEN)],
    }


def _build_explorer_default(spec: ScenarioSpec, scene: Scene) -> dict:
    p = spec.params
    axis = _direction(p["theta_deg"], p["phi_deg"])
    length = p["length_wl"]
    array = AntennaArray((DipoleElement(ORIGIN, axis, "sinusoidal", length),))
    grid = patterns.SphericalGrid(p["grid"][0], p["grid"][1])
    pg = patterns.pattern_grid(array, grid)
    mesh = patterns.pattern_surface(pg, p["mapping"])
    cuts = patterns.main_plane_cuts(array)

    pattern_node = scene.add_mesh(mesh, opacity=p["opacity"])
    cut_nodes = _add_cut_polylines(scene, cuts, p["mapping"])
    rod = scene.add_polyline(
        Polyline([(axis * -0.4).as_tuple(), (axis * 0.4).as_tuple()], color=DARK)
    )

    # three independent animations: field phase, length morph, scene spin
    broadside = Y_AXIS if abs(axis.dot(Z_AXIS)) > 0.9 else Z_AXIS
    side = axis.cross(broadside).normalized()
    probe = side * 1.15
    # broadside field is parallel to the dipole axis
    phase_arrow = scene.add_arrow(probe, probe + axis * 0.3, DARK, 0.012)
    scene.add_track(spin_track(phase_arrow.id, axis, 4.0))

    lengths = [0.1 + 0.1 * k for k in range(9)] + [0.9 - 0.1 * k for k in range(1, 8)]
    morph_frames = []
    for lw in lengths:
        a = AntennaArray((DipoleElement(ORIGIN, axis, "sinusoidal", lw),))
        morph_frames.append(
            patterns.pattern_surface(patterns.pattern_grid(a, grid), p["mapping"]).vertices
        )
    scene.add_track(morph_track(pattern_node.id, 6.0, morph_frames))
    for node in [pattern_node, *cut_nodes, rod]:
        scene.add_track(spin_track(node.id, Z_AXIS, 10.0))

    data = {
        "theta_deg": p["theta_deg"],
        "phi_deg": p["phi_deg"],
        "length_wl": length,
        "directivity": patterns.directivity(array),
        "track_periods_s": [4.0, 6.0, 10.0],
        "_svg_cuts": cuts,
    }
    try:
        data["r_in_ohm"] = patterns.input_radiation_resistance(length)
    except patterns.AntiResonantLength:
        data["anti_resonant"] = True
    return data


def _build_characteristics(spec: ScenarioSpec, scene: Scene) -> dict:
    p = spec.params
    rows = patterns.characteristics_sweep(p["l_min"], p["l_max"], p["steps"])
    n = len(rows)
    panel_grid = patterns.SphericalGrid(25, 36)

    offsets = {
        "cut": Vec3(-1.3, 0.0, 1.3),
        "pattern": Vec3(1.3, 0.0, 1.3),
        "d_bar": Vec3(-1.3, 0.0, -1.3),
        "r_bar": Vec3(1.3, 0.0, -1.3),
    }
    labels = {
        "cut": "zox cut", "pattern": "pattern",
        "d_bar": "D (0..4)", "r_bar": "Rin (0..500 ohm)",
    }
    for key, off in offsets.items():
        scene.add_text(labels[key], off + Vec3(-0.4, 0.0, 1.05), DARK)

    cut_frames, mesh_frames, d_frames, r_frames = [], [], [], []
    panel_faces = None
    for row in rows:
        radii = np.sqrt(row.cut.values)
        dirs = patterns.cut_directions("zox", len(row.cut.angles))
        cut_frames.append(radii[:, None] * dirs + offsets["cut"].as_array())

        dipole = AntennaArray((DipoleElement(ORIGIN, Z_AXIS, "sinusoidal", row.length),))
        panel = patterns.pattern_surface(patterns.pattern_grid(dipole, panel_grid))
        if panel_faces is None:
            panel_faces = panel.faces
        mesh_frames.append(panel.vertices + offsets["pattern"].as_array())
        d_height = row.directivity / 4.0
        base = offsets["d_bar"].as_array()
        d_frames.append(np.array([base, base + [0.0, 0.0, d_height]]))
        r_height = 0.0 if row.r_in is None else min(row.r_in, 500.0) / 500.0
        base = offsets["r_bar"].as_array()
        r_frames.append(np.array([base, base + [0.0, 0.0, r_height]]))

    cut_node = scene.add_polyline(Polyline(cut_frames[0], closed=True, color=BLUE), role="zox")
    mesh_node = scene.add_mesh(
        SurfaceMesh(mesh_frames[0], panel_faces, GOLD), opacity=0.95
    )
    d_node = scene.add_polyline(Polyline(d_frames[0], color=Color(0.0, 0.0, 0.9)))
    r_node = scene.add_polyline(Polyline(r_frames[0], color=Color(0.8, 0.1, 0.1)))
    for node, frames in (
        (cut_node, cut_frames), (mesh_node, mesh_frames),
        (d_node, d_frames), (r_node, r_frames),
    ):
        scene.add_track(morph_track(node.id, 20.0, frames))

    return {
        "rows": [
            {
                "length_wl": row.length,
                "theta_max_deg": row.theta_max_deg,
                "directivity": row.directivity,
                "r_in_ohm": row.r_in,
                "anti_resonant": row.anti_resonant,
            }
            for row in rows
        ],
        "_svg_cuts": [rows[-1].cut],
    }


_BUILDERS = {
    "waves_line": _build_waves_line,
    "standing_phasor": _build_standing_phasor,
    "volume_element": _build_volume_element,
    "unit_triples": _build_unit_triples,
    "scs_composite": _build_scs_composite,
    "sphere_cone_sweep": _build_sphere_cone_sweep,
    "polarization_triptych": _build_polarization_triptych,
    "field_decomposition": _build_field_decomposition,
    "ellipse_trace": _build_ellipse_trace,
    "farfield_ellipse": _build_farfield_ellipse,
    "crossed_dipoles": _build_crossed_dipoles,
    "two_dipole_array": _build_two_dipole_array,
    "anechoic_sweep": _build_anechoic_sweep,
    "explorer_default": _build_explorer_default,
    "characteristics": _build_characteristics,
}


def build(spec: ScenarioSpec) -> BuildResult:
    """Deterministically build the scene and data products for one spec."""
    if spec.kind not in _BUILDERS:
        raise ConfigError(f"unknown kind {spec.kind!r}")
    scene = _base_scene(spec)
    data = _BUILDERS[spec.kind](spec, scene)
    cuts = data.pop("_svg_cuts", None)
    scene.validate()
    return BuildResult(spec, scene, data, cuts)
