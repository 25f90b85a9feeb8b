"""Cartesian/spherical coordinate geometry.

All lengths are in wavelengths and all angles are radians internally;
degrees appear only at external interfaces (CLI, JSON configs, HTTP API).
The color convention follows the (R, G, B) <-> (first, second, third)
coordinate correspondence: (x, y, z) axes, (r, theta, phi) curves and
(sphere, cone, semiplane) surfaces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * math.pi

# Below this sin(theta) the spherical unit triple is singular (z-axis).
AXIS_EPS = 1e-12


@dataclass(frozen=True)
class Color:
    r: float
    g: float
    b: float

    def __post_init__(self):
        for c in (self.r, self.g, self.b):
            if not 0.0 <= c <= 1.0:
                raise ValueError(f"color component {c} outside [0, 1]")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.r, self.g, self.b)

    def hex(self) -> str:
        return "#%02X%02X%02X" % tuple(round(c * 255) for c in self.as_tuple())


RED = Color(1.0, 0.0, 0.0)
GREEN = Color(0.0, 1.0, 0.0)
BLUE = Color(0.0, 0.0, 1.0)


@dataclass(frozen=True)
class Vec3:
    x: float
    y: float
    z: float

    def __post_init__(self):
        if not all(math.isfinite(c) for c in (self.x, self.y, self.z)):
            raise ValueError("Vec3 components must be finite")

    @staticmethod
    def from_array(a) -> "Vec3":
        return Vec3(float(a[0]), float(a[1]), float(a[2]))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)

    def __add__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __mul__(self, s: float) -> "Vec3":
        return Vec3(self.x * s, self.y * s, self.z * s)

    __rmul__ = __mul__

    def __neg__(self) -> "Vec3":
        return Vec3(-self.x, -self.y, -self.z)

    def dot(self, other: "Vec3") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def cross(self, other: "Vec3") -> "Vec3":
        return Vec3(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )

    def norm(self) -> float:
        return math.sqrt(self.dot(self))

    def normalized(self) -> "Vec3":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize zero vector")
        return Vec3(self.x / n, self.y / n, self.z / n)


ORIGIN = Vec3(0.0, 0.0, 0.0)
X_AXIS = Vec3(1.0, 0.0, 0.0)
Y_AXIS = Vec3(0.0, 1.0, 0.0)
Z_AXIS = Vec3(0.0, 0.0, 1.0)


def _wrap_phi(phi: float) -> float:
    phi = math.fmod(phi, TWO_PI)
    if phi < 0.0:
        phi += TWO_PI
    # fmod can land exactly on 2*pi after the correction above
    if phi >= TWO_PI:
        phi = 0.0
    return phi


@dataclass(frozen=True)
class SphericalPoint:
    """Point (r, theta, phi): radius, angle from +z, azimuth from +x.

    theta and phi are canonicalized on construction so that
    theta in [0, pi] and phi in [0, 2*pi).
    """

    r: float
    theta: float
    phi: float

    def __post_init__(self):
        if not (math.isfinite(self.r) and self.r >= 0.0):
            raise ValueError(f"radius must be finite and >= 0, got {self.r}")
        theta = math.fmod(self.theta, TWO_PI)
        if theta < 0.0:
            theta += TWO_PI
        phi = self.phi
        if theta > math.pi:
            theta = TWO_PI - theta
            phi = phi + math.pi
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", _wrap_phi(phi))

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.r, self.theta, self.phi)


def scs_to_ccs(p: SphericalPoint) -> Vec3:
    """Spherical (r, theta, phi) to Cartesian (x, y, z)."""
    st = math.sin(p.theta)
    return Vec3(
        p.r * st * math.cos(p.phi),
        p.r * st * math.sin(p.phi),
        p.r * math.cos(p.theta),
    )


def ccs_to_scs(v: Vec3) -> SphericalPoint:
    """Cartesian to spherical; on the z-axis phi := 0, at the origin theta := 0."""
    r = v.norm()
    if r == 0.0:
        return SphericalPoint(0.0, 0.0, 0.0)
    theta = math.acos(max(-1.0, min(1.0, v.z / r)))
    if math.hypot(v.x, v.y) == 0.0:
        return SphericalPoint(r, theta, 0.0)
    phi = _wrap_phi(math.atan2(v.y, v.x))
    return SphericalPoint(r, theta, phi)


@dataclass(frozen=True)
class UnitTriple:
    """Orthonormal right-handed (e_r, e_theta, e_phi) at a direction.

    On the z-axis the transformation is singular: the triple carries
    defined=False instead of NaN components.
    """

    direction: SphericalPoint
    e_r: Vec3
    e_theta: Vec3
    e_phi: Vec3
    defined: bool


def unit_triple(theta: float, phi: float) -> UnitTriple:
    st, ct = math.sin(theta), math.cos(theta)
    sp, cp = math.sin(phi), math.cos(phi)
    direction = SphericalPoint(1.0, theta, phi)
    e_r = Vec3(st * cp, st * sp, ct)
    e_theta = Vec3(ct * cp, ct * sp, -st)
    e_phi = Vec3(-sp, cp, 0.0)
    return UnitTriple(direction, e_r, e_theta, e_phi, defined=abs(st) >= AXIS_EPS)


def main_plane_directions(step: float) -> list[tuple[float, float]]:
    """(theta, phi) union of the three main-plane great circles at `step` rad."""
    n = round(TWO_PI / step)
    dirs: list[tuple[float, float]] = []
    seen: set[tuple[float, float, float]] = set()

    def push(v: Vec3):
        key = (round(v.x, 9), round(v.y, 9), round(v.z, 9))
        if key in seen:
            return
        seen.add(key)
        p = ccs_to_scs(v)
        dirs.append((p.theta, p.phi))

    for k in range(n):  # xoy plane
        a = k * step
        push(Vec3(math.cos(a), math.sin(a), 0.0))
    for k in range(n):  # yoz plane, angle from +z toward +y
        a = k * step
        push(Vec3(0.0, math.sin(a), math.cos(a)))
    for k in range(n):  # zox plane, angle from +z toward +x
        a = k * step
        push(Vec3(math.sin(a), 0.0, math.cos(a)))
    return dirs


def standard_triples(directions: list[tuple[float, float]] | None = None) -> list[UnitTriple]:
    """Unit triples at the given (theta, phi) directions.

    Default set: the three main-plane great circles sampled at 45 degree
    steps and deduplicated (16 defined directions plus the two undefined
    ones on the z-axis).
    """
    if directions is None:
        directions = main_plane_directions(math.pi / 4.0)
    return [unit_triple(t, p) for t, p in directions]


@dataclass
class SurfaceMesh:
    """Triangle mesh; vertices (n, 3) float array, faces (m, 3) index array."""

    vertices: np.ndarray
    faces: np.ndarray
    color: Color = field(default_factory=lambda: Color(0.7, 0.7, 0.7))

    def __post_init__(self):
        self.vertices = np.asarray(self.vertices, dtype=float).reshape(-1, 3)
        self.faces = np.asarray(self.faces, dtype=np.int32).reshape(-1, 3)

    def validate(self):
        if not np.all(np.isfinite(self.vertices)):
            raise ValueError("mesh has non-finite vertices")
        if self.faces.size:
            if self.faces.min() < 0 or self.faces.max() >= len(self.vertices):
                raise ValueError("face index out of range")
            if np.any(face_areas(self.vertices, self.faces) <= 0.0):
                raise ValueError("mesh has degenerate faces")
        return self

    def transformed(self, matrix: np.ndarray, offset: Vec3 = ORIGIN) -> "SurfaceMesh":
        verts = self.vertices @ np.asarray(matrix).T + offset.as_array()
        return SurfaceMesh(verts, self.faces.copy(), self.color)


@dataclass
class Polyline:
    points: np.ndarray
    closed: bool = False
    color: Color = field(default_factory=lambda: Color(0.0, 0.0, 0.0))

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float).reshape(-1, 3)
        if len(self.points) < 2:
            raise ValueError("polyline needs at least 2 points")

    def transformed(self, matrix: np.ndarray, offset: Vec3 = ORIGIN) -> "Polyline":
        pts = self.points @ np.asarray(matrix).T + offset.as_array()
        return Polyline(pts, self.closed, self.color)


def face_areas(vertices: np.ndarray, faces: np.ndarray) -> np.ndarray:
    a = vertices[faces[:, 0]]
    b = vertices[faces[:, 1]]
    c = vertices[faces[:, 2]]
    return 0.5 * np.linalg.norm(np.cross(b - a, c - a), axis=1)


def _grid_faces(nu: int, nv: int) -> np.ndarray:
    """Two triangles per cell of a (nu+1) x (nv+1) vertex grid (row-major)."""
    i, j = np.meshgrid(np.arange(nu), np.arange(nv), indexing="ij")
    v00 = (i * (nv + 1) + j).ravel()
    v01 = v00 + 1
    v10 = v00 + (nv + 1)
    v11 = v10 + 1
    tri1 = np.stack([v00, v10, v11], axis=1)
    tri2 = np.stack([v00, v11, v01], axis=1)
    return np.concatenate([tri1, tri2]).astype(np.int32)


def _drop_degenerate(vertices: np.ndarray, faces: np.ndarray, scale: float) -> np.ndarray:
    if not len(faces):
        return faces
    areas = face_areas(vertices, faces)
    return faces[areas > 1e-12 * scale * scale]


# Default tessellation (segments) per surface kind.
SPHERE_RESOLUTION = (18, 36)
CONE_RESOLUTION = (12, 36)
SEMIPLANE_RESOLUTION = (12, 12)


def coordinate_surface_mesh(
    kind: str,
    param: float,
    theta_range: tuple[float, float] | None = None,
    phi_range: tuple[float, float] | None = None,
    r_range: tuple[float, float] | None = None,
    resolution: tuple[int, int] | None = None,
    cutout: tuple[float, float] | None = None,
) -> SurfaceMesh:
    """Mesh one SCS coordinate surface.

    kind "sphere": r = param, grid over theta_range x phi_range.
    kind "cone": theta = param (in (0, pi)), grid over r_range x phi_range.
    kind "semiplane": phi = param, grid over r_range x theta_range.

    cutout is a phi interval; faces whose parametric phi midpoint falls
    strictly inside it are removed (used for cut-open spheres).
    Colors follow the surface convention: sphere R, cone G, semiplane B.
    """
    theta_range = theta_range or (0.0, math.pi)
    phi_range = phi_range or (0.0, TWO_PI)
    r_range = r_range or (0.0, 1.0)

    if kind == "sphere":
        if param <= 0.0:
            raise ValueError("sphere radius must be > 0")
        nu, nv = resolution or SPHERE_RESOLUTION
        u = np.linspace(theta_range[0], theta_range[1], nu + 1)
        v = np.linspace(phi_range[0], phi_range[1], nv + 1)
        uu, vv = np.meshgrid(u, v, indexing="ij")
        x = param * np.sin(uu) * np.cos(vv)
        y = param * np.sin(uu) * np.sin(vv)
        z = param * np.cos(uu) * np.ones_like(vv)
        phi_param = vv
        color, scale = RED, param
    elif kind == "cone":
        if not 0.0 < param < math.pi:
            raise ValueError("cone half-angle must be in (0, pi)")
        nu, nv = resolution or CONE_RESOLUTION
        u = np.linspace(r_range[0], r_range[1], nu + 1)
        v = np.linspace(phi_range[0], phi_range[1], nv + 1)
        uu, vv = np.meshgrid(u, v, indexing="ij")
        x = uu * math.sin(param) * np.cos(vv)
        y = uu * math.sin(param) * np.sin(vv)
        z = uu * math.cos(param) * np.ones_like(vv)
        phi_param = vv
        color, scale = GREEN, max(abs(r_range[0]), abs(r_range[1]))
    elif kind == "semiplane":
        nu, nv = resolution or SEMIPLANE_RESOLUTION
        u = np.linspace(r_range[0], r_range[1], nu + 1)
        v = np.linspace(theta_range[0], theta_range[1], nv + 1)
        uu, vv = np.meshgrid(u, v, indexing="ij")
        x = uu * np.sin(vv) * math.cos(param)
        y = uu * np.sin(vv) * math.sin(param)
        z = uu * np.cos(vv)
        phi_param = np.full_like(uu, _wrap_phi(param))
        color, scale = BLUE, max(abs(r_range[0]), abs(r_range[1]))
    else:
        raise ValueError(f"unknown surface kind {kind!r}")

    vertices = np.stack([x.ravel(), y.ravel(), z.ravel()], axis=1)
    faces = _grid_faces(nu, nv)
    faces = _drop_degenerate(vertices, faces, scale or 1.0)
    if cutout is not None:
        mid = phi_param.ravel()[faces].mean(axis=1)
        lo, hi = cutout
        faces = faces[~((mid > lo) & (mid < hi))]
    if not len(faces):
        raise ValueError("degenerate surface")
    return SurfaceMesh(vertices, faces, color).validate()


def coordinate_curve(
    kind: str,
    *,
    r: float = 1.0,
    theta: float | None = None,
    phi: float | None = None,
    r_max: float = 1.0,
    n: int = 64,
) -> Polyline:
    """Sample one SCS coordinate curve.

    kind "phi_circle": circle of radius r*sin(theta) at height r*cos(theta).
    kind "meridian": half circle of radius r in the plane phi = const.
    kind "ray": straight segment from the origin along (theta, phi).
    Colors follow the curve convention: ray R, meridian G, circle B.
    """
    if n < 2:
        raise ValueError("need n >= 2 samples")
    if kind == "phi_circle":
        if theta is None:
            raise ValueError("phi_circle needs theta")
        a = np.linspace(0.0, TWO_PI, n, endpoint=False)
        rho = r * math.sin(theta)
        pts = np.stack(
            [rho * np.cos(a), rho * np.sin(a), np.full(n, r * math.cos(theta))], axis=1
        )
        return Polyline(pts, closed=True, color=BLUE)
    if kind == "meridian":
        if phi is None:
            raise ValueError("meridian needs phi")
        t = np.linspace(0.0, math.pi, n)
        pts = np.stack(
            [
                r * np.sin(t) * math.cos(phi),
                r * np.sin(t) * math.sin(phi),
                r * np.cos(t),
            ],
            axis=1,
        )
        return Polyline(pts, closed=False, color=GREEN)
    if kind == "ray":
        if theta is None or phi is None:
            raise ValueError("ray needs theta and phi")
        d = scs_to_ccs(SphericalPoint(1.0, theta, phi)).as_array()
        s = np.linspace(0.0, r_max, n)
        return Polyline(s[:, None] * d[None, :], closed=False, color=RED)
    raise ValueError(f"unknown curve kind {kind!r}")


# Defaults place the element between the 1st and 2nd octant (phi spans 90 deg).
VOLUME_ELEMENT_DEFAULTS = dict(
    r0=1.0, dr=0.3, theta0=math.radians(40.0), dtheta=math.radians(30.0),
    phi0=math.radians(75.0), dphi=math.radians(30.0),
)


def volume_element(
    r0: float,
    dr: float,
    theta0: float,
    dtheta: float,
    phi0: float,
    dphi: float,
    resolution: tuple[int, int, int] = (4, 8, 8),
) -> list[SurfaceMesh]:
    """The six faces of the SCS difference volume element.

    Returns [inner sphere, outer sphere, lower cone, upper cone,
    start semiplane, end semiplane]. Faces sampled with matching counts
    (n_r, n_theta, n_phi) so adjacent patches share boundary vertices.
    """
    if dr <= 0.0 or dtheta <= 0.0 or dphi <= 0.0:
        raise ValueError("dr, dtheta, dphi must be > 0")
    n_r, n_t, n_p = resolution
    t_range = (theta0, theta0 + dtheta)
    p_range = (phi0, phi0 + dphi)
    rr = (r0, r0 + dr)
    return [
        coordinate_surface_mesh("sphere", r0, t_range, p_range, resolution=(n_t, n_p)),
        coordinate_surface_mesh("sphere", r0 + dr, t_range, p_range, resolution=(n_t, n_p)),
        coordinate_surface_mesh("cone", theta0, phi_range=p_range, r_range=rr, resolution=(n_r, n_p)),
        coordinate_surface_mesh("cone", theta0 + dtheta, phi_range=p_range, r_range=rr, resolution=(n_r, n_p)),
        coordinate_surface_mesh("semiplane", phi0, theta_range=t_range, r_range=rr, resolution=(n_r, n_t)),
        coordinate_surface_mesh("semiplane", phi0 + dphi, theta_range=t_range, r_range=rr, resolution=(n_r, n_t)),
    ]


def sphere_cone_intersection(r: float, theta: float, n: int = 64) -> Polyline:
    """Circle where the r-sphere meets the theta-cone.

    Center (0, 0, r*cos(theta)), radius r*sin(theta); at theta 0 or pi the
    circle degenerates to the pole point (all samples coincide).
    """
    if r <= 0.0:
        raise ValueError("radius must be > 0")
    a = np.linspace(0.0, TWO_PI, n, endpoint=False)
    rho = r * math.sin(theta)
    pts = np.stack(
        [rho * np.cos(a), rho * np.sin(a), np.full(n, r * math.cos(theta))], axis=1
    )
    return Polyline(pts, closed=True, color=BLUE)


def rotation_about_axis(axis: Vec3, angle: float) -> np.ndarray:
    """Rodrigues rotation matrix for a unit axis."""
    u = axis.normalized().as_array()
    c, s = math.cos(angle), math.sin(angle)
    ux = np.array([[0, -u[2], u[1]], [u[2], 0, -u[0]], [-u[1], u[0], 0]])
    return c * np.eye(3) + s * ux + (1 - c) * np.outer(u, u)
