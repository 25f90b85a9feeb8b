"""Radiation patterns, plane cuts, directivity and radiation resistance.

Intensity is the squared far-field magnitude in relative units; grids and
cuts are normalized so the presented maximum is exactly 1. Directivity uses
composite Simpson quadrature in theta and the periodic trapezoid rule in
phi; both are spectrally accurate for these smooth integrands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .farfield import AntennaArray, DipoleElement, farfield_at, pattern_factor
from .geometry import (
    BLUE,
    GREEN,
    ORIGIN,
    RED,
    Z_AXIS,
    Color,
    SurfaceMesh,
    Vec3,
    rotation_about_axis,
)

ETA = 120.0 * math.pi  # free-space impedance, ohm

# Intensity floor treated as "no radiation at all".
DEGENERATE_EPS = 1e-300


@dataclass(frozen=True)
class SphericalGrid:
    """Inclusive theta rows 0..pi, periodic phi columns."""

    n_theta: int
    n_phi: int

    def __post_init__(self):
        if self.n_theta < 2 or self.n_phi < 2:
            raise ValueError("grid needs n_theta, n_phi >= 2")

    def theta_values(self) -> np.ndarray:
        return np.linspace(0.0, math.pi, self.n_theta)

    def phi_values(self) -> np.ndarray:
        return np.arange(self.n_phi) * (2.0 * math.pi / self.n_phi)

    def directions(self) -> np.ndarray:
        """Unit direction per (i, j), shape (n_theta, n_phi, 3)."""
        tt, pp = np.meshgrid(self.theta_values(), self.phi_values(), indexing="ij")
        return np.stack(
            [np.sin(tt) * np.cos(pp), np.sin(tt) * np.sin(pp), np.cos(tt)], axis=-1
        )


@dataclass
class PatternGrid:
    grid: SphericalGrid
    values: np.ndarray  # (n_theta, n_phi), max exactly 1

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)


@dataclass
class PlaneCut:
    plane: str  # xoy | yoz | zox
    angles: np.ndarray
    values: np.ndarray
    color: Color


# Cut angle alpha runs from the first axis of the plane name toward the second.
CUT_COLORS = {"xoy": RED, "yoz": GREEN, "zox": BLUE}


def cut_directions(plane: str, n: int) -> np.ndarray:
    a = np.arange(n) * (2.0 * math.pi / n)
    zeros = np.zeros(n)
    if plane == "xoy":
        return np.stack([np.cos(a), np.sin(a), zeros], axis=1)
    if plane == "yoz":
        return np.stack([zeros, np.cos(a), np.sin(a)], axis=1)
    if plane == "zox":
        return np.stack([np.sin(a), zeros, np.cos(a)], axis=1)
    raise ValueError(f"unknown plane {plane!r}")


def intensity_at(array: AntennaArray, directions: np.ndarray) -> np.ndarray:
    e = farfield_at(array, directions)
    return np.sum(np.abs(e) ** 2, axis=-1)


def radiated_intensity(array: AntennaArray, direction: Vec3) -> float:
    """Relative radiated intensity |E|^2 in a unit direction."""
    d = direction.as_array()
    if abs(np.linalg.norm(d) - 1.0) > 1e-9:
        raise ValueError("direction must be a unit vector")
    return float(intensity_at(array, d))


def pattern_grid(array: AntennaArray, grid: SphericalGrid) -> PatternGrid:
    """Normalized intensity samples over the grid (max exactly 1)."""
    values = intensity_at(array, grid.directions())
    peak = values.max()
    if peak <= DEGENERATE_EPS:
        raise ValueError("degenerate pattern")
    return PatternGrid(grid, values / peak)


def pattern_surface_with_values(
    pg: PatternGrid, mapping: str = "field"
) -> tuple[SurfaceMesh, np.ndarray]:
    """Radial pattern surface plus the normalized value carried per vertex.

    Vertex 0 is the welded north pole, rows i = 1 .. n_theta-2 follow in
    phi order, and the last vertex is the south pole; the phi seam is
    closed. Faces that collapse at exact pattern nulls are dropped.
    """
    if mapping == "field":
        radii = np.sqrt(pg.values)
    elif mapping == "power":
        radii = pg.values.copy()
    else:
        raise ValueError(f"unknown mapping {mapping!r}")
    grid = pg.grid
    n_t, n_p = grid.n_theta, grid.n_phi
    dirs = grid.directions()

    vertices = np.vstack(
        [
            dirs[0, 0] * radii[0, 0],
            (dirs[1:-1] * radii[1:-1, :, None]).reshape(-1, 3),
            dirs[n_t - 1, 0] * radii[n_t - 1, 0],
        ]
    )
    vertex_values = np.concatenate(
        [[pg.values[0, 0]], pg.values[1:-1].ravel(), [pg.values[n_t - 1, 0]]]
    )
    index = np.empty((n_t, n_p), dtype=np.int32)
    index[0, :] = 0
    index[1:-1, :] = 1 + np.arange((n_t - 2) * n_p, dtype=np.int32).reshape(n_t - 2, n_p)
    index[n_t - 1, :] = len(vertices) - 1

    j = np.arange(n_p)
    jn = (j + 1) % n_p
    # north fan, quad band (two triangles per cell, row-major), south fan
    interleaved = [np.stack([index[0, j], index[1, j], index[1, jn]], axis=1)]
    for i in range(1, n_t - 2):
        tri1 = np.stack([index[i, j], index[i + 1, j], index[i + 1, jn]], axis=1)
        tri2 = np.stack([index[i, j], index[i + 1, jn], index[i, jn]], axis=1)
        interleaved.append(np.stack([tri1, tri2], axis=1).reshape(-1, 3))
    if n_t > 2:
        interleaved.append(
            np.stack([index[n_t - 2, j], index[n_t - 1, j], index[n_t - 2, jn]], axis=1)
        )
    faces_arr = np.vstack(interleaved).astype(np.int32)

    areas = 0.5 * np.linalg.norm(
        np.cross(
            vertices[faces_arr[:, 1]] - vertices[faces_arr[:, 0]],
            vertices[faces_arr[:, 2]] - vertices[faces_arr[:, 0]],
        ),
        axis=1,
    )
    mesh = SurfaceMesh(vertices, faces_arr[areas > 1e-14], Color(0.85, 0.65, 0.1))
    return mesh.validate(), vertex_values


def pattern_surface(pg: PatternGrid, mapping: str = "field") -> SurfaceMesh:
    """Radial surface of the pattern: radius sqrt(value) (field) or value (power)."""
    return pattern_surface_with_values(pg, mapping)[0]


def _refine_peak(array: AntennaArray, theta0: float, phi0: float, step: float) -> float:
    """Deterministic coordinate-wise parabolic ascent from a grid maximum."""

    def u(theta, phi):
        d = np.array(
            [
                math.sin(theta) * math.cos(phi),
                math.sin(theta) * math.sin(phi),
                math.cos(theta),
            ]
        )
        return float(intensity_at(array, d))

    t, p = theta0, phi0
    best = u(t, p)
    h = step
    for _ in range(12):
        for coord in ("theta", "phi"):
            if coord == "theta":
                f = lambda x: u(x, p)
                x0 = t
            else:
                f = lambda x: u(t, x)
                x0 = p
            fm, f0, fp = f(x0 - h), f(x0), f(x0 + h)
            denom = fm - 2.0 * f0 + fp
            if abs(denom) > 0.0:
                dx = 0.5 * h * (fm - fp) / denom
                dx = max(-h, min(h, dx))
                x1 = x0 + dx
                f1 = f(x1)
                if f1 > f0:
                    if coord == "theta":
                        t = min(math.pi, max(0.0, x1))
                    else:
                        p = x1
        best = max(best, u(t, p))
        h *= 0.5
    return best


def peak_intensity(array: AntennaArray, grid: SphericalGrid | None = None) -> float:
    """Maximum intensity: grid scan refined by local search."""
    grid = grid or SphericalGrid(181, 360)
    values = intensity_at(array, grid.directions())
    i, j = np.unravel_index(np.argmax(values), values.shape)
    theta0 = grid.theta_values()[i]
    phi0 = grid.phi_values()[j]
    step = max(math.pi / (grid.n_theta - 1), 2.0 * math.pi / grid.n_phi)
    return max(values.max(), _refine_peak(array, theta0, phi0, step))


def main_plane_cuts(array: AntennaArray, n: int = 360) -> list[PlaneCut]:
    """Intensity cuts through xoy, yoz, zox, sharing one normalization.

    The three cuts are scaled by their joint maximum so the set peaks at
    exactly 1; colors follow the (R, G, B) plane convention.
    """
    if n < 8:
        raise ValueError("need n >= 8 cut samples")
    raw = {}
    for plane in ("xoy", "yoz", "zox"):
        raw[plane] = intensity_at(array, cut_directions(plane, n))
    peak = max(v.max() for v in raw.values())
    if peak <= DEGENERATE_EPS:
        raise ValueError("degenerate pattern")
    angles = np.arange(n) * (2.0 * math.pi / n)
    return [
        PlaneCut(plane, angles.copy(), raw[plane] / peak, CUT_COLORS[plane])
        for plane in ("xoy", "yoz", "zox")
    ]


def _simpson_weights(n_panels: int, h: float) -> np.ndarray:
    if n_panels % 2 or n_panels < 2:
        raise ValueError("Simpson rule needs an even panel count >= 2")
    w = np.ones(n_panels + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w * (h / 3.0)


def _quadrature_intensity(array: AntennaArray, n_theta: int, n_phi: int):
    if n_theta < 64 or n_theta % 2 or n_phi < 64:
        raise ValueError("quadrature needs even n_theta >= 64 and n_phi >= 64")
    theta = np.linspace(0.0, math.pi, n_theta + 1)
    phi = np.arange(n_phi) * (2.0 * math.pi / n_phi)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    dirs = np.stack(
        [np.sin(tt) * np.cos(pp), np.sin(tt) * np.sin(pp), np.cos(tt)], axis=-1
    )
    return theta, phi, intensity_at(array, dirs)


def total_radiated(array: AntennaArray, quadrature: tuple[int, int] = (512, 512)) -> float:
    """Integral of U sin(theta) over the sphere."""
    n_theta, n_phi = quadrature
    theta, _, u = _quadrature_intensity(array, n_theta, n_phi)
    w_theta = _simpson_weights(n_theta, math.pi / n_theta) * np.sin(theta)
    return float(w_theta @ u.sum(axis=1) * (2.0 * math.pi / n_phi))


def directivity(array: AntennaArray, quadrature: tuple[int, int] = (512, 512)) -> float:
    """D = 4*pi*U_max / P_total with U_max refined off the quadrature grid."""
    n_theta, n_phi = quadrature
    theta, phi, u = _quadrature_intensity(array, n_theta, n_phi)
    w_theta = _simpson_weights(n_theta, math.pi / n_theta) * np.sin(theta)
    power = float(w_theta @ u.sum(axis=1) * (2.0 * math.pi / n_phi))
    if power <= DEGENERATE_EPS:
        raise ValueError("degenerate pattern")
    i, j = np.unravel_index(np.argmax(u), u.shape)
    step = max(math.pi / n_theta, 2.0 * math.pi / n_phi)
    u_max = max(float(u.max()), _refine_peak(array, float(theta[i]), float(phi[j]), step))
    return 4.0 * math.pi * u_max / power


class AntiResonantLength(ValueError):
    """Raised for dipole lengths whose input current is a node."""

    def __init__(self, length: float):
        super().__init__(f"anti-resonant length (input current node) at {length} wavelengths")
        self.length = length


def input_radiation_resistance(length: float, n_panels: int = 4096) -> float:
    """Radiation resistance referred to the feed-point current, in ohm.

    R_m integrates the sinusoidal-dipole pattern over the sphere; dividing
    by sin^2(kh) refers it to the input. Lengths with a feed current node
    (sin(kh) ~ 0) raise instead of extrapolating.
    """
    if length <= 0.0:
        raise ValueError("length must be > 0")
    kh = math.pi * length
    if abs(math.sin(kh)) < 1e-6:
        raise AntiResonantLength(length)
    theta = np.linspace(0.0, math.pi, n_panels + 1)
    f = pattern_factor("sinusoidal", theta, length)
    integrand = f * f * np.sin(theta)
    r_m = (ETA / (2.0 * math.pi)) * float(
        _simpson_weights(n_panels, math.pi / n_panels) @ integrand
    )
    return r_m / math.sin(kh) ** 2


def first_maximum_from_axis(length: float, scan_step_deg: float = 0.1) -> float:
    """Angle (degrees) of the first |F| maximum scanning from the dipole axis.

    Scans (0, 90] degrees then refines the bracketed maximum parabolically
    to about 1e-3 degree; returns 90 when |F| keeps growing to broadside.
    """
    if length <= 0.0:
        raise ValueError("length must be > 0")
    if scan_step_deg > 0.5:
        raise ValueError("scan step must be <= 0.5 degrees")

    def f(psi_deg):
        return np.abs(pattern_factor("sinusoidal", np.radians(psi_deg), length))

    steps = int(round(90.0 / scan_step_deg))
    psi = np.linspace(0.0, 90.0, steps + 1)
    v = f(psi)
    interior = None
    for k in range(1, steps):
        if v[k] >= v[k - 1] and v[k] >= v[k + 1]:
            interior = k
            break
    if interior is None:
        return 90.0

    x, h = psi[interior], scan_step_deg
    for _ in range(6):
        fm, f0, fp = f(x - h), f(x), f(x + h)
        denom = fm - 2.0 * f0 + fp
        if denom == 0.0:
            break
        dx = 0.5 * h * (fm - fp) / denom
        x = min(90.0, max(0.0, x + max(-h, min(h, dx))))
        h *= 0.25
    return float(x)


@dataclass
class DipoleCharacteristics:
    length: float
    theta_max_deg: float
    directivity: float
    r_in: float | None
    anti_resonant: bool
    cut: PlaneCut


def characteristics_sweep(
    l_min: float,
    l_max: float,
    steps: int = 100,
    quadrature: tuple[int, int] = (512, 512),
    cut_samples: int = 360,
) -> list[DipoleCharacteristics]:
    """Directivity, input resistance, first maximum and zox cut per length.

    Lengths are uniform over [l_min, l_max]; anti-resonant rows carry the
    flag instead of a resistance value.
    """
    if not 0.0 < l_min < l_max:
        raise ValueError("need 0 < l_min < l_max")
    if steps < 2:
        raise ValueError("need steps >= 2")
    rows = []
    for length in np.linspace(l_min, l_max, steps):
        length = float(length)
        dipole = AntennaArray((DipoleElement(ORIGIN, Z_AXIS, "sinusoidal", length),))
        cuts = main_plane_cuts(dipole, cut_samples)
        cut = next(c for c in cuts if c.plane == "zox")
        try:
            r_in: float | None = input_radiation_resistance(length)
            anti = False
        except AntiResonantLength:
            r_in, anti = None, True
        rows.append(
            DipoleCharacteristics(
                length=length,
                theta_max_deg=first_maximum_from_axis(length),
                directivity=directivity(dipole, quadrature),
                r_in=r_in,
                anti_resonant=anti,
                cut=cut,
            )
        )
    return rows


@dataclass
class MeasurementTrace:
    """Progressive plane-cut measurement: antenna rotated, receiver fixed."""

    angles: np.ndarray
    values: np.ndarray
    rotation_axis: Vec3
    receiver_direction: Vec3

    def sample_directions(self) -> np.ndarray:
        """Receiver direction expressed in the rotating antenna frame, per step."""
        out = []
        for a in self.angles:
            m = rotation_about_axis(self.rotation_axis, -float(a))
            out.append(m @ self.receiver_direction.as_array())
        return np.asarray(out)

    def polar_points(self, upto: int | None = None) -> np.ndarray:
        """3D polar trace points value_k * direction_k (first k+1 when upto=k)."""
        dirs = self.sample_directions()
        pts = self.values[:, None] * dirs
        return pts if upto is None else pts[: upto + 1]


def measurement_sweep(
    source,
    rotation_axis: Vec3,
    receiver_direction: Vec3,
    n_steps: int,
) -> MeasurementTrace:
    """Imitate a pattern-cut measurement by antenna rotation.

    Step k turns the antenna by 2*pi*k/n_steps about rotation_axis and
    records the intensity seen by the fixed receiver, normalized by the
    sweep maximum. source is an AntennaArray or a callable mapping a unit
    direction array (3,) to an intensity.
    """
    if n_steps < 4:
        raise ValueError("need n_steps >= 4")
    axis = rotation_axis.normalized()
    recv = receiver_direction.normalized()
    angles = np.arange(n_steps) * (2.0 * math.pi / n_steps)
    values = np.empty(n_steps)
    for k, a in enumerate(angles):
        # rotating the antenna by +a == sampling the fixed antenna at R(-a) r
        d = rotation_about_axis(axis, -float(a)) @ recv.as_array()
        if isinstance(source, AntennaArray):
            values[k] = intensity_at(source, d)
        else:
            values[k] = float(source(d))
    peak = values.max()
    if peak <= DEGENERATE_EPS:
        raise ValueError("degenerate pattern")
    return MeasurementTrace(angles, values / peak, axis, recv)
