"""Far-field phasors of thin-wire dipoles and polarization ellipses.

Phasors use the e^{+j*tau} time convention: the instantaneous field is
E(tau) = Re{E e^{j*tau}} = E_c cos(tau) + E_s sin(tau) with E_c = Re E and
E_s = -Im E. All fields are relative: common 1/r, e^{-jkr} and impedance
factors are dropped since only normalized patterns and polarization states
are presented.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import TWO_PI, Vec3

K = TWO_PI

CW = "CW"
CCW = "CCW"
LINEAR = "LINEAR"

TOWARD_OBSERVER = "toward_observer"
TOWARD_SOURCE = "toward_source"


@dataclass(frozen=True)
class PhasorVec:
    """Complex field vector; E(tau) = Re{E e^{j*tau}}."""

    ex: complex
    ey: complex
    ez: complex

    @staticmethod
    def from_array(a) -> "PhasorVec":
        return PhasorVec(complex(a[0]), complex(a[1]), complex(a[2]))

    def as_array(self) -> np.ndarray:
        return np.array([self.ex, self.ey, self.ez], dtype=complex)

    def magnitude(self) -> float:
        return float(np.linalg.norm(self.as_array()))


@dataclass(frozen=True)
class FieldDecomposition:
    """E(tau) = e_c cos(tau) + e_s sin(tau)."""

    e_c: Vec3
    e_s: Vec3


@dataclass(frozen=True)
class PolarizationEllipse:
    major_axis: Vec3
    minor_axis: Vec3
    axial_ratio: float
    handedness: str
    classification: str
    convention: str


@dataclass(frozen=True)
class DipoleElement:
    """Thin-wire radiator: center and axis in wavelengths, feed phase in rad.

    kind "short" is the elementary dipole (sin(psi) pattern); "sinusoidal"
    carries a standing-wave current on a wire of the given length.
    The axis is normalized on construction.
    """

    center: Vec3
    axis: Vec3
    kind: str = "short"
    length: float | None = None
    amplitude: float = 1.0
    phase: float = 0.0

    def __post_init__(self):
        if self.kind not in ("short", "sinusoidal"):
            raise ValueError(f"unknown element kind {self.kind!r}")
        if self.kind == "sinusoidal":
            if self.length is None or self.length <= 0.0:
                raise ValueError("sinusoidal element needs length > 0")
        if self.amplitude < 0.0:
            raise ValueError("amplitude must be >= 0")
        object.__setattr__(self, "axis", self.axis.normalized())

    def rotated(self, matrix: np.ndarray) -> "DipoleElement":
        m = np.asarray(matrix)
        return DipoleElement(
            Vec3.from_array(m @ self.center.as_array()),
            Vec3.from_array(m @ self.axis.as_array()),
            self.kind,
            self.length,
            self.amplitude,
            self.phase,
        )


@dataclass(frozen=True)
class AntennaArray:
    elements: tuple[DipoleElement, ...]

    def __post_init__(self):
        elements = tuple(self.elements)
        if not elements:
            raise ValueError("array needs at least one element")
        object.__setattr__(self, "elements", elements)

    def rotated(self, matrix: np.ndarray) -> "AntennaArray":
        return AntennaArray(tuple(e.rotated(matrix) for e in self.elements))


def pattern_factor(kind: str, psi, length: float | None = None):
    """Element pattern versus the angle psi from the wire axis.

    "short" gives sin(psi); "sinusoidal" gives
    [cos(kh cos psi) - cos(kh)] / sin(psi) with kh = pi*length.
    The removable singularity on the axis evaluates to 0.
    """
    psi = np.asarray(psi, dtype=float)
    if np.any(psi < -1e-12) or np.any(psi > math.pi + 1e-12):
        raise ValueError("psi outside [0, pi]")
    sp = np.sin(psi)
    if kind == "short":
        out = sp
    elif kind == "sinusoidal":
        if length is None or length <= 0.0:
            raise ValueError("sinusoidal pattern needs length > 0")
        kh = math.pi * length
        safe = np.where(sp < 1e-9, 1.0, sp)
        out = np.where(sp < 1e-9, 0.0, (np.cos(kh * np.cos(psi)) - math.cos(kh)) / safe)
    else:
        raise ValueError(f"unknown element kind {kind!r}")
    return float(out) if out.ndim == 0 else out


def farfield_at(array: AntennaArray, directions: np.ndarray) -> np.ndarray:
    """Complex far field at unit directions of shape (..., 3).

    Vectorized workhorse behind element_farfield/array_farfield and the
    pattern grids; returns an array of the same shape, complex dtype.
    """
    dirs = np.asarray(directions, dtype=float)
    total = np.zeros(dirs.shape, dtype=complex)
    for el in array.elements:
        a = el.axis.as_array()
        cos_psi = np.clip(dirs @ a, -1.0, 1.0)
        trans = a - cos_psi[..., None] * dirs  # axis component transverse to r
        phase = el.amplitude * np.exp(1j * (el.phase + K * (dirs @ el.center.as_array())))
        if el.kind == "short":
            total += phase[..., None] * trans
        else:
            t_norm = np.linalg.norm(trans, axis=-1)
            factor = pattern_factor("sinusoidal", np.arccos(cos_psi), el.length)
            safe = np.where(t_norm < 1e-9, 1.0, t_norm)
            unit = np.where((t_norm < 1e-9)[..., None], 0.0, trans / safe[..., None])
            total += (phase * factor)[..., None] * unit
    return total


def element_farfield(elem: DipoleElement, direction: Vec3) -> PhasorVec:
    """Far field of one element in a unit direction."""
    d = direction.as_array()
    n = np.linalg.norm(d)
    if abs(n - 1.0) > 1e-9:
        raise ValueError("direction must be a unit vector")
    return PhasorVec.from_array(farfield_at(AntennaArray((elem,)), d))


def array_farfield(array: AntennaArray, direction: Vec3) -> PhasorVec:
    """Superposed far field of all elements in a unit direction."""
    d = direction.as_array()
    if abs(np.linalg.norm(d) - 1.0) > 1e-9:
        raise ValueError("direction must be a unit vector")
    return PhasorVec.from_array(farfield_at(array, d))


def decompose(e: PhasorVec) -> FieldDecomposition:
    """Split a phasor into the constant space vectors E_c and E_s."""
    v = e.as_array()
    return FieldDecomposition(Vec3.from_array(v.real), Vec3.from_array(-v.imag))


def instantaneous_field(e: PhasorVec, tau: float) -> Vec3:
    d = decompose(e)
    return d.e_c * math.cos(tau) + d.e_s * math.sin(tau)


def polarization(
    e: PhasorVec, propagation: Vec3, convention: str = TOWARD_OBSERVER
) -> PolarizationEllipse:
    """Extract the polarization ellipse of a transverse phasor.

    The semi-axes come from the extremes of |E_c cos(tau) + E_s sin(tau)|,
    located in closed form at tau0 = atan2(2 E_c.E_s, |E_c|^2 - |E_s|^2)/2.
    Handedness is the sign of propagation.(E_c x E_s): positive means CCW
    for an observer the wave approaches (toward_observer); the
    toward_source convention flips CW/CCW.
    """
    if convention not in (TOWARD_OBSERVER, TOWARD_SOURCE):
        raise ValueError(f"unknown convention {convention!r}")
    p = propagation.as_array()
    if abs(np.linalg.norm(p) - 1.0) > 1e-9:
        raise ValueError("propagation must be a unit vector")
    v = e.as_array()
    e_mag = np.linalg.norm(v)
    if e_mag > 0.0 and abs(v @ p) > 1e-6 * e_mag:
        raise ValueError("field not transverse to propagation")

    ec, es = v.real, -v.imag
    tau0 = 0.5 * math.atan2(2.0 * float(ec @ es), float(ec @ ec - es @ es))
    a1 = ec * math.cos(tau0) + es * math.sin(tau0)
    a2 = -ec * math.sin(tau0) + es * math.cos(tau0)
    if np.linalg.norm(a1) >= np.linalg.norm(a2):
        major, minor = a1, a2
    else:
        major, minor = a2, a1
    maj_len, min_len = float(np.linalg.norm(major)), float(np.linalg.norm(minor))
    ratio = math.inf if min_len <= 1e-9 * maj_len else maj_len / min_len

    h = float(p @ np.cross(ec, es))
    degenerate = math.isinf(ratio) or abs(h) <= 1e-12 * np.linalg.norm(ec) * np.linalg.norm(es)
    if degenerate:
        handedness = LINEAR
    elif (h > 0.0) == (convention == TOWARD_OBSERVER):
        handedness = CCW
    else:
        handedness = CW

    if math.isinf(ratio):
        classification = "linear"
    elif maj_len - min_len <= 1e-9 * maj_len:
        classification = "circular"
    else:
        classification = "elliptical"
    return PolarizationEllipse(
        Vec3.from_array(major), Vec3.from_array(minor), ratio,
        handedness, classification, convention,
    )


def polarization_map(array: AntennaArray, grid, convention: str = TOWARD_OBSERVER):
    """Polarization ellipse per grid direction; None marks pattern nulls.

    grid provides theta_values()/phi_values(); directions where the field
    magnitude drops below 1e-12 of the grid maximum are returned as None.
    """
    theta = grid.theta_values()
    phi = grid.phi_values()
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    dirs = np.stack(
        [np.sin(tt) * np.cos(pp), np.sin(tt) * np.sin(pp), np.cos(tt)], axis=-1
    )
    fields = farfield_at(array, dirs)
    mags = np.linalg.norm(fields, axis=-1)
    peak = mags.max()
    out: list[list[PolarizationEllipse | None]] = []
    for i in range(len(theta)):
        row: list[PolarizationEllipse | None] = []
        for j in range(len(phi)):
            if mags[i, j] <= 1e-12 * peak:
                row.append(None)
                continue
            row.append(
                polarization(
                    PhasorVec.from_array(fields[i, j]),
                    Vec3.from_array(dirs[i, j]),
                    convention,
                )
            )
        out.append(row)
    return out
