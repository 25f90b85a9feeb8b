"""Current waves on a terminated wire and the dipole standing wave.

Position z is measured in wavelengths from the load toward the source,
so k = 2*pi and the reflection reference plane sits at the termination.
The incident amplitude is normalized to 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .geometry import TWO_PI

K = TWO_PI  # wavenumber in wavelength units


@dataclass(frozen=True)
class TerminatedWire:
    """Wire of the given length (in wavelengths) terminated on zl ohms."""

    z0: float
    zl: complex
    length: float

    def __post_init__(self):
        if self.z0 <= 0.0:
            raise ValueError("characteristic impedance must be > 0")
        if self.length <= 0.0:
            raise ValueError("wire length must be > 0")
        reflection_coefficient(self.z0, self.zl)  # rejects zl == -z0

    @property
    def gamma(self) -> complex:
        return reflection_coefficient(self.z0, self.zl)


@dataclass(frozen=True)
class WaveComponents:
    """Normalized current snapshot: p = i + r = s + t."""

    p: float
    i: float
    r: float
    s: float
    t: float


@dataclass
class WaveFrameSet:
    """Per-frame, per-point samples; frame k is at phase tau = 2*pi*k/n_frames."""

    n_frames: int
    n_points: int
    positions: np.ndarray
    frames: list

    def __post_init__(self):
        self.positions = np.asarray(self.positions, dtype=float)


def reflection_coefficient(z0: float, zl: complex) -> complex:
    if z0 <= 0.0:
        raise ValueError("characteristic impedance must be > 0")
    zl = complex(zl)
    if abs(zl + z0) < 1e-12 * z0:
        raise ValueError("singular load")
    return (zl - z0) / (zl + z0)


def wave_components(wire: TerminatedWire, z, tau):
    """Decompose the propagated current at distance z from the load, phase tau.

    Returns the dual couples (incident i, reflected r) and (standing s,
    transmitted t) with p = i + r = s + t. Accepts scalars or arrays.
    """
    z = np.asarray(z, dtype=float)
    if np.any(z < 0.0) or np.any(z > wire.length):
        raise ValueError("z outside [0, length]")
    gamma = wire.gamma
    mag, psi = abs(gamma), cmath.phase(gamma)
    i = np.cos(tau + K * z)
    r = mag * np.cos(tau - K * z + psi)
    t = (1.0 - mag) * np.cos(tau + K * z)
    s = 2.0 * mag * np.cos(K * z - psi / 2.0) * np.cos(tau + psi / 2.0)
    p = i + r
    if p.ndim == 0:
        return WaveComponents(float(p), float(i), float(r), float(s), float(t))
    return WaveComponents(p, i, r, s, t)


def standing_current_profile(length: float, zeta) -> float | np.ndarray:
    """Standing-wave current I(zeta) = sin(k*(length/2 - |zeta|)) on a dipole.

    zeta is measured from the wire center, |zeta| <= length/2.
    """
    zeta = np.asarray(zeta, dtype=float)
    if np.any(np.abs(zeta) > length / 2.0 + 1e-12):
        raise ValueError("zeta outside the wire")
    out = np.sin(K * (length / 2.0 - np.abs(zeta)))
    return float(out) if out.ndim == 0 else out


def rotating_phasor_frames(length: float, n_points: int, n_frames: int) -> WaveFrameSet:
    """Standing current rendered as phasor vectors rotating about the wire.

    The wire lies on the z-axis. At point zeta and frame k the vector has
    magnitude |I(zeta)|, lies perpendicular to the wire, and is rotated by
    tau_k = 2*pi*k/n_frames from the +x reference half-plane; a negative
    current adds a 180 degree offset, so the frame-0 x-component is I(zeta).
    """
    if n_points < 2:
        raise ValueError("need n_points >= 2")
    if n_frames < 1:
        raise ValueError("need n_frames >= 1")
    zeta = np.linspace(-length / 2.0, length / 2.0, n_points)
    current = standing_current_profile(length, zeta)
    offset = np.where(current < 0.0, math.pi, 0.0)
    mag = np.abs(current)
    frames = []
    for k in range(n_frames):
        tau = TWO_PI * k / n_frames
        ang = tau + offset
        vec = np.stack(
            [mag * np.cos(ang), mag * np.sin(ang), np.zeros(n_points)], axis=1
        )
        frames.append(vec)
    return WaveFrameSet(n_frames=n_frames, n_points=n_points, positions=zeta, frames=frames)
