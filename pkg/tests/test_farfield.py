import cmath
import math

import numpy as np
import pytest

from virtlab.farfield import (
    CCW,
    CW,
    LINEAR,
    TOWARD_OBSERVER,
    TOWARD_SOURCE,
    AntennaArray,
    DipoleElement,
    PhasorVec,
    array_farfield,
    decompose,
    element_farfield,
    instantaneous_field,
    pattern_factor,
    polarization,
    polarization_map,
)
from virtlab.geometry import ORIGIN, X_AXIS, Y_AXIS, Z_AXIS, Vec3, rotation_about_axis
from virtlab.patterns import SphericalGrid

D = math.radians


def crossed_dipoles(lead="y", phase=math.pi / 2):
    """fig6 pair: short dipoles on z and y, one fed 90 degrees ahead."""
    pz = phase if lead == "z" else 0.0
    py = phase if lead == "y" else 0.0
    return AntennaArray(
        (
            DipoleElement(ORIGIN, Z_AXIS, "short", phase=pz),
            DipoleElement(ORIGIN, Y_AXIS, "short", phase=py),
        )
    )


def equator(phi_deg):
    return Vec3(math.cos(D(phi_deg)), math.sin(D(phi_deg)), 0.0)


def _sq_mag(v, tau):
    fields = np.real(v * np.exp(1j * tau)[..., None])
    return np.sum(fields * fields, axis=-1)


def brute_force_ellipses(phasors: np.ndarray, n=3600):
    """Independent oracle: extremes of |E(tau)| by dense sweep plus
    golden-section sharpening of the bracketed extrema.

    phasors has shape (m, 3); returns (max, min) arrays of shape (m,).
    Only evaluates |E(tau)|, never the closed form under test.
    """
    m = len(phasors)
    tau = np.linspace(0, 2 * math.pi, n, endpoint=False)
    sq = _sq_mag(phasors[:, None, :], np.broadcast_to(tau, (m, n)))
    step = 2 * math.pi / n
    out = []
    for pick, sign in ((np.argmax, 1.0), (np.argmin, -1.0)):
        idx = pick(sq, axis=1)
        lo = tau[idx] - step
        hi = tau[idx] + step
        ratio = (math.sqrt(5) - 1) / 2
        x1 = hi - ratio * (hi - lo)
        x2 = lo + ratio * (hi - lo)
        f1 = sign * _sq_mag(phasors, x1)
        f2 = sign * _sq_mag(phasors, x2)
        for _ in range(80):
            take_left = f1 >= f2
            hi = np.where(take_left, x2, hi)
            lo = np.where(take_left, lo, x1)
            x1n = hi - ratio * (hi - lo)
            x2n = lo + ratio * (hi - lo)
            x1, x2 = x1n, x2n
            f1 = sign * _sq_mag(phasors, x1)
            f2 = sign * _sq_mag(phasors, x2)
        best = np.maximum(f1, f2) * sign
        out.append(np.sqrt(np.maximum(best, 0.0)))
    return out[0], out[1]


def brute_force_ellipse(e: PhasorVec, n=3600):
    mx, mn = brute_force_ellipses(e.as_array()[None, :], n)
    return float(mx[0]), float(mn[0])


class TestPatternFactor:
    def test_half_wave_broadside(self):
        assert pattern_factor("sinusoidal", D(90), 0.5) == pytest.approx(1.0)

    def test_axial_null(self):
        assert pattern_factor("short", 0.0) == 0.0
        assert pattern_factor("sinusoidal", 0.0, 1.3) == 0.0

    def test_long_dipole_broadside(self):
        # 1 - cos(2.4*pi) at the fig7 element length
        assert pattern_factor("sinusoidal", D(90), 2.4) == pytest.approx(0.690983, abs=1e-6)

    def test_short_is_sine(self, rng):
        psi = rng.uniform(0, math.pi, 100)
        assert np.allclose(pattern_factor("short", psi), np.sin(psi))


class TestElementFarfield:
    def test_short_broadside(self):
        e = element_farfield(DipoleElement(ORIGIN, Z_AXIS, "short", amplitude=2.0), X_AXIS)
        assert e.ex == pytest.approx(0)
        assert e.ey == pytest.approx(0)
        assert e.ez == pytest.approx(2.0)

    def test_axial_null(self):
        for elem in (
            DipoleElement(ORIGIN, Z_AXIS, "short"),
            DipoleElement(ORIGIN, Z_AXIS, "sinusoidal", 1.2),
        ):
            e = element_farfield(elem, Z_AXIS)
            assert e.magnitude() <= 1e-12

    def test_offset_phase_factor(self):
        # k * r.c = 2*pi * 0.25 -> e^{j pi/2} = j
        elem = DipoleElement(Vec3(0.25, 0, 0), Z_AXIS, "short")
        e = element_farfield(elem, X_AXIS)
        assert e.ez == pytest.approx(1j)

    def test_axis_normalized_on_construction(self):
        elem = DipoleElement(ORIGIN, Vec3(0.2, 0.4, 0.894), "short")
        assert elem.axis.norm() == pytest.approx(1.0, abs=1e-12)


class TestArrayFarfield:
    def test_superposition_of_coincident_elements(self):
        one = DipoleElement(ORIGIN, Z_AXIS, "short")
        arr = AntennaArray((one, one))
        d = Vec3(0.6, 0.0, 0.8).normalized()
        single = element_farfield(one, d).as_array()
        double = array_farfield(arr, d).as_array()
        assert np.allclose(double, 2 * single, atol=1e-15)

    def test_quarter_wave_phase_cancellation(self):
        arr = AntennaArray(
            (
                DipoleElement(Vec3(-0.25, 0, 0), Z_AXIS, "short"),
                DipoleElement(Vec3(0.25, 0, 0), Z_AXIS, "short"),
            )
        )
        # e^{j pi/2} + e^{-j pi/2} = 0
        assert array_farfield(arr, X_AXIS).magnitude() <= 1e-12

    def test_crossed_dipoles_on_x(self):
        e = array_farfield(crossed_dipoles(), X_AXIS)
        assert e.ez == pytest.approx(1.0)
        assert e.ey == pytest.approx(1j)
        assert abs(e.ex) <= 1e-12

    def test_transversality(self, rng):
        arr = crossed_dipoles()
        for _ in range(300):
            d = Vec3(*rng.normal(size=3)).normalized()
            e = array_farfield(arr, d)
            mag = e.magnitude()
            if mag == 0:
                continue
            assert abs(e.as_array() @ d.as_array()) <= 1e-12 * mag


class TestDecomposition:
    def test_real_phasor_has_no_sine_part(self):
        d = decompose(PhasorVec(1.0, 0.5, 0.0))
        assert d.e_s.norm() == 0.0

    def test_crossed_field_decomposition(self):
        d = decompose(PhasorVec(0.0, 1j, 1.0))
        assert np.allclose(d.e_c.as_tuple(), (0, 0, 1))
        assert np.allclose(d.e_s.as_tuple(), (0, -1, 0))

    def test_instantaneous_spot_values(self):
        e = PhasorVec(0.0, 1j, 1.0)
        assert np.allclose(instantaneous_field(e, 0.0).as_tuple(), (0, 0, 1))
        assert np.allclose(instantaneous_field(e, D(90)).as_tuple(), (0, -1, 0), atol=1e-16)
        v = instantaneous_field(e, D(45))
        s = math.sqrt(2) / 2
        assert np.allclose(v.as_tuple(), (0, -s, s))

    def test_reconstruction_random(self, rng):
        for _ in range(10_000):
            comp = rng.normal(size=3) + 1j * rng.normal(size=3)
            tau = rng.uniform(0, 2 * math.pi)
            e = PhasorVec.from_array(comp)
            direct = np.real(comp * cmath.exp(1j * tau))
            d = decompose(e)
            recon = d.e_c * math.cos(tau) + d.e_s * math.sin(tau)
            assert np.max(np.abs(recon.as_array() - direct)) <= 1e-12


class TestPolarization:
    def test_fig6_circular_on_x(self):
        e = array_farfield(crossed_dipoles(), X_AXIS)
        pol = polarization(e, X_AXIS)
        assert pol.classification == "circular"
        assert pol.axial_ratio == pytest.approx(1.0, abs=1e-9)

    def test_fig6_linear_on_minus_y(self):
        d = equator(270)
        pol = polarization(array_farfield(crossed_dipoles(), d), d)
        assert pol.classification == "linear"
        assert pol.handedness == LINEAR

    def test_fig6_elliptical_240(self):
        d0, d240 = equator(0), equator(240)
        arr = crossed_dipoles()
        pol0 = polarization(array_farfield(arr, d0), d0)
        pol240 = polarization(array_farfield(arr, d240), d240)
        # oracle: brute-force max/min of |E(tau)| over 3600 samples
        mx, mn = brute_force_ellipse(array_farfield(arr, d240))
        assert mx / mn == pytest.approx(2.0, abs=1e-6)
        assert pol240.axial_ratio == pytest.approx(2.0, abs=1e-6)
        assert pol240.classification == "elliptical"
        assert {pol0.handedness, pol240.handedness} == {CW, CCW}

    def test_toward_source_labels(self):
        # fig6 labels: CW circular at 0, CCW elliptical at 240, linear at 270
        arr = crossed_dipoles()
        labels = {}
        for phi in (0, 240, 270):
            d = equator(phi)
            pol = polarization(array_farfield(arr, d), d, TOWARD_SOURCE)
            labels[phi] = (pol.handedness, pol.classification)
        assert labels[0] == (CW, "circular")
        assert labels[240] == (CCW, "elliptical")
        assert labels[270] == (LINEAR, "linear")

    def test_closed_form_matches_brute_force(self, rng):
        count = 10_000
        props = rng.normal(size=(count, 3))
        props /= np.linalg.norm(props, axis=1, keepdims=True)
        raw = rng.normal(size=(count, 3)) + 1j * rng.normal(size=(count, 3))
        raw -= np.sum(raw * props, axis=1, keepdims=True) * props
        keep = np.linalg.norm(raw, axis=1) > 1e-6
        props, raw = props[keep], raw[keep]
        mx, mn = brute_force_ellipses(raw)
        for i in range(len(raw)):
            pol = polarization(PhasorVec.from_array(raw[i]), Vec3.from_array(props[i]))
            assert pol.major_axis.norm() == pytest.approx(mx[i], rel=1e-6)
            if mn[i] > 1e-6 * mx[i]:
                assert pol.minor_axis.norm() == pytest.approx(mn[i], rel=1e-6)
                assert pol.axial_ratio == pytest.approx(mx[i] / mn[i], rel=1e-6)
            else:
                assert pol.minor_axis.norm() <= 2e-6 * mx[i]

    def test_axes_orthogonal_and_power_invariant(self, rng):
        for _ in range(2000):
            p = Vec3(*rng.normal(size=3)).normalized()
            raw = rng.normal(size=3) + 1j * rng.normal(size=3)
            pa = p.as_array()
            raw = raw - (raw @ pa) * pa
            if np.linalg.norm(raw) < 1e-6:
                continue
            e = PhasorVec.from_array(raw)
            pol = polarization(e, p)
            maj, mnr = pol.major_axis, pol.minor_axis
            assert abs(maj.dot(mnr)) <= 1e-9 * max(maj.norm() * mnr.norm(), 1e-30)
            d = decompose(e)
            lhs = d.e_c.norm() ** 2 + d.e_s.norm() ** 2
            rhs = maj.norm() ** 2 + mnr.norm() ** 2
            assert lhs == pytest.approx(rhs, rel=1e-9)

    def test_handedness_flips_with_phase_sign(self):
        d = equator(40)
        fwd = polarization(array_farfield(crossed_dipoles(phase=D(90)), d), d)
        rev = polarization(array_farfield(crossed_dipoles(phase=-D(90)), d), d)
        assert {fwd.handedness, rev.handedness} == {CW, CCW}

    def test_handedness_flips_with_convention(self):
        d = equator(40)
        e = array_farfield(crossed_dipoles(), d)
        a = polarization(e, d, TOWARD_OBSERVER).handedness
        b = polarization(e, d, TOWARD_SOURCE).handedness
        assert {a, b} == {CW, CCW}

    def test_amplitude_scaling_invariance(self):
        d = equator(240)
        base = crossed_dipoles()
        scaled = AntennaArray(
            tuple(
                DipoleElement(el.center, el.axis, el.kind, el.length, el.amplitude * 7.5, el.phase)
                for el in base.elements
            )
        )
        p1 = polarization(array_farfield(base, d), d)
        p2 = polarization(array_farfield(scaled, d), d)
        assert p1.axial_ratio == pytest.approx(p2.axial_ratio, rel=1e-12)
        assert p1.handedness == p2.handedness
        assert p1.classification == p2.classification

    def test_non_transverse_rejected(self):
        with pytest.raises(ValueError, match="not transverse"):
            polarization(PhasorVec(1.0, 0.0, 0.0), X_AXIS)


class TestPolarizationMap:
    def test_single_dipole_all_linear(self):
        arr = AntennaArray((DipoleElement(ORIGIN, Z_AXIS, "short"),))
        rows = polarization_map(arr, SphericalGrid(13, 24))
        seen = 0
        for row in rows:
            for cell in row:
                if cell is None:
                    continue
                assert cell.classification == "linear"
                seen += 1
        assert seen > 100

    def test_crossed_dipoles_have_all_three_classes(self):
        rows = polarization_map(crossed_dipoles(), SphericalGrid(19, 48))
        classes = {
            cell.classification for row in rows for cell in row if cell is not None
        }
        assert classes == {"linear", "circular", "elliptical"}

    def test_rotation_equivariance(self, rng):
        arr = crossed_dipoles()
        m = rotation_about_axis(Vec3(*rng.normal(size=3)).normalized(), rng.uniform(0, math.pi))
        rotated = arr.rotated(m)
        for _ in range(60):
            d = Vec3(*rng.normal(size=3)).normalized()
            e1 = polarization(array_farfield(arr, d), d)
            rd = Vec3.from_array(m @ d.as_array())
            e2 = polarization(array_farfield(rotated, rd), rd)
            assert np.allclose(
                m @ e1.major_axis.as_array(), e2.major_axis.as_array(), atol=1e-9
            )
            assert np.allclose(
                np.abs(m @ e1.minor_axis.as_array()), np.abs(e2.minor_axis.as_array()), atol=1e-9
            )
