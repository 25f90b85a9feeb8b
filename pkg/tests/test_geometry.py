import math

import numpy as np
import pytest

from virtlab.geometry import (
    BLUE,
    GREEN,
    RED,
    SphericalPoint,
    Vec3,
    ccs_to_scs,
    coordinate_curve,
    coordinate_surface_mesh,
    face_areas,
    main_plane_directions,
    rotation_about_axis,
    scs_to_ccs,
    sphere_cone_intersection,
    standard_triples,
    unit_triple,
    volume_element,
)

D = math.radians


class TestTransforms:
    def test_scs_to_ccs_x_axis(self):
        v = scs_to_ccs(SphericalPoint(1, D(90), 0))
        assert np.allclose(v.as_tuple(), (1, 0, 0), atol=1e-15)

    def test_scs_to_ccs_pole_ignores_phi(self):
        v = scs_to_ccs(SphericalPoint(2, 0, D(123)))
        assert np.allclose(v.as_tuple(), (0, 0, 2), atol=1e-15)

    def test_scs_to_ccs_generic(self):
        # direct evaluation, frozen; cross-checked by the round trip below
        v = scs_to_ccs(SphericalPoint(1, D(50), D(30)))
        assert np.allclose(v.as_tuple(), (0.663414, 0.383022, 0.642788), atol=1e-6)

    def test_ccs_to_scs_negative_pole(self):
        p = ccs_to_scs(Vec3(0, 0, -3))
        assert p.r == pytest.approx(3)
        assert p.theta == pytest.approx(math.pi)
        assert p.phi == 0.0

    def test_ccs_to_scs_diagonal(self):
        p = ccs_to_scs(Vec3(1, 1, 0))
        assert p.r == pytest.approx(math.sqrt(2))
        assert p.theta == pytest.approx(D(90))
        assert p.phi == pytest.approx(D(45))

    def test_round_trip(self, rng):
        for _ in range(1000):
            v = Vec3(*rng.uniform(-1, 1, 3))
            scale = 10.0 ** rng.uniform(-6, 6)
            if math.hypot(v.x, v.y) < 1e-3:
                continue
            v = v * scale
            w = scs_to_ccs(ccs_to_scs(v))
            assert (w - v).norm() <= 1e-12 * v.norm()

    def test_origin(self):
        p = ccs_to_scs(Vec3(0, 0, 0))
        assert p.as_tuple() == (0.0, 0.0, 0.0)

    def test_angle_canonicalization(self):
        p = SphericalPoint(1.0, D(-30), D(10))
        assert p.theta == pytest.approx(D(30))
        assert p.phi == pytest.approx(D(190))
        q = SphericalPoint(1.0, D(200), 0.0)
        assert q.theta == pytest.approx(D(160))
        assert q.phi == pytest.approx(math.pi)


class TestUnitTriples:
    def test_x_direction(self):
        t = unit_triple(D(90), 0)
        assert np.allclose(t.e_r.as_tuple(), (1, 0, 0), atol=1e-15)
        assert np.allclose(t.e_theta.as_tuple(), (0, 0, -1), atol=1e-15)
        assert np.allclose(t.e_phi.as_tuple(), (0, 1, 0), atol=1e-15)
        assert t.defined

    def test_z_axis_undefined(self):
        assert not unit_triple(0.0, D(33)).defined
        assert not unit_triple(math.pi, 0.0).defined

    def test_orthonormal_right_handed(self, rng):
        for _ in range(1000):
            theta = rng.uniform(0.01, math.pi - 0.01)
            phi = rng.uniform(0, 2 * math.pi)
            t = unit_triple(theta, phi)
            for e in (t.e_r, t.e_theta, t.e_phi):
                assert abs(e.norm() - 1) <= 1e-12
            assert abs(t.e_r.dot(t.e_theta)) <= 1e-12
            assert abs(t.e_r.dot(t.e_phi)) <= 1e-12
            assert abs(t.e_theta.dot(t.e_phi)) <= 1e-12
            cross = t.e_r.cross(t.e_theta)
            assert (cross - t.e_phi).norm() <= 1e-12

    def test_default_set_counts(self):
        triples = standard_triples()
        undefined = [t for t in triples if not t.defined]
        defined = [t for t in triples if t.defined]
        assert len(undefined) == 2
        # 45-degree union of the three main-plane circles
        assert len(defined) == 16

    def test_default_set_directions_unique(self):
        dirs = [scs_to_ccs(t.direction).as_tuple() for t in standard_triples()]
        rounded = {tuple(round(c, 9) for c in d) for d in dirs}
        assert len(rounded) == len(dirs)

    def test_custom_single_direction(self):
        triples = standard_triples([(D(90), 0.0)])
        assert len(triples) == 1
        assert triples[0].defined

    def test_main_plane_directions_on_planes(self):
        for theta, phi in main_plane_directions(D(45)):
            v = scs_to_ccs(SphericalPoint(1, theta, phi))
            on_plane = min(abs(v.x), abs(v.y), abs(v.z))
            assert on_plane <= 1e-12


class TestSurfaces:
    def test_sphere_vertices_on_surface(self):
        mesh = coordinate_surface_mesh("sphere", 1.0, resolution=(18, 36))
        norms = np.linalg.norm(mesh.vertices, axis=1)
        assert np.all(np.abs(norms - 1.0) <= 1e-9)

    def test_cone_vertices_on_surface(self):
        theta0 = D(50)
        mesh = coordinate_surface_mesh("cone", theta0, r_range=(0.0, 1.0))
        r = np.linalg.norm(mesh.vertices, axis=1)
        keep = r > 1e-9
        angles = np.arccos(mesh.vertices[keep, 2] / r[keep])
        assert np.all(np.abs(angles - theta0) <= 1e-9)

    def test_semiplane_vertices_on_surface(self):
        phi0 = D(75)
        mesh = coordinate_surface_mesh("semiplane", phi0, r_range=(0.1, 1.0))
        phis = np.arctan2(mesh.vertices[:, 1], mesh.vertices[:, 0])
        rho = np.hypot(mesh.vertices[:, 0], mesh.vertices[:, 1])
        assert np.all(np.abs(phis[rho > 1e-9] - phi0) <= 1e-9)

    def test_cutout_removes_faces(self):
        lo, hi = 0.0, D(30)
        mesh = coordinate_surface_mesh("sphere", 1.0, cutout=(lo, hi))
        centers = mesh.vertices[mesh.faces].mean(axis=1)
        phis = np.mod(np.arctan2(centers[:, 1], centers[:, 0]), 2 * math.pi)
        # faces with both poles excluded have a meaningful azimuth
        rho = np.hypot(centers[:, 0], centers[:, 1])
        inside = (phis > lo + 1e-9) & (phis < hi - 1e-9) & (rho > 1e-6)
        assert not np.any(inside)

    def test_no_degenerate_faces(self):
        mesh = coordinate_surface_mesh("sphere", 2.0)
        assert np.all(face_areas(mesh.vertices, mesh.faces) > 0)

    def test_degenerate_range_rejected(self):
        with pytest.raises(ValueError, match="degenerate surface"):
            coordinate_surface_mesh("sphere", 1.0, theta_range=(1.0, 1.0))

    def test_colors_follow_convention(self):
        assert coordinate_surface_mesh("sphere", 1.0).color == RED
        assert coordinate_surface_mesh("cone", D(50)).color == GREEN
        assert coordinate_surface_mesh("semiplane", 0.3).color == BLUE


class TestCurves:
    def test_phi_circle_equator(self):
        line = coordinate_curve("phi_circle", r=1.0, theta=D(90), n=32)
        assert line.closed
        assert np.all(np.abs(line.points[:, 2]) <= 1e-12)
        assert np.allclose(np.linalg.norm(line.points[:, :2], axis=1), 1.0)

    def test_meridian_zero_phi(self):
        line = coordinate_curve("meridian", r=1.0, phi=0.0, n=16)
        assert not line.closed
        assert np.all(np.abs(line.points[:, 1]) <= 1e-12)
        assert np.all(line.points[:, 0] >= -1e-12)

    def test_phi_circle_radius_formula(self):
        line = coordinate_curve("phi_circle", r=2.0, theta=D(50), n=64)
        rho = np.linalg.norm(line.points[:, :2], axis=1)
        assert np.all(np.abs(rho - 1.532089) <= 1e-6)
        assert np.all(np.abs(rho - 2.0 * math.sin(D(50))) <= 1e-9)

    def test_ray(self):
        line = coordinate_curve("ray", theta=D(50), phi=D(30), r_max=2.0, n=8)
        d = line.points[-1] / np.linalg.norm(line.points[-1])
        assert np.allclose(np.cross(line.points[1:], d), 0.0, atol=1e-12)
        assert np.allclose(line.points[0], 0.0)

    def test_curve_colors(self):
        assert coordinate_curve("ray", theta=1.0, phi=0.0).color == RED
        assert coordinate_curve("meridian", phi=0.0).color == GREEN
        assert coordinate_curve("phi_circle", theta=1.0).color == BLUE


class TestVolumeElement:
    def test_six_faces(self):
        faces = volume_element(1.0, 0.3, D(40), D(30), D(75), D(30))
        assert len(faces) == 6

    def test_default_straddles_first_and_second_octant(self):
        faces = volume_element(1.0, 0.3, D(40), D(30), D(75), D(30))
        allv = np.vstack([m.vertices for m in faces])
        assert np.any(allv[:, 0] > 1e-9) and np.any(allv[:, 0] < -1e-9)

    def test_adjacent_faces_share_boundaries(self):
        faces = volume_element(1.0, 0.3, D(40), D(30), D(75), D(30))

        def shared(a, b):
            va, vb = faces[a].vertices, faces[b].vertices
            d = np.linalg.norm(va[:, None, :] - vb[None, :, :], axis=2)
            return int(np.sum(d.min(axis=1) <= 1e-9))

        # spheres touch cones and semiplanes along full arcs; opposite
        # faces (0,1), (2,3), (4,5) never meet
        adjacent = [
            (0, 2), (0, 3), (0, 4), (0, 5),
            (1, 2), (1, 3), (1, 4), (1, 5),
            (2, 4), (2, 5), (3, 4), (3, 5),
        ]
        for a, b in adjacent:
            assert shared(a, b) >= 2, f"faces {a} and {b} share no boundary arc"
        for a, b in ((0, 1), (2, 3), (4, 5)):
            assert shared(a, b) == 0

    def test_full_ring_semiplanes_coincide(self):
        faces = volume_element(1.0, 0.3, D(40), D(30), 0.0, 2 * math.pi)
        start, end = faces[4], faces[5]
        assert np.allclose(start.vertices, end.vertices, atol=1e-9)


class TestSphereConeIntersection:
    def test_great_circle(self):
        line = sphere_cone_intersection(1.0, D(90))
        assert line.closed
        assert np.allclose(np.linalg.norm(line.points[:, :2], axis=1), 1.0)
        assert np.allclose(line.points[:, 2], 0.0, atol=1e-12)

    def test_fifty_degree_spot_value(self):
        line = sphere_cone_intersection(1.0, D(50))
        rho = np.linalg.norm(line.points[:, :2], axis=1)
        assert np.all(np.abs(rho - 0.766044) <= 1e-6)

    def test_pole_degenerates_to_point(self):
        line = sphere_cone_intersection(1.0, 0.0)
        assert np.allclose(line.points, (0.0, 0.0, 1.0), atol=1e-12)

    def test_radius_formula_random(self, rng):
        for _ in range(1000):
            r = rng.uniform(0.1, 10)
            theta = rng.uniform(0, math.pi)
            line = sphere_cone_intersection(r, theta, n=8)
            rho = np.linalg.norm(line.points[:, :2], axis=1)
            assert np.all(np.abs(rho - r * math.sin(theta)) <= 1e-9 * max(1.0, r))
            assert np.allclose(line.points[:, 2], r * math.cos(theta), atol=1e-9 * max(1.0, r))


def test_rotation_about_axis_matches_known():
    m = rotation_about_axis(Vec3(0, 0, 1), D(90))
    assert np.allclose(m @ [1, 0, 0], [0, 1, 0], atol=1e-12)
    m = rotation_about_axis(Vec3(1, 1, 1), 2 * math.pi / 3)
    assert np.allclose(m @ [1, 0, 0], [0, 1, 0], atol=1e-12)
