import math

import numpy as np
import pytest

from virtlab.geometry import BLUE, GREEN, ORIGIN, RED, Color, Polyline, Vec3
from virtlab.scene import (
    ARROW_FACE_COUNT,
    ARROW_VERTEX_COUNT,
    AnimationTrack,
    Scene,
    Viewpoint,
    arrow_mesh,
    axes_triad,
    bake,
    default_first_octant_viewpoint,
    morph_track,
    spin_track,
)


def minimal_scene():
    scene = Scene()
    scene.add_viewpoint(default_first_octant_viewpoint())
    return scene


class TestAxesTriad:
    def test_colors_follow_convention(self):
        scene = minimal_scene()
        x, y, z = axes_triad(scene, 1.0)
        assert x.color == RED and x.role == "x"
        assert y.color == GREEN and y.role == "y"
        assert z.color == BLUE and z.role == "z"

    def test_shaft_directions_perpendicular(self):
        scene = minimal_scene()
        nodes = axes_triad(scene, 2.0)
        tips = [n.geometry.vertices[1] for n in nodes]
        assert np.allclose(tips[0], [2, 0, 0])
        assert np.allclose(tips[1], [0, 2, 0])
        assert np.allclose(tips[2], [0, 0, 2])

    def test_ids_deterministic(self):
        ids1 = [n.id for n in axes_triad(minimal_scene())]
        ids2 = [n.id for n in axes_triad(minimal_scene())]
        assert ids1 == ids2 == ["arrow_000", "arrow_001", "arrow_002"]


class TestArrowMesh:
    def test_tip_vertex_at_end(self):
        mesh = arrow_mesh(ORIGIN, Vec3(0, 0, 1), RED)
        assert np.allclose(mesh.vertices[1], [0, 0, 1], atol=1e-9)

    def test_vertex_and_face_counts(self):
        mesh = arrow_mesh(Vec3(0.3, -0.2, 0.5), Vec3(1, 1, 1), RED, 0.03)
        # 2 centers + three 12-vertex rings; 6 triangles per segment
        assert len(mesh.vertices) == ARROW_VERTEX_COUNT == 38
        assert len(mesh.faces) == ARROW_FACE_COUNT == 72

    def test_reverse_mirrors_through_midpoint(self):
        a, b = Vec3(0.1, 0.2, 0.3), Vec3(-0.4, 0.8, 1.1)
        fwd = arrow_mesh(a, b, RED, 0.02)
        rev = arrow_mesh(b, a, RED, 0.02)
        mid = (a + b) * 0.5
        mirrored = 2 * mid.as_array() - fwd.vertices
        for v in mirrored:
            dist = np.min(np.linalg.norm(rev.vertices - v, axis=1))
            assert dist <= 1e-9

    def test_zero_length_rejected(self):
        with pytest.raises(ValueError):
            arrow_mesh(ORIGIN, ORIGIN, RED)

    def test_head_length_rule(self):
        long = arrow_mesh(ORIGIN, Vec3(0, 0, 10), RED, 0.02)
        # head limited to 4 * radius
        shaft_top = max(v[2] for v in long.vertices[2:26])
        assert 10 - shaft_top == pytest.approx(0.08, abs=1e-9)
        short = arrow_mesh(ORIGIN, Vec3(0, 0, 0.1), RED, 0.02)
        shaft_top = max(v[2] for v in short.vertices[2:26])
        assert 0.1 - shaft_top == pytest.approx(0.025, abs=1e-9)


class TestViewpoints:
    def test_first_octant(self):
        vp = default_first_octant_viewpoint()
        assert vp.position.x > 0 and vp.position.y > 0 and vp.position.z > 0
        assert vp.look_at == ORIGIN
        assert vp == default_first_octant_viewpoint()

    def test_degenerate_rejected(self):
        with pytest.raises(ValueError):
            Viewpoint(Vec3(1, 1, 1), Vec3(1, 1, 1))


class TestTracks:
    def test_three_periods_coexist(self):
        scene = minimal_scene()
        nodes = axes_triad(scene)
        for node, period in zip(nodes, (4.0, 6.0, 10.0)):
            scene.add_track(spin_track(node.id, Vec3(0, 0, 1), period))
        assert sorted(t.period for t in scene.tracks) == [4.0, 6.0, 10.0]
        scene.validate()

    def test_duplicate_target_composes(self):
        scene = minimal_scene()
        node = scene.add_polyline(Polyline([[0, 0, 0], [1, 0, 0]]))
        scene.add_track(spin_track(node.id, Vec3(0, 0, 1), 4.0))
        frames = [np.array([[0, 0, 0], [1, 0, 0]]), np.array([[0, 0, 0], [0, 1, 0]])]
        scene.add_track(morph_track(node.id, 6.0, frames))
        assert len(scene.tracks) == 2

    def test_unknown_target_rejected(self):
        scene = minimal_scene()
        with pytest.raises(ValueError, match="unknown node"):
            scene.add_track(spin_track("nope", Vec3(0, 0, 1), 4.0))

    def test_keyframe_monotonicity(self):
        ok = [(0.0, Vec3(0, 0, 0)), (0.5, Vec3(1, 0, 0)), (1.0, Vec3(0, 0, 0))]
        AnimationTrack("x", "position", 1.0, ok)
        bad = [(0.0, Vec3(0, 0, 0)), (0.4, Vec3(1, 0, 0)), (0.4, Vec3(0, 0, 0))]
        with pytest.raises(ValueError, match="strictly increasing"):
            AnimationTrack("x", "position", 1.0, bad)

    def test_morph_frame_compatibility(self):
        scene = minimal_scene()
        node = scene.add_polyline(Polyline([[0, 0, 0], [1, 0, 0]]))
        with pytest.raises(ValueError, match="incompatible"):
            scene.add_track(
                morph_track(node.id, 5.0, [np.zeros((5, 3)), np.ones((5, 3))])
            )


class TestValidation:
    def test_role_color_audit(self):
        scene = minimal_scene()
        node = scene.add_polyline(Polyline([[0, 0, 0], [1, 0, 0]], color=RED), role="y")
        with pytest.raises(ValueError, match="color convention"):
            scene.validate()

    def test_needs_viewpoint(self):
        scene = Scene()
        scene.add_polyline(Polyline([[0, 0, 0], [1, 0, 0]]))
        with pytest.raises(ValueError, match="viewpoint"):
            scene.validate()

    def test_opacity_range(self):
        scene = minimal_scene()
        with pytest.raises(ValueError):
            scene.add_mesh(arrow_mesh(ORIGIN, Vec3(1, 0, 0), RED), opacity=1.5)


class TestBake:
    def test_phase_zero_matches_first_keyframes(self):
        scene = minimal_scene()
        node = scene.add_polyline(Polyline([[0, 0, 0], [1, 0, 0]]))
        frames = [
            np.array([[0, 0, 0], [1, 0, 0]], dtype=float),
            np.array([[0, 0, 0], [0, 1, 0]], dtype=float),
        ]
        scene.add_track(morph_track(node.id, 5.0, frames))
        scene.add_track(spin_track(node.id, Vec3(0, 0, 1), 10.0))
        baked = bake(scene, 0.0)
        assert not baked.tracks
        assert np.allclose(baked.node(node.id).geometry.points, frames[0])
        assert baked.node(node.id).transform.rotation_angle == 0.0

    def test_morph_hits_exact_keyframes(self):
        scene = minimal_scene()
        node = scene.add_polyline(Polyline([[0, 0, 0], [1, 0, 0]]))
        frames = [np.full((2, 3), float(k)) for k in range(5)]
        scene.add_track(morph_track(node.id, 5.0, frames))
        for k in range(5):
            baked = bake(scene, k / 5)
            assert np.allclose(baked.node(node.id).geometry.points, frames[k])

    def test_faster_track_advances_proportionally(self):
        scene = minimal_scene()
        a = scene.add_polyline(Polyline([[0, 0, 0], [1, 0, 0]]))
        b = scene.add_polyline(Polyline([[0, 0, 0], [1, 0, 0]]))
        scene.add_track(spin_track(a.id, Vec3(0, 0, 1), 10.0))  # reference
        scene.add_track(spin_track(b.id, Vec3(0, 0, 1), 5.0))  # twice as fast
        baked = bake(scene, 0.25)
        assert baked.node(a.id).transform.rotation_angle == pytest.approx(math.pi / 2)
        assert baked.node(b.id).transform.rotation_angle == pytest.approx(math.pi)

    def test_original_scene_untouched(self):
        scene = minimal_scene()
        node = scene.add_polyline(Polyline([[0, 0, 0], [1, 0, 0]]))
        before = node.geometry.points.copy()
        frames = [np.zeros((2, 3)), np.ones((2, 3))]
        scene.add_track(morph_track(node.id, 5.0, frames))
        bake(scene, 0.7)
        assert np.array_equal(node.geometry.points, before)
        assert len(scene.tracks) == 1
