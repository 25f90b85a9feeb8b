import json
import math
from concurrent.futures import ThreadPoolExecutor

import pytest

from virtlab import scenarios
from virtlab.export import dump_json, write_mesh_json, write_scene_json, write_vrml
from virtlab.farfield import AntennaArray, DipoleElement
from virtlab.geometry import ORIGIN, Vec3
from virtlab.patterns import SphericalGrid, main_plane_cuts, pattern_grid
from virtlab.scene import bake

CROSSED = [
    {"axis": [0, 0, 1], "kind": "short"},
    {"axis": [0, 1, 0], "kind": "short", "phase_deg": 90},
]

PATTERN_BODY = {
    "elements": [{"axis": [0, 0, 1], "kind": "sinusoidal", "length_wl": 0.5}],
    "grid": {"n_theta": 31, "n_phi": 60},
    "mapping": "field",
}


def error_schema_ok(doc, status):
    assert set(doc) == {"status", "code", "message"}
    assert doc["status"] == status
    assert isinstance(doc["code"], str) and doc["code"]
    assert isinstance(doc["message"], str) and doc["message"]


class TestScenarioEndpoints:
    def test_list_has_fifteen(self, client):
        r = client.get("/api/v1/scenarios")
        assert r.status_code == 200
        body = r.json()
        assert len(body) == 15
        assert {"id", "title", "kind"} == set(body[0])

    def test_list_matches_writer(self, client):
        r = client.get("/api/v1/scenarios")
        expected = dump_json(
            [{"id": s.id, "title": s.title, "kind": s.kind} for s in scenarios.catalog()]
        )
        assert r.text == expected

    def test_spec_matches_writer(self, client):
        spec = scenarios.catalog_by_id()["fig7"]
        r = client.get("/api/v1/scenarios/fig7")
        assert r.status_code == 200
        assert r.text == dump_json(scenarios.spec_to_jsonable(spec))

    def test_unknown_scenario_404(self, client):
        r = client.get("/api/v1/scenarios/nope")
        assert r.status_code == 404
        error_schema_ok(r.json(), 404)
        assert "nope" in r.json()["message"]

    def test_scene_animated_matches_writer(self, client):
        spec = scenarios.catalog_by_id()["fig2_left"]
        r = client.get("/api/v1/scenarios/fig2_left/scene")
        assert r.status_code == 200
        assert r.text == write_scene_json(scenarios.build(spec).scene)

    def test_scene_baked_frame(self, client):
        spec = scenarios.catalog_by_id()["fig3_right"]
        r = client.get("/api/v1/scenarios/fig3_right/scene", params={"frame": 10})
        assert r.status_code == 200
        expected = write_scene_json(bake(scenarios.build(spec).scene, 10 / spec.n_frames))
        assert r.text == expected
        assert json.loads(r.text)["tracks"] == []

    def test_scene_frame_out_of_range(self, client):
        r = client.get("/api/v1/scenarios/fig3_right/scene", params={"frame": 37})
        assert r.status_code == 422
        error_schema_ok(r.json(), 422)

    def test_export_wrl_matches_writer(self, client):
        spec = scenarios.catalog_by_id()["fig2_right"]
        r = client.get("/api/v1/scenarios/fig2_right/export.wrl")
        assert r.status_code == 200
        assert r.headers["content-type"].startswith("model/vrml")
        assert r.content == write_vrml(scenarios.build(spec).scene).encode()

    def test_export_wrl_with_overrides(self, client):
        r = client.get(
            "/api/v1/scenarios/fig9/export.wrl",
            params={"length_wl": 0.7, "theta_deg": 90, "grid": "19x36"},
        )
        assert r.status_code == 200
        doc = scenarios.spec_to_jsonable(scenarios.catalog_by_id()["fig9"])
        doc["params"].update({"length_wl": 0.7, "theta_deg": 90.0, "grid": [19, 36]})
        expected = write_vrml(scenarios.build(scenarios.parse_config(doc)).scene)
        assert r.content == expected.encode()

    def test_export_wrl_rejects_override_for_wrong_kind(self, client):
        r = client.get("/api/v1/scenarios/fig2_left/export.wrl", params={"length_wl": 0.5})
        assert r.status_code == 400
        error_schema_ok(r.json(), 400)

    def test_export_svg(self, client):
        r = client.get(
            "/api/v1/scenarios/fig9/export.svg", params={"grid": "19x36"}
        )
        assert r.status_code == 200
        assert r.headers["content-type"].startswith("image/svg+xml")
        assert r.text.startswith("<?xml")

    def test_export_svg_without_cuts(self, client):
        r = client.get("/api/v1/scenarios/fig2_left/export.svg")
        assert r.status_code == 422
        error_schema_ok(r.json(), 422)


class TestComputeEndpoints:
    def test_pattern_matches_writer(self, client):
        r = client.post("/api/v1/pattern", json=PATTERN_BODY)
        assert r.status_code == 200
        arr = AntennaArray(
            (DipoleElement(ORIGIN, Vec3(0, 0, 1), "sinusoidal", 0.5),)
        )
        expected = write_mesh_json(pattern_grid(arr, SphericalGrid(31, 60)), mapping="field")
        assert r.text == expected

    def test_cuts_endpoint(self, client):
        r = client.post("/api/v1/cuts", json={"elements": CROSSED, "n": 90})
        assert r.status_code == 200
        doc = r.json()
        assert [c["plane"] for c in doc["cuts"]] == ["xoy", "yoz", "zox"]
        assert [c["color"] for c in doc["cuts"]] == ["#FF0000", "#00FF00", "#0000FF"]
        assert max(max(c["values"]) for c in doc["cuts"]) == 1

    def test_polarization_fig6_240(self, client):
        r = client.post(
            "/api/v1/polarization",
            json={
                "elements": CROSSED,
                "direction": {"theta_deg": 90, "phi_deg": 240},
                "convention": "toward_source",
            },
        )
        assert r.status_code == 200
        doc = r.json()
        assert doc["axial_ratio"] == pytest.approx(2.0, abs=1e-6)
        assert doc["handedness"] == "CCW"
        assert doc["classification"] == "elliptical"
        assert len(doc["major"]) == 3 and len(doc["minor"]) == 3

    def test_polarization_linear_marks_null_ratio(self, client):
        r = client.post(
            "/api/v1/polarization",
            json={"elements": CROSSED, "direction": {"theta_deg": 90, "phi_deg": 270}},
        )
        assert r.status_code == 200
        doc = r.json()
        assert doc["classification"] == "linear"
        assert doc["axial_ratio"] is None

    def test_characteristics_half_wave(self, client):
        r = client.post("/api/v1/characteristics", json={"length": 0.5})
        assert r.status_code == 200
        doc = r.json()
        assert doc["directivity"] == pytest.approx(1.641, abs=0.005)
        assert doc["r_in_ohm"] == pytest.approx(73.1, abs=0.2)
        assert doc["theta_max_deg"] == pytest.approx(90.0)
        assert doc["cut"]["plane"] == "zox"

    def test_characteristics_anti_resonant_422(self, client):
        r = client.post("/api/v1/characteristics", json={"length": 1.0})
        assert r.status_code == 422
        error_schema_ok(r.json(), 422)
        assert r.json()["code"] == "anti_resonant"

    def test_malformed_body_400_names_field(self, client):
        r = client.post("/api/v1/pattern", json={"elements": [], "grid": {"n_theta": 31, "n_phi": 60}})
        assert r.status_code == 400
        error_schema_ok(r.json(), 400)
        assert "elements" in r.json()["message"]

    def test_unknown_body_key_400(self, client):
        r = client.post(
            "/api/v1/pattern",
            json={**PATTERN_BODY, "bogus": 1},
        )
        assert r.status_code == 400
        assert "bogus" in r.json()["message"]

    def test_degenerate_pattern_422(self, client):
        r = client.post(
            "/api/v1/pattern",
            json={
                "elements": [{"axis": [0, 0, 1], "kind": "short", "amplitude": 0.0}],
                "grid": {"n_theta": 19, "n_phi": 36},
            },
        )
        assert r.status_code == 422
        error_schema_ok(r.json(), 422)


class TestStatelessness:
    def test_32_concurrent_pattern_requests_identical(self, client):
        def hit(_):
            return client.post("/api/v1/pattern", json=PATTERN_BODY)

        with ThreadPoolExecutor(max_workers=8) as pool:
            responses = list(pool.map(hit, range(32)))
        assert all(r.status_code == 200 for r in responses)
        bodies = {r.text for r in responses}
        assert len(bodies) == 1

    def test_repeat_requests_bitwise_stable(self, client):
        a = client.post("/api/v1/polarization", json={
            "elements": CROSSED, "direction": {"theta_deg": 90, "phi_deg": 0}
        })
        b = client.post("/api/v1/polarization", json={
            "elements": CROSSED, "direction": {"theta_deg": 90, "phi_deg": 0}
        })
        assert a.text == b.text
