"""Stateless HTTP/JSON compute API over the scenario catalog and library.

Every response body is produced by the same deterministic writers the CLI
uses, so service output is bit-identical to the direct library path. Errors
follow one schema: {"status": ..., "code": ..., "message": ...}.
"""

from __future__ import annotations

import math

import numpy as np
from fastapi import FastAPI, Query, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware

from .. import farfield, patterns, scenarios
from ..export import dump_json, write_mesh_json, write_scene_json, write_svg_polar, write_vrml
from ..farfield import AntennaArray, DipoleElement
from ..geometry import SphericalPoint, Vec3, scs_to_ccs
from ..patterns import AntiResonantLength
from ..scene import bake
from .models import (
    CharacteristicsRequest,
    CutsRequest,
    ElementModel,
    PatternRequest,
    PolarizationRequest,
)

JSON = "application/json"
VRML = "model/vrml"
SVG = "image/svg+xml"


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def _error_body(status: int, code: str, message: str) -> Response:
    return Response(
        content=dump_json({"status": status, "code": code, "message": message}),
        status_code=status,
        media_type=JSON,
    )


def _to_element(model: ElementModel) -> DipoleElement:
    axis = Vec3(*model.axis)
    if axis.norm() == 0.0:
        raise ApiError(400, "bad_request", "element field 'axis' must be nonzero")
    if model.kind == "sinusoidal" and model.length_wl is None:
        raise ApiError(400, "bad_request", "element field 'length_wl' required for kind 'sinusoidal'")
    return DipoleElement(
        Vec3(*model.center),
        axis,
        model.kind,
        model.length_wl,
        model.amplitude,
        math.radians(model.phase_deg),
    )


def _to_array(models: list[ElementModel]) -> AntennaArray:
    return AntennaArray(tuple(_to_element(m) for m in models))


def _cut_payload(cut: patterns.PlaneCut) -> dict:
    return {
        "plane": cut.plane,
        "angles_deg": np.degrees(cut.angles),
        "values": cut.values,
        "color": cut.color.hex(),
    }


def polarization_payload(ellipse: farfield.PolarizationEllipse) -> dict:
    return {
        "axial_ratio": None if math.isinf(ellipse.axial_ratio) else ellipse.axial_ratio,
        "handedness": ellipse.handedness,
        "classification": ellipse.classification,
        "convention": ellipse.convention,
        "major": list(ellipse.major_axis.as_tuple()),
        "minor": list(ellipse.minor_axis.as_tuple()),
    }


def characteristics_payload(length: float, cut_samples: int = 360) -> str:
    """Shared writer for the /characteristics body (raises on anti-resonance)."""
    r_in = patterns.input_radiation_resistance(length)
    dipole = AntennaArray(
        (DipoleElement(Vec3(0, 0, 0), Vec3(0, 0, 1), "sinusoidal", length),)
    )
    cuts = patterns.main_plane_cuts(dipole, cut_samples)
    cut = next(c for c in cuts if c.plane == "zox")
    return dump_json(
        {
            "length_wl": length,
            "directivity": patterns.directivity(dipole),
            "r_in_ohm": r_in,
            "theta_max_deg": patterns.first_maximum_from_axis(length),
            "cut": _cut_payload(cut),
        }
    )


def create_app(cors_origins: tuple[str, ...] = ("*",), ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="virtlab", docs_url=None, redoc_url=None)
    if cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(cors_origins),
            allow_methods=["*"],
            allow_headers=["*"],
        )
    by_id = scenarios.catalog_by_id()

    @app.exception_handler(ApiError)
    async def _api_error(_request: Request, exc: ApiError):
        return _error_body(exc.status, exc.code, exc.message)

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_request: Request, exc: RequestValidationError):
        first = exc.errors()[0]
        loc = ".".join(str(p) for p in first.get("loc", []) if p != "body")
        message = f"{loc or 'body'}: {first.get('msg', 'invalid')}"
        return _error_body(400, "bad_request", message)

    @app.exception_handler(AntiResonantLength)
    async def _anti_resonant(_request: Request, exc: AntiResonantLength):
        return _error_body(422, "anti_resonant", str(exc))

    @app.exception_handler(ValueError)
    async def _compute_error(_request: Request, exc: ValueError):
        return _error_body(422, "degenerate", str(exc))

    def _spec_or_404(scenario_id: str) -> scenarios.ScenarioSpec:
        spec = by_id.get(scenario_id)
        if spec is None:
            raise ApiError(404, "unknown_scenario", f"unknown scenario {scenario_id!r}")
        return spec

    def _spec_with_overrides(
        scenario_id: str,
        length_wl: float | None,
        theta_deg: float | None,
        phi_deg: float | None,
        grid: str | None,
    ) -> scenarios.ScenarioSpec:
        spec = _spec_or_404(scenario_id)
        overrides = {
            "length_wl": length_wl, "theta_deg": theta_deg, "phi_deg": phi_deg,
        }
        overrides = {k: v for k, v in overrides.items() if v is not None}
        if grid is not None:
            try:
                n_theta, n_phi = (int(x) for x in grid.lower().split("x"))
            except ValueError:
                raise ApiError(400, "bad_request", "query 'grid' must look like 91x180")
            overrides["grid"] = [n_theta, n_phi]
        if not overrides:
            return spec
        schema = scenarios.PARAM_SCHEMAS[spec.kind]
        unsupported = [k for k in overrides if k not in schema]
        if unsupported:
            raise ApiError(
                400, "bad_request",
                f"scenario {scenario_id!r} does not take parameter {unsupported[0]!r}",
            )
        doc = scenarios.spec_to_jsonable(spec)
        doc["params"] = {**doc["params"], **overrides}
        try:
            return scenarios.parse_config(doc)
        except scenarios.ConfigError as exc:
            raise ApiError(400, "bad_request", str(exc))

    @app.get("/api/v1/scenarios")
    def list_scenarios():
        body = dump_json(
            [{"id": s.id, "title": s.title, "kind": s.kind} for s in by_id.values()]
        )
        return Response(content=body, media_type=JSON)

    @app.get("/api/v1/scenarios/{scenario_id}")
    def get_scenario(scenario_id: str):
        spec = _spec_or_404(scenario_id)
        return Response(content=dump_json(scenarios.spec_to_jsonable(spec)), media_type=JSON)

    @app.get("/api/v1/scenarios/{scenario_id}/scene")
    def get_scene(scenario_id: str, frame: int | None = Query(default=None, ge=0)):
        spec = _spec_or_404(scenario_id)
        result = scenarios.build(spec)
        scene = result.scene
        if frame is not None:
            if frame >= spec.n_frames:
                raise ApiError(
                    422, "frame_out_of_range",
                    f"frame {frame} outside 0..{spec.n_frames - 1}",
                )
            scene = bake(scene, frame / spec.n_frames)
        return Response(content=write_scene_json(scene), media_type=JSON)

    @app.get("/api/v1/scenarios/{scenario_id}/export.wrl")
    def export_wrl(
        scenario_id: str,
        length_wl: float | None = Query(default=None, gt=0.0),
        theta_deg: float | None = Query(default=None, ge=0.0, le=180.0),
        phi_deg: float | None = Query(default=None, ge=0.0, le=360.0),
        grid: str | None = Query(default=None),
    ):
        spec = _spec_with_overrides(scenario_id, length_wl, theta_deg, phi_deg, grid)
        result = scenarios.build(spec)
        return Response(content=write_vrml(result.scene).encode(), media_type=VRML)

    @app.get("/api/v1/scenarios/{scenario_id}/export.svg")
    def export_svg(
        scenario_id: str,
        length_wl: float | None = Query(default=None, gt=0.0),
        theta_deg: float | None = Query(default=None, ge=0.0, le=180.0),
        phi_deg: float | None = Query(default=None, ge=0.0, le=360.0),
        grid: str | None = Query(default=None),
    ):
        spec = _spec_with_overrides(scenario_id, length_wl, theta_deg, phi_deg, grid)
        result = scenarios.build(spec)
        if result.cuts is None:
            raise ApiError(
                422, "no_cuts", f"scenario {scenario_id!r} has no plane cuts to plot"
            )
        return Response(content=write_svg_polar(result.cuts).encode(), media_type=SVG)

    @app.post("/api/v1/pattern")
    def pattern(req: PatternRequest):
        array = _to_array(req.elements)
        grid = patterns.SphericalGrid(req.grid.n_theta, req.grid.n_phi)
        pg = patterns.pattern_grid(array, grid)
        return Response(content=write_mesh_json(pg, mapping=req.mapping), media_type=JSON)

    @app.post("/api/v1/cuts")
    def cuts(req: CutsRequest):
        array = _to_array(req.elements)
        body = dump_json(
            {"cuts": [_cut_payload(c) for c in patterns.main_plane_cuts(array, req.n)]}
        )
        return Response(content=body, media_type=JSON)

    @app.post("/api/v1/polarization")
    def polarization(req: PolarizationRequest):
        array = _to_array(req.elements)
        direction = scs_to_ccs(
            SphericalPoint(
                1.0, math.radians(req.direction.theta_deg), math.radians(req.direction.phi_deg)
            )
        )
        e = farfield.array_farfield(array, direction)
        ellipse = farfield.polarization(e, direction, req.convention)
        return Response(content=dump_json(polarization_payload(ellipse)), media_type=JSON)

    @app.post("/api/v1/characteristics")
    def characteristics(req: CharacteristicsRequest):
        return Response(
            content=characteristics_payload(req.length, req.cut_samples), media_type=JSON
        )

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
