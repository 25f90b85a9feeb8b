"""Pydantic request models for the compute API.

Degrees and wavelengths at this boundary, matching the scenario configs.
Unknown body keys are rejected so malformed requests fail loudly.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ElementModel(StrictModel):
    center: list[float] = Field(default=[0.0, 0.0, 0.0], min_length=3, max_length=3)
    axis: list[float] = Field(min_length=3, max_length=3)
    kind: Literal["short", "sinusoidal"] = "short"
    length_wl: float | None = Field(default=None, gt=0.0)
    amplitude: float = Field(default=1.0, ge=0.0)
    phase_deg: float = 0.0


class GridModel(StrictModel):
    n_theta: int = Field(ge=2)
    n_phi: int = Field(ge=2)


class DirectionModel(StrictModel):
    theta_deg: float = Field(ge=0.0, le=180.0)
    phi_deg: float = Field(ge=0.0, le=360.0)


class PatternRequest(StrictModel):
    elements: list[ElementModel] = Field(min_length=1)
    grid: GridModel = GridModel(n_theta=91, n_phi=180)
    mapping: Literal["field", "power"] = "field"


class CutsRequest(StrictModel):
    elements: list[ElementModel] = Field(min_length=1)
    n: int = Field(default=360, ge=8)


class PolarizationRequest(StrictModel):
    elements: list[ElementModel] = Field(min_length=1)
    direction: DirectionModel
    convention: Literal["toward_observer", "toward_source"] = "toward_observer"


class CharacteristicsRequest(StrictModel):
    length: float = Field(gt=0.0)
    cut_samples: int = Field(default=360, ge=8)
