"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

import math

from pydantic import BaseModel, Field, model_validator


class CircuitInput(BaseModel):
    """One of ``text`` (netlist source) or ``preset`` (bundled name)."""

    text: str | None = None
    preset: str | None = None

    @model_validator(mode="after")
    def _one_of(self):
        if (self.text is None) == (self.preset is None):
            raise ValueError("provide exactly one of 'text' or 'preset'")
        return self


class Diagnostic(BaseModel):
    line: int
    column: int
    code: str
    message: str


class ParseRequest(BaseModel):
    text: str


class ParseResponse(BaseModel):
    valid: bool
    canonical: str | None = None
    errors: list[Diagnostic] = []


class SweepRequest(CircuitInput):
    phi_from: float = 0.0
    phi_to: float = 2.0 * math.pi
    steps: int = Field(default=256, ge=2)


class SweepResponse(BaseModel):
    columns: tuple[str, str]
    phi_rad: list[float]
    series_1: list[float]
    series_2: list[float]
    visibility_1: float | None
    visibility_2: float | None


class ScenarioSummary(BaseModel):
    name: str
    description: str
    expect_1: str
    expect_2: str


class CheckModel(BaseModel):
    label: str
    passed: bool
    detail: str


class ScenarioResponse(BaseModel):
    name: str
    passed: bool
    checks: list[CheckModel]


class McRequest(CircuitInput):
    photons: int = Field(default=1000, ge=1)
    bins: int = Field(default=8, ge=2)
    seed: int = Field(default=42, ge=0)


class McResponse(BaseModel):
    phi_rad: list[float]
    clicks_1: list[int]
    clicks_2: list[int]
    expected_1: list[float]
    expected_2: list[float]
    photons_per_bin: int
    seed: int
    rng: str


class ImageRequest(CircuitInput):
    port: str = Field(default="A", pattern="^[AB]$")
    width: int = Field(default=512, ge=8)
    height: int = Field(default=512, ge=8)
    tilt_period: float = Field(default=64.0, gt=0)
    beam_waist: float = Field(default=180.0, gt=0)
    phi0: float = 0.0


class VerifyResponse(BaseModel):
    passed: bool
    checks: list[CheckModel]
