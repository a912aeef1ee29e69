"""FastAPI service wrapping the simulator core."""

from __future__ import annotations

import math

import numpy as np
from fastapi import FastAPI, HTTPException, Response

from .. import __version__, montecarlo, netlist, scenarios, verify
from . import schemas

app = FastAPI(
    title="qeraser",
    description="Polarization-interferometry simulation service",
    version=__version__,
)


def _resolve_circuit(req: schemas.CircuitInput) -> netlist.Circuit:
    if req.preset is not None:
        if req.preset not in scenarios.PRESETS:
            raise HTTPException(status_code=404, detail=f"unknown preset {req.preset!r}")
        text = scenarios.preset_netlist(req.preset)
    else:
        text = req.text or ""
    try:
        return netlist.parse(text)
    except netlist.NetlistParseError as exc:
        raise HTTPException(
            status_code=422,
            detail=[e.__dict__ for e in exc.errors],
        ) from exc


def _finite(value: float) -> float | None:
    return None if math.isnan(value) else value


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/parse", response_model=schemas.ParseResponse)
def parse_netlist(req: schemas.ParseRequest) -> schemas.ParseResponse:
    errors = netlist.parse_errors(req.text)
    if errors:
        return schemas.ParseResponse(
            valid=False,
            errors=[schemas.Diagnostic(**e.__dict__) for e in errors],
        )
    return schemas.ParseResponse(valid=True, canonical=netlist.format(netlist.parse(req.text)))


@app.post("/sweep", response_model=schemas.SweepResponse)
def sweep(req: schemas.SweepRequest) -> schemas.SweepResponse:
    circuit = _resolve_circuit(req)
    if circuit.sweep_symbol is None:
        raise HTTPException(status_code=400, detail="circuit declares no PHI sweep symbol")
    phis = np.linspace(req.phi_from, req.phi_to, req.steps)
    scan = scenarios.scan_circuit(circuit, phis)
    return schemas.SweepResponse(
        columns=scan.columns,
        phi_rad=scan.phi_values.tolist(),
        series_1=scan.i1.tolist(),
        series_2=scan.i2.tolist(),
        visibility_1=_finite(scan.visibility_1),
        visibility_2=_finite(scan.visibility_2),
    )


@app.get("/scenarios", response_model=list[schemas.ScenarioSummary])
def list_scenarios() -> list[schemas.ScenarioSummary]:
    return [
        schemas.ScenarioSummary(
            name=p.name,
            description=p.description,
            expect_1=p.expect_1.value,
            expect_2=p.expect_2.value,
        )
        for p in scenarios.PRESETS.values()
    ]


@app.post("/scenarios/{name}", response_model=schemas.ScenarioResponse)
def run_scenario(name: str) -> schemas.ScenarioResponse:
    if name not in scenarios.PRESETS:
        raise HTTPException(status_code=404, detail=f"unknown preset {name!r}")
    report = scenarios.evaluate_preset(name)
    return schemas.ScenarioResponse(
        name=report.name,
        passed=report.passed,
        checks=[schemas.CheckModel(label=c.label, passed=c.passed, detail=c.detail)
                for c in report.checks],
    )


@app.post("/mc", response_model=schemas.McResponse)
def monte_carlo(req: schemas.McRequest) -> schemas.McResponse:
    circuit = _resolve_circuit(req)
    phis = 2.0 * np.pi * np.arange(req.bins) / req.bins
    p1, p2 = scenarios.sweep_intensities(circuit, phis)
    hist = montecarlo.sample_clicks_from_probs(phis, p1, p2, req.photons, req.seed)
    return schemas.McResponse(
        phi_rad=hist.phi.tolist(),
        clicks_1=hist.clicks_1.tolist(),
        clicks_2=hist.clicks_2.tolist(),
        expected_1=hist.expected_1.tolist(),
        expected_2=hist.expected_2.tolist(),
        photons_per_bin=hist.photons_per_bin,
        seed=hist.seed,
        rng=hist.rng,
    )


@app.post("/image")
def image(req: schemas.ImageRequest) -> Response:
    circuit = _resolve_circuit(req)
    idx = 0 if req.port == "A" else 1

    def curve(phi_values):
        return scenarios.sweep_intensities(circuit, phi_values)[idx]

    img = montecarlo.render_from_curve(
        curve, width=req.width, height=req.height,
        tilt_period=req.tilt_period, beam_waist=req.beam_waist, phi0=req.phi0,
    )
    return Response(
        content=montecarlo.encode_pgm(img),
        media_type="image/x-portable-graymap",
    )


@app.post("/verify", response_model=schemas.VerifyResponse)
def run_verify() -> schemas.VerifyResponse:
    results = verify.run_all()
    return schemas.VerifyResponse(
        passed=all(r.passed for r in results),
        checks=[schemas.CheckModel(label=r.name, passed=r.passed, detail=r.detail)
                for r in results],
    )
