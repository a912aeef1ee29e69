"""Experiment presets and the sweep driver.

Bridges the netlist/engine pipeline, the closed-form laws, and the
coherence model: builds canonical circuits from parameter sets, scans
detector intensities over the phase sweep, and evaluates the named
fringe-behavior presets.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from importlib import resources

import numpy as np

from . import coherence, engine, montecarlo, netlist, oracle

_Q = math.pi / 4.0


class Expectation(enum.Enum):
    FLAT = "Flat"
    FRINGE = "Fringe"
    ZERO = "Zero"
    FRINGE_SWAPPED = "FringeSwapped"


@dataclass(frozen=True)
class ScenarioPreset:
    name: str
    description: str
    params: oracle.ScenarioParams
    expect_1: Expectation
    expect_2: Expectation
    swap_reference: str | None = None


def netlist_for(params: oracle.ScenarioParams, path_difference: float | None = None) -> str:
    """Canonical netlist text realizing a parameter set with a PHI sweep."""
    lines = [
        "source pol=V wavelength=632.8nm linewidth=1MHz lineshape=lorentzian",
        "prep diag",
        "split pbs",
    ]
    if params.has_hwp1:
        lines.append(f"hwp path=1 rot={math.degrees(params.hwp1_rot):.6g}deg")
    if params.has_hwp2:
        lines.append(f"hwp path=2 rot={math.degrees(params.hwp2_rot):.6g}deg")
    lines.append("phase path=1 phi=PHI")
    if path_difference is not None:
        lines.append(f"pathdiff length={path_difference:.17g}m")
    lines.append("merge pbs")
    if params.has_pol_a:
        lines.append(f"pol port=A angle={math.degrees(params.pol_a_angle):.6g}deg")
    if params.has_pol_b:
        lines.append(f"pol port=B angle={math.degrees(params.pol_b_angle):.6g}deg")
    return "\n".join(lines) + "\n"


def circuit_for(params: oracle.ScenarioParams, path_difference: float | None = None) -> netlist.Circuit:
    return netlist.parse(netlist_for(params, path_difference))


def _params(hwp1=None, hwp2=None, pol_a=None, pol_b=None) -> oracle.ScenarioParams:
    return oracle.ScenarioParams(
        hwp1_rot=hwp1 or 0.0,
        hwp2_rot=hwp2 or 0.0,
        pol_a_angle=pol_a or 0.0,
        pol_b_angle=pol_b or 0.0,
        has_hwp1=hwp1 is not None,
        has_hwp2=hwp2 is not None,
        has_pol_a=pol_a is not None,
        has_pol_b=pol_b is not None,
    )


PRESETS: dict[str, ScenarioPreset] = {
    p.name: p
    for p in [
        ScenarioPreset(
            "fig2-col1-top",
            "Wave plates at +45/+45, no analyzers: both screens flat.",
            _params(hwp1=_Q, hwp2=_Q),
            Expectation.FLAT, Expectation.FLAT,
        ),
        ScenarioPreset(
            "fig2-col1-bottom",
            "Wave plates at +45/-45, no analyzers: both screens flat.",
            _params(hwp1=_Q, hwp2=-_Q),
            Expectation.FLAT, Expectation.FLAT,
        ),
        ScenarioPreset(
            "fig2-col2-top",
            "Analyzer on port A only: fringe on screen 1.",
            _params(hwp1=_Q, hwp2=_Q, pol_a=_Q),
            Expectation.FRINGE, Expectation.FLAT,
        ),
        ScenarioPreset(
            "fig2-col2-middle",
            "Analyzer on port B only: fringe on screen 2.",
            _params(hwp1=_Q, hwp2=_Q, pol_b=_Q),
            Expectation.FLAT, Expectation.FRINGE,
        ),
        ScenarioPreset(
            "fig2-col2-bottom",
            "Analyzers on both ports: fringes on both screens.",
            _params(hwp1=_Q, hwp2=_Q, pol_a=_Q, pol_b=_Q),
            Expectation.FRINGE, Expectation.FRINGE,
        ),
        ScenarioPreset(
            "fig2-col3-top",
            "No wave plates, no analyzers: screen 1 flat, screen 2 dark.",
            _params(),
            Expectation.FLAT, Expectation.ZERO,
        ),
        ScenarioPreset(
            "fig2-col3-bottom",
            "No wave plates, diagonal analyzer on port A: fringe on screen 1.",
            _params(pol_a=_Q),
            Expectation.FRINGE, Expectation.ZERO,
        ),
        ScenarioPreset(
            "fig2-col4-top",
            "Reference eraser: +45/+45 plates, both analyzers diagonal.",
            _params(hwp1=_Q, hwp2=_Q, pol_a=_Q, pol_b=_Q),
            Expectation.FRINGE, Expectation.FRINGE,
        ),
        ScenarioPreset(
            "fig2-col4-bottom",
            "Path-2 plate anti-diagonal: screen-2 fringe inverts, screen 1 unchanged.",
            _params(hwp1=_Q, hwp2=-_Q, pol_a=_Q, pol_b=_Q),
            Expectation.FRINGE, Expectation.FRINGE_SWAPPED,
            swap_reference="fig2-col4-top",
        ),
    ]
}

FRINGING = (Expectation.FRINGE, Expectation.FRINGE_SWAPPED)


def preset_netlist(name: str) -> str:
    return netlist_for(PRESETS[name].params)


def preset_path(name: str):
    """Filesystem path of the bundled .onl file for a preset."""
    return resources.files("qeraser") / "presets" / f"{name}.onl"


@dataclass
class FringeScan:
    phi_values: np.ndarray
    i1: np.ndarray
    i2: np.ndarray
    visibility_1: float
    visibility_2: float
    columns: tuple[str, str]
    scenario: oracle.ScenarioParams | None = None


def _sweep_states(circuit: netlist.Circuit, phis: np.ndarray) -> np.ndarray:
    """Final (4, K) states of the pipeline with the sweep symbol bound per column."""
    phis = np.atleast_1d(np.asarray(phis, dtype=float))
    state = np.repeat(circuit.initial_state()[:, None], len(phis), axis=1)
    for el in circuit.elements:
        if el.kind == "PHASE" and "symbol" in el.params:
            sl = engine.rail_slice(el.params["path"])
            state[sl, :] = state[sl, :] * np.exp(1.0j * phis)[None, :]
        else:
            state = el.matrix @ state
    return state


def run_circuit(circuit: netlist.Circuit, phi: float | None = None):
    """Propagate at one phase value; returns (port A, port B) readings."""
    if circuit.sweep_symbol is not None and phi is None:
        raise ValueError("circuit declares a sweep symbol; a phase value is required")
    state = _sweep_states(circuit, np.array([phi if phi is not None else 0.0]))[:, 0]
    return (
        engine.read_port(state, "A", circuit.port_map),
        engine.read_port(state, "B", circuit.port_map),
    )


def _coherence_factor(circuit: netlist.Circuit) -> float:
    if circuit.path_difference <= 0.0:
        return 1.0
    model = coherence.CoherenceModel(
        coherence_length=coherence.coherence_length(circuit.source),
        path_difference=circuit.path_difference,
        lineshape=circuit.source.lineshape,
    )
    return coherence.visibility_factor(model)


def sweep_intensities(circuit: netlist.Circuit, phis: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Detector intensities over a phase sweep, cross terms attenuated by
    the coherence factor when the circuit declares a path difference."""
    phis = np.asarray(phis, dtype=float)
    if circuit.port_map is None:
        raise ValueError("cannot read ports: the circuit has no merge element")
    factor = _coherence_factor(circuit)
    if factor >= 1.0:
        state = _sweep_states(circuit, phis)
    else:
        # split each intensity into DC and cross parts via the half-period shift
        state = _sweep_states(circuit, np.concatenate([phis, phis + np.pi]))
    rail_a, rail_b = engine.rail_slice(engine.PORT_RAILS["A"]), engine.rail_slice(engine.PORT_RAILS["B"])
    ia = np.sum(np.abs(state[rail_a, :]) ** 2, axis=0)
    ib = np.sum(np.abs(state[rail_b, :]) ** 2, axis=0)
    if factor < 1.0:
        n = len(phis)
        ia = np.array([
            coherence.attenuate_fringe(0.5 * (ia[k] + ia[k + n]), 0.5 * (ia[k] - ia[k + n]), factor)
            for k in range(n)
        ])
        ib = np.array([
            coherence.attenuate_fringe(0.5 * (ib[k] + ib[k + n]), 0.5 * (ib[k] - ib[k + n]), factor)
            for k in range(n)
        ])
    return ia, ib


def _safe_visibility(phis: np.ndarray, values: np.ndarray) -> float:
    """Fitted visibility, or NaN when the grid is too short for a fit."""
    try:
        return montecarlo.estimate_visibility(phis, values)
    except ValueError:
        return float("nan")


def scan_circuit(circuit: netlist.Circuit, phis: np.ndarray) -> FringeScan:
    """Engine-side fringe scan of a compiled circuit."""
    phis = np.asarray(phis, dtype=float)
    i1, i2 = sweep_intensities(circuit, phis)
    columns = ("i_1", "i_2") if circuit.has_polarizer else ("i_A", "i_B")
    return FringeScan(
        phis, i1, i2,
        _safe_visibility(phis, i1),
        _safe_visibility(phis, i2),
        columns,
    )


def scan_oracle(params: oracle.ScenarioParams, phis: np.ndarray) -> FringeScan:
    """Closed-form fringe scan for the same parameter set."""
    phis = np.asarray(phis, dtype=float)
    p1, p2 = [], []
    for phi in phis:
        a, b = oracle.detector_intensities(params.with_phase(phi))
        p1.append(a)
        p2.append(b)
    i1, i2 = np.asarray(p1), np.asarray(p2)
    polarized = params.has_pol_a or params.has_pol_b
    columns = ("i_1", "i_2") if polarized else ("i_A", "i_B")
    return FringeScan(
        phis, i1, i2,
        _safe_visibility(phis, i1),
        _safe_visibility(phis, i2),
        columns,
        scenario=params,
    )


@dataclass(frozen=True)
class CheckLine:
    label: str
    passed: bool
    detail: str


@dataclass
class ScenarioReport:
    name: str
    checks: list[CheckLine]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def default_phase_grid(steps: int = 256) -> np.ndarray:
    return np.linspace(0.0, 2.0 * np.pi, steps, endpoint=False)


def _expectation_check(label, expect, phis, values, ref_values) -> CheckLine:
    vis = montecarlo.estimate_visibility(phis, values)
    spread = float(np.ptp(values))
    if expect is Expectation.FLAT:
        ok = spread < 1e-9
        detail = f"peak-to-peak {spread:.3e}"
    elif expect is Expectation.ZERO:
        peak = float(np.max(np.abs(values)))
        ok = peak < 1e-9
        detail = f"max |I| {peak:.3e}"
    elif expect is Expectation.FRINGE:
        ok = vis > 0.99
        detail = f"visibility {vis:.6f}"
    else:  # FRINGE_SWAPPED
        ok = vis > 0.99 and ref_values is not None
        if ok:
            ns = montecarlo.normalized_fringe(values)
            nr = montecarlo.normalized_fringe(ref_values)
            dev = float(np.max(np.abs(ns + nr)))
            ok = dev < 1e-6
            detail = f"visibility {vis:.6f}, inversion deviation {dev:.3e}"
        else:
            detail = f"visibility {vis:.6f}, no reference"
    return CheckLine(f"{label} {expect.value}", ok, detail)


def evaluate_preset(name: str, steps: int = 256) -> ScenarioReport:
    """Run a preset through both the engine and the closed-form laws and
    check every expected fringe behavior."""
    preset = PRESETS[name]
    phis = default_phase_grid(steps)
    eng = scan_circuit(circuit_for(preset.params), phis)
    orc = scan_oracle(preset.params, phis)

    ref_eng = ref_orc = None
    if preset.swap_reference is not None:
        ref = PRESETS[preset.swap_reference]
        ref_eng = scan_circuit(circuit_for(ref.params), phis)
        ref_orc = scan_oracle(ref.params, phis)

    checks = []
    for label, expect, e_vals, o_vals, re_vals, ro_vals in (
        (eng.columns[0], preset.expect_1, eng.i1, orc.i1,
         None if ref_eng is None else ref_eng.i1, None if ref_orc is None else ref_orc.i1),
        (eng.columns[1], preset.expect_2, eng.i2, orc.i2,
         None if ref_eng is None else ref_eng.i2, None if ref_orc is None else ref_orc.i2),
    ):
        checks.append(_expectation_check(f"engine {label}", expect, phis, e_vals, re_vals))
        checks.append(_expectation_check(f"oracle {label}", expect, phis, o_vals, ro_vals))
        if expect in FRINGING:
            dev = float(np.max(np.abs(
                montecarlo.normalized_fringe(e_vals) - montecarlo.normalized_fringe(o_vals)
            )))
            checks.append(CheckLine(
                f"engine-vs-oracle {label} normalized fringe", dev < 1e-9,
                f"max deviation {dev:.3e}",
            ))
    return ScenarioReport(name, checks)
