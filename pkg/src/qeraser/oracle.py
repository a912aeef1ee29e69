"""Closed-form detector intensities for the analyzed two-path interferometer.

This module evaluates the output fields and screen intensities of the
PBS-locked interferometer directly from trigonometric amplitude maps,
with no matrix machinery, so it can cross-validate the dual-rail engine.

Amplitude map (unit-amplitude source halves, rotations r1 on the
vertical path and r2 on the horizontal path):

    vx = cos(r1) sin(r1)    horizontal component grown on the V path
    vy = cos(r1)^2          vertical component surviving on the V path
    hx = cos(r2)^2          horizontal component surviving on the H path
    hy = sin(r2) cos(r2)    vertical component grown on the H path

A path with no wave plate reduces to (vy, vx) = (1, 0) or (hx, hy) = (1, 0).
Absolute scale: this map projects twice per rotation (amplitudes go as
cos^2), which is half the single-projection scale the engine produces;
only normalized fringe shapes are comparable between the two.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class ScenarioParams:
    """Angle set and element-presence flags for one experiment setting.

    Rotations are the polarization-rotation angles of the in-path wave
    plates; analyzer angles are the output polarizer axes. All radians.
    """

    hwp1_rot: float = 0.0
    hwp2_rot: float = 0.0
    pol_a_angle: float = 0.0
    pol_b_angle: float = 0.0
    phase: float = 0.0
    has_hwp1: bool = True
    has_hwp2: bool = True
    has_pol_a: bool = False
    has_pol_b: bool = False

    def with_phase(self, phase: float) -> "ScenarioParams":
        return ScenarioParams(
            self.hwp1_rot, self.hwp2_rot, self.pol_a_angle, self.pol_b_angle,
            phase, self.has_hwp1, self.has_hwp2, self.has_pol_a, self.has_pol_b,
        )


@dataclass(frozen=True)
class PathAmplitudes:
    vx: float
    vy: float
    hx: float
    hy: float


def amplitudes(params: ScenarioParams) -> PathAmplitudes:
    """Per-path polarization amplitudes after the recombining splitter."""
    if params.has_hwp1:
        r1 = params.hwp1_rot
        vx, vy = np.cos(r1) * np.sin(r1), np.cos(r1) ** 2
    else:
        vx, vy = 0.0, 1.0
    if params.has_hwp2:
        r2 = params.hwp2_rot
        hx, hy = np.cos(r2) ** 2, np.sin(r2) * np.cos(r2)
    else:
        hx, hy = 1.0, 0.0
    return PathAmplitudes(float(vx), float(vy), float(hx), float(hy))


def field_a(params: ScenarioParams) -> np.ndarray:
    """Port-A field before its analyzer: (hx - e^{i phase} vy) / sqrt2 on (H, V)."""
    amp = amplitudes(params)
    ph = np.exp(1.0j * params.phase)
    return np.array([amp.hx, -ph * amp.vy], dtype=complex) / _SQRT2


def field_b(params: ScenarioParams) -> np.ndarray:
    """Port-B field before its analyzer: i (e^{i phase} vx, hy) / sqrt2 on (H, V)."""
    amp = amplitudes(params)
    ph = np.exp(1.0j * params.phase)
    return 1.0j * np.array([ph * amp.vx, amp.hy], dtype=complex) / _SQRT2


def port_intensity_a(params: ScenarioParams) -> float:
    amp = amplitudes(params)
    return 0.5 * (amp.hx**2 + amp.vy**2)


def port_intensity_b(params: ScenarioParams) -> float:
    amp = amplitudes(params)
    return 0.5 * (amp.vx**2 + amp.hy**2)


def intensity_1(params: ScenarioParams) -> float:
    """Screen-1 intensity behind the port-A analyzer."""
    if not params.has_pol_a:
        raise ValueError("intensity_1 requires the port-A polarizer")
    amp = amplitudes(params)
    xi = params.pol_a_angle
    return 0.5 * (
        amp.hx**2 * np.cos(xi) ** 2
        + amp.vy**2 * np.sin(xi) ** 2
        - amp.hx * amp.vy * np.sin(2.0 * xi) * np.cos(params.phase)
    )


def intensity_2(params: ScenarioParams) -> float:
    """Screen-2 intensity behind the port-B analyzer."""
    if not params.has_pol_b:
        raise ValueError("intensity_2 requires the port-B polarizer")
    amp = amplitudes(params)
    th = params.pol_b_angle
    return 0.5 * (
        amp.hy**2 * np.sin(th) ** 2
        + amp.vx**2 * np.cos(th) ** 2
        - amp.hy * amp.vx * np.sin(2.0 * th) * np.cos(params.phase)
    )


def detector_intensities(params: ScenarioParams) -> tuple[float, float]:
    """Screen intensities per port: analyzed when the port has a polarizer,
    raw port intensity otherwise. Units of the source intensity."""
    p1 = intensity_1(params) if params.has_pol_a else port_intensity_a(params)
    p2 = intensity_2(params) if params.has_pol_b else port_intensity_b(params)
    return p1, p2


def intensity_1_diag_hwps(analyzer: float, phase: float) -> float:
    """Screen-1 law with both wave plates at +-45 degrees: (1/8)(1 - sin2a cos phase)."""
    return 0.125 * (1.0 - np.sin(2.0 * analyzer) * np.cos(phase))


def intensity_2_diag_hwps(analyzer: float, phase: float) -> float:
    """Screen-2 law with both wave plates at +-45 degrees: (1/8)(1 - sin2a cos phase).

    Same fringe sign as screen 1; the two screens swap against each other
    only for opposite analyzer basis choices.
    """
    return 0.125 * (1.0 - np.sin(2.0 * analyzer) * np.cos(phase))


def intensity_1_diag_pols(hwp1_rot: float, hwp2_rot: float, phase: float) -> float:
    """Screen-1 law with the analyzer fixed at 45 degrees."""
    c1, c2 = np.cos(hwp1_rot), np.cos(hwp2_rot)
    return 0.5 * (0.5 * (c2**4 + c1**4) - c2**2 * c1**2 * np.cos(phase))


def intensity_2_diag_pols(hwp1_rot: float, hwp2_rot: float, phase: float) -> float:
    """Screen-2 law with the analyzer fixed at 45 degrees."""
    s1c1 = np.sin(hwp1_rot) * np.cos(hwp1_rot)
    s2c2 = np.sin(hwp2_rot) * np.cos(hwp2_rot)
    return 0.5 * (0.5 * (s2c2**2 + s1c1**2) - s2c2 * s1c1 * np.cos(phase))
