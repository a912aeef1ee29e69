"""Dual-rail propagation engine.

State layout: four complex amplitudes [a1h, a1v, a2h, a2v] over
(path 1, path 2) x (H, V). Elements are 4x4 transfer matrices applied
left-to-right in declaration order. Propagation also accepts a batch of
states as a (4, K) array, which the phase sweep uses.

Port mapping: the source is injected on rail 2, so after the final merge
the rail-2 output carries the straight-through horizontal component and
is wired to port A (screen 1); rail 1 is port B (screen 2).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from . import jones

# Reflection phases of the splitting elements (symmetric convention).
# Module-level so verification hooks can flip them and watch checks fail.
PBS_REFLECTION_PHASE: complex = 1.0j
BS_REFLECTION_PHASE: complex = 1.0j

PORT_RAILS: Mapping[str, int] = {"A": 2, "B": 1}

# rail slices in the 4-amplitude layout
_RAIL_SLICE = {1: slice(0, 2), 2: slice(2, 4)}


def rail_slice(path: int) -> slice:
    """Index slice of one rail's (H, V) pair in the 4-amplitude layout."""
    return _RAIL_SLICE[path]


@dataclass(frozen=True)
class Element:
    """One pipeline stage: a tagged 4x4 transfer matrix plus metadata."""

    kind: str
    matrix: np.ndarray
    params: dict = field(default_factory=dict)
    location: int | None = None


@dataclass(frozen=True)
class DetectorReading:
    port: str
    intensity: float
    fields: np.ndarray  # two-component Jones vector at the port


def pbs_element(leakage: float = 0.0, location: int | None = None) -> Element:
    """Polarizing splitter: H transmits within its rail, V reflects across
    rails with the reflection phase.

    ``leakage`` is the intensity fraction routed to the wrong output
    (imperfect extinction); the element stays unitary for any value in
    [0, 1]. Default 0 is the ideal cube.
    """
    if not 0.0 <= leakage <= 1.0:
        raise ValueError("leakage must lie in [0, 1]")
    t = np.sqrt(1.0 - leakage)
    r = np.sqrt(leakage)
    p = PBS_REFLECTION_PHASE
    m = np.zeros((4, 4), dtype=complex)
    # H sector (indices 0, 2): nominally transmitted
    m[0, 0] = m[2, 2] = t
    m[0, 2] = m[2, 0] = p * r
    # V sector (indices 1, 3): nominally reflected
    m[1, 1] = m[3, 3] = r
    m[1, 3] = m[3, 1] = p * t
    return Element("PBS", m, {"leakage": leakage}, location)


def bs_element(location: int | None = None) -> Element:
    """Polarization-independent 50:50 splitter (transmit 1/sqrt2, reflect i/sqrt2)."""
    t = 1.0 / np.sqrt(2.0)
    r = BS_REFLECTION_PHASE / np.sqrt(2.0)
    m = np.zeros((4, 4), dtype=complex)
    for k in (0, 1):  # per polarization component
        m[k, k] = m[k + 2, k + 2] = t
        m[k, k + 2] = m[k + 2, k] = r
    return Element("BS", m, {}, location)


def mirror_element(location: int | None = None) -> Element:
    """Fold mirror, modeled as identity; path phase is carried by the
    phase element instead."""
    return Element("MIRROR", np.eye(4, dtype=complex), {}, location)


def lift_to_path(
    m: np.ndarray,
    path: int,
    kind: str = "JONES",
    params: dict | None = None,
    location: int | None = None,
) -> Element:
    """Embed a 2x2 Jones matrix as a block acting on one rail only."""
    if path not in (1, 2):
        raise ValueError("path must be 1 or 2")
    full = np.eye(4, dtype=complex)
    s = _RAIL_SLICE[path]
    full[s, s] = m
    p = dict(params or {})
    p.setdefault("path", path)
    return Element(kind, full, p, location)


def phase_element(phase: float, path: int, location: int | None = None) -> Element:
    return lift_to_path(
        jones.phase_matrix(phase), path, "PHASE", {"phase": phase}, location
    )


def propagate(state: np.ndarray, elements: list[Element]) -> np.ndarray:
    """Left-fold the element matrices over the state in declaration order."""
    out = np.asarray(state, dtype=complex)
    for el in elements:
        out = el.matrix @ out
    return out


def total_intensity(state: np.ndarray) -> float:
    return float(np.sum(np.abs(state) ** 2))


def read_port(
    state: np.ndarray, port: str, port_map: Mapping[str, int] | None
) -> DetectorReading:
    """Field and intensity at an output port after the merge element.

    ``port_map`` comes from the circuit's merge statement; reading a port
    of a circuit that never merged is an error.
    """
    if port not in ("A", "B"):
        raise ValueError("port must be 'A' or 'B'")
    if port_map is None:
        raise ValueError("cannot read a port before a merge element is declared")
    rail = port_map[port]
    fields = np.asarray(state, dtype=complex)[_RAIL_SLICE[rail]].copy()
    return DetectorReading(port, jones.intensity(fields), fields)
