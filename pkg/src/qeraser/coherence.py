"""Finite-linewidth source model: coherence length and fringe attenuation.

Normalization convention: the visibility factor equals 1/e at a path
difference of exactly one coherence length for both lineshapes
(Lorentzian: exp(-r), Gaussian: exp(-r^2), with r = dL / L_c). The factor
multiplies only the phase-dependent cross term of an intensity; the DC
part is the sum of single-arm intensities and is unaffected.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

C_VACUUM = 299_792_458.0  # m/s

LORENTZIAN = "lorentzian"
GAUSSIAN = "gaussian"
LINESHAPES = (LORENTZIAN, GAUSSIAN)


@dataclass(frozen=True)
class SourceSpec:
    wavelength: float  # meters
    linewidth: float  # hertz
    lineshape: str = LORENTZIAN
    polarization: np.ndarray | None = None  # normalized Jones vector
    intensity: float = 1.0

    def __post_init__(self):
        if self.wavelength <= 0.0:
            raise ValueError("wavelength must be positive")
        if self.linewidth <= 0.0:
            raise ValueError("linewidth must be positive")
        if self.lineshape not in LINESHAPES:
            raise ValueError(f"unknown lineshape {self.lineshape!r}")


@dataclass(frozen=True)
class CoherenceModel:
    coherence_length: float  # meters
    path_difference: float  # meters
    lineshape: str = LORENTZIAN


def coherence_length(source: SourceSpec) -> float:
    """Coherence length in meters from the FWHM linewidth.

    Lorentzian: c / (pi dnu). Gaussian: sqrt(2 ln2 / pi) c / dnu.
    """
    if source.lineshape == LORENTZIAN:
        return C_VACUUM / (np.pi * source.linewidth)
    return np.sqrt(2.0 * np.log(2.0) / np.pi) * C_VACUUM / source.linewidth


def visibility_factor(model: CoherenceModel) -> float:
    """Fringe-contrast multiplier in [0, 1] for the given path difference."""
    if model.path_difference < 0.0:
        raise ValueError("path difference must be non-negative")
    if model.coherence_length <= 0.0:
        raise ValueError("coherence length must be positive")
    r = model.path_difference / model.coherence_length
    if model.lineshape == LORENTZIAN:
        return float(np.exp(-r))
    if model.lineshape == GAUSSIAN:
        return float(np.exp(-r * r))
    raise ValueError(f"unknown lineshape {model.lineshape!r}")


def attenuate_fringe(i_dc: float, i_cross: float, factor: float) -> float:
    """Recombine an intensity from its DC part and a scaled cross term."""
    if not 0.0 <= factor <= 1.0:
        raise ValueError("factor must lie in [0, 1]")
    return i_dc + factor * i_cross
