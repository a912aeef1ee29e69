"""Photon-counting statistics and screen-image synthesis.

Clicks are sampled photon-by-photon: each of the ``photons_per_bin``
photons in a phase bin registers on a detector with probability equal to
the analytic intensity there (in units of the source intensity), drawn
as one binomial variate per (bin, detector). Every bin owns an
independent PCG64 stream derived from SeedSequence([seed, bin]), so
histograms are bit-reproducible for a fixed seed and bins can be
evaluated in parallel. The generator name travels with the histogram.

Screen images model the deliberate spatial tilt of the recombined beams:
a linear phase ramp along x composed with a circular Gaussian beam
envelope, normalized to unit peak before export. Images serialize as
binary PGM (P5, maxval 255, row-major, top-left origin).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import oracle

RNG_ALGORITHM = "pcg64"

_MAX_SEED = 2**64 - 1


@dataclass
class ClickHistogram:
    phi: np.ndarray
    clicks_1: np.ndarray
    clicks_2: np.ndarray
    expected_1: np.ndarray  # expected counts per bin
    expected_2: np.ndarray
    photons_per_bin: int
    seed: int
    rng: str = RNG_ALGORITHM


def _bin_generator(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, index])))


def sample_clicks_from_probs(
    phi: np.ndarray,
    probs_1: np.ndarray,
    probs_2: np.ndarray,
    photons_per_bin: int,
    seed: int,
) -> ClickHistogram:
    """Draw per-bin detector clicks for precomputed click probabilities."""
    phi = np.asarray(phi, dtype=float)
    if len(phi) < 2:
        raise ValueError("at least two phase bins are required")
    if photons_per_bin < 1:
        raise ValueError("photons_per_bin must be at least 1")
    if not 0 <= seed <= _MAX_SEED:
        raise ValueError("seed must be a non-negative 64-bit integer")
    p1 = np.clip(np.asarray(probs_1, dtype=float), 0.0, 1.0)
    p2 = np.clip(np.asarray(probs_2, dtype=float), 0.0, 1.0)
    if p1.shape != phi.shape or p2.shape != phi.shape:
        raise ValueError("probability arrays must match the phase grid")
    clicks_1 = np.empty(len(phi), dtype=np.int64)
    clicks_2 = np.empty(len(phi), dtype=np.int64)
    for j in range(len(phi)):
        gen = _bin_generator(seed, j)
        clicks_1[j] = gen.binomial(photons_per_bin, p1[j])
        clicks_2[j] = gen.binomial(photons_per_bin, p2[j])
    return ClickHistogram(
        phi, clicks_1, clicks_2,
        p1 * photons_per_bin, p2 * photons_per_bin,
        photons_per_bin, seed,
    )


def sample_clicks(
    scenario: oracle.ScenarioParams, bins: int, photons_per_bin: int, seed: int
) -> ClickHistogram:
    """Click histogram over a uniform phase grid of ``bins`` bins in [0, 2pi)."""
    if bins < 2:
        raise ValueError("bins must be at least 2")
    phi = 2.0 * np.pi * np.arange(bins) / bins
    p1, p2 = zip(*(oracle.detector_intensities(scenario.with_phase(v)) for v in phi))
    return sample_clicks_from_probs(phi, np.array(p1), np.array(p2), photons_per_bin, seed)


def estimate_visibility(phi: np.ndarray, values: np.ndarray) -> float:
    """Fringe visibility from a least-squares fit of a + b cos(phi + c).

    Returns (Imax - Imin)/(Imax + Imin) of the fitted curve; flat or
    all-zero data yields 0.
    """
    phi = np.asarray(phi, dtype=float)
    y = np.asarray(values, dtype=float)
    if phi.shape != y.shape:
        raise ValueError("phase and value arrays must have the same shape")
    if len(phi) < 8:
        raise ValueError("at least eight phase samples are required")
    span = float(np.max(phi) - np.min(phi))
    if span < 2.0 * np.pi * (1.0 - 2.0 / len(phi)):
        raise ValueError("samples must span at least one fringe period")
    design = np.column_stack([np.ones_like(phi), np.cos(phi), np.sin(phi)])
    (dc, bc, bs), *_ = np.linalg.lstsq(design, y, rcond=None)
    amplitude = float(np.hypot(bc, bs))
    if dc <= 0.0 or amplitude == 0.0:
        return 0.0
    return amplitude / float(dc)


def normalized_fringe(values: np.ndarray) -> np.ndarray:
    """Mean-subtracted, amplitude-normalized fringe curve."""
    y = np.asarray(values, dtype=float)
    amplitude = float(np.ptp(y)) / 2.0
    if amplitude == 0.0:
        raise ValueError("cannot normalize a flat curve")
    return (y - y.mean()) / amplitude


@dataclass
class ScreenImage:
    width: int
    height: int
    samples: np.ndarray  # (height, width) float64, peak-normalized
    tilt_period: float
    beam_waist: float
    phi0: float = 0.0
    meta: dict = field(default_factory=dict)


def _envelope(width: int, height: int, beam_waist: float) -> np.ndarray:
    x = np.arange(width, dtype=float)
    y = np.arange(height, dtype=float)
    cx, cy = (width - 1) / 2.0, (height - 1) / 2.0
    r2 = (x[None, :] - cx) ** 2 + (y[:, None] - cy) ** 2
    return np.exp(-r2 / beam_waist**2)


def render_from_curve(
    curve,
    width: int = 512,
    height: int = 512,
    tilt_period: float = 64.0,
    beam_waist: float = 180.0,
    phi0: float = 0.0,
) -> ScreenImage:
    """Render a screen image from an intensity-vs-phase callable.

    Pixel (x, y) carries curve(phi0 + 2 pi x / tilt_period) times the
    Gaussian beam envelope; the result is normalized to peak 1.
    """
    if width < 8 or height < 8:
        raise ValueError("width and height must be at least 8 pixels")
    if tilt_period <= 0.0:
        raise ValueError("tilt_period must be positive")
    if beam_waist <= 0.0:
        raise ValueError("beam_waist must be positive")
    phi_x = phi0 + 2.0 * np.pi * np.arange(width, dtype=float) / tilt_period
    profile = np.clip(np.asarray(curve(phi_x), dtype=float), 0.0, None)
    samples = _envelope(width, height, beam_waist) * profile[None, :]
    peak = samples.max()
    if peak > 0.0:
        samples = samples / peak
    return ScreenImage(width, height, samples, tilt_period, beam_waist, phi0)


def render_screen(
    scenario: oracle.ScenarioParams,
    port: str = "A",
    **image_params,
) -> ScreenImage:
    """Render one detector's screen from the closed-form intensity law."""
    if port not in ("A", "B"):
        raise ValueError("port must be 'A' or 'B'")
    idx = 0 if port == "A" else 1

    def curve(phis):
        return np.array([
            oracle.detector_intensities(scenario.with_phase(v))[idx] for v in phis
        ])

    image = render_from_curve(curve, **image_params)
    image.meta["port"] = port
    return image


def column_profile(image: ScreenImage) -> np.ndarray:
    """Envelope-corrected mean intensity per column (the fringe profile)."""
    env = _envelope(image.width, image.height, image.beam_waist)
    return np.mean(image.samples / env, axis=0)


def column_contrast(image: ScreenImage) -> float:
    """(max - min)/(max + min) of the envelope-corrected column profile."""
    profile = column_profile(image)
    hi, lo = float(profile.max()), float(profile.min())
    if hi + lo <= 0.0:
        return 0.0
    return (hi - lo) / (hi + lo)


def quantize(image: ScreenImage) -> np.ndarray:
    return np.rint(255.0 * image.samples).astype(np.uint8)


def encode_pgm(image: ScreenImage) -> bytes:
    """Binary PGM: P5, maxval 255, rows top to bottom."""
    header = f"P5\n{image.width} {image.height}\n255\n".encode("ascii")
    return header + quantize(image).tobytes()


def decode_pgm(data: bytes) -> tuple[int, int, np.ndarray]:
    """Parse a maxval-255 P5 payload back into (width, height, samples)."""
    parts = data.split(b"\n", 3)
    if parts[0] != b"P5":
        raise ValueError("not a binary PGM payload")
    width, height = (int(v) for v in parts[1].split())
    if int(parts[2]) != 255:
        raise ValueError("unsupported maxval")
    pixels = np.frombuffer(parts[3], dtype=np.uint8, count=width * height)
    return width, height, pixels.reshape(height, width)
