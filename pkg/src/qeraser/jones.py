"""Complex 2x2 polarization algebra.

Conventions: basis order is (H, V); angles are radians, measured
counterclockwise from the horizontal axis. Matrices act on column
vectors, so ``compose(a, b)`` applies ``b`` first.
"""

from __future__ import annotations

import numpy as np

H = np.array([1.0, 0.0], dtype=complex)
V = np.array([0.0, 1.0], dtype=complex)
D = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0)
A = np.array([1.0, -1.0], dtype=complex) / np.sqrt(2.0)

IDENTITY = np.eye(2, dtype=complex)


def jones_vector(h: complex, v: complex) -> np.ndarray:
    return np.array([h, v], dtype=complex)


def intensity(vec: np.ndarray) -> float:
    """|h|^2 + |v|^2 of a two-component field."""
    return float(np.sum(np.abs(np.asarray(vec)) ** 2))


def rotation_matrix(angle: float) -> np.ndarray:
    """Counterclockwise polarization rotation by ``angle``."""
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s], [s, c]], dtype=complex)


def hwp_matrix(axis: float) -> np.ndarray:
    """Half-wave plate with fast axis at ``axis``.

    Real symmetric form [[cos 2a, sin 2a], [sin 2a, -cos 2a]] (global
    phase dropped); reflects a linear polarization at angle b to 2a - b.
    """
    c, s = np.cos(2.0 * axis), np.sin(2.0 * axis)
    return np.array([[c, s], [s, -c]], dtype=complex)


def qwp_matrix(axis: float) -> np.ndarray:
    """Quarter-wave plate with fast axis at ``axis``: R(a) diag(1, i) R(-a)."""
    return rotation_matrix(axis) @ np.diag([1.0, 1.0j]) @ rotation_matrix(-axis)


def polarizer_matrix(angle: float) -> np.ndarray:
    """Ideal linear polarizer: rank-1 projector onto the axis at ``angle``."""
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c * c, s * c], [s * c, s * s]], dtype=complex)


def phase_matrix(phase: float) -> np.ndarray:
    """Uniform phase e^{i phase} on both polarization components."""
    return np.exp(1.0j * phase) * IDENTITY


def compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product a @ b (b applied first)."""
    return a @ b


def apply(m: np.ndarray, vec: np.ndarray) -> np.ndarray:
    return m @ np.asarray(vec, dtype=complex)


def project_amplitude(angle: float, vec: np.ndarray) -> complex:
    """Field amplitude transmitted along the analyzer axis at ``angle``."""
    return complex(np.cos(angle) * vec[0] + np.sin(angle) * vec[1])


def _basis_angle(basis: np.ndarray) -> float:
    b = np.asarray(basis, dtype=complex)
    if b.shape != (2,):
        raise ValueError("basis must be a two-component Jones vector")
    if np.allclose(b, H, atol=1e-12):
        return 0.0
    if np.allclose(b, V, atol=1e-12):
        return np.pi / 2.0
    raise ValueError("basis must be the unit H or V vector")


def symmetric_decompose(
    basis: np.ndarray, analyzer: float, delta: float
) -> tuple[np.ndarray, np.ndarray]:
    """Split a basis vector into the symmetric unit pair at +-delta around it.

    Returns (u_plus, u_minus), oriented so u_plus is the member rotated
    toward the analyzer axis. The pair satisfies, for any analyzer angle t:

        <t|u_plus> + <t|u_minus> = 2 cos(delta) <t|basis>

    and u_minus is extinguished by the analyzer (<t|u_minus> = 0) when
    delta places it perpendicular to t: delta = t for the V basis,
    delta = pi/2 - t for the H basis.
    """
    if not 0.0 <= delta < np.pi / 2.0:
        raise ValueError("delta must lie in [0, pi/2)")
    base = _basis_angle(basis)
    # wrap the analyzer offset into (-pi/2, pi/2] to pick the near rotation sense
    offset = (analyzer - base + np.pi / 2.0) % np.pi - np.pi / 2.0
    sign = 1.0 if offset >= 0.0 else -1.0
    plus = base + sign * delta
    minus = base - sign * delta
    u_plus = np.array([np.cos(plus), np.sin(plus)], dtype=complex)
    u_minus = np.array([np.cos(minus), np.sin(minus)], dtype=complex)
    return u_plus, u_minus
