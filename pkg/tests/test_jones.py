import math

import numpy as np
import pytest

from qeraser import jones

RT2 = math.sqrt(2.0)
DEG = np.radians(np.arange(0.0, 360.0, 1.0))


def assert_matrix(actual, expected, tol=1e-12):
    assert np.max(np.abs(np.asarray(actual) - np.asarray(expected))) < tol


class TestSpecialAngleTrig:
    def test_quarter_turn_multiples_are_exact(self):
        exact = {
            0: 1.0, 1: RT2 / 2.0, 2: 0.0, 3: -RT2 / 2.0, 4: -1.0,
            5: -RT2 / 2.0, 6: 0.0, 7: RT2 / 2.0,
        }
        for k, value in exact.items():
            assert abs(math.cos(k * math.pi / 4.0) - value) < 1e-15
            assert abs(math.sin(k * math.pi / 4.0) - exact[(k + 6) % 8]) < 1e-15


class TestHwp:
    def test_axis_zero(self):
        assert_matrix(jones.hwp_matrix(0.0), [[1, 0], [0, -1]])

    def test_axis_eighth_turn_is_hadamard(self):
        assert_matrix(jones.hwp_matrix(math.pi / 8), np.array([[1, 1], [1, -1]]) / RT2)

    def test_axis_quarter_turn_swaps(self):
        assert_matrix(jones.hwp_matrix(math.pi / 4), [[0, 1], [1, 0]])

    def test_involution_on_grid(self):
        for a in DEG:
            assert_matrix(jones.hwp_matrix(a) @ jones.hwp_matrix(a), np.eye(2))

    def test_hermitian(self):
        for a in DEG[::15]:
            m = jones.hwp_matrix(a)
            assert_matrix(m, m.conj().T)


class TestQwp:
    def test_axis_zero(self):
        assert_matrix(jones.qwp_matrix(0.0), [[1, 0], [0, 1j]])

    def test_axis_quarter_turn(self):
        expected = 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]])
        assert_matrix(jones.qwp_matrix(math.pi / 4), expected)

    def test_unitary_at_eighth_turn(self):
        m = jones.qwp_matrix(math.pi / 8)
        assert_matrix(m.conj().T @ m, np.eye(2))


class TestPolarizer:
    def test_h_pass(self):
        assert_matrix(jones.polarizer_matrix(0.0), [[1, 0], [0, 0]])

    def test_v_pass(self):
        assert_matrix(jones.polarizer_matrix(math.pi / 2), [[0, 0], [0, 1]])

    def test_diagonal_on_h(self):
        out = jones.apply(jones.polarizer_matrix(math.pi / 4), jones.H)
        assert_matrix(out, [0.5, 0.5])
        assert abs(jones.intensity(out) - 0.5) < 1e-12

    def test_projector_law_on_grid(self):
        for t in DEG:
            p = jones.polarizer_matrix(t)
            assert_matrix(p @ p, p)
            assert_matrix(p, p.conj().T)

    def test_malus_on_grid(self):
        for t in DEG:
            out = jones.apply(jones.polarizer_matrix(t), jones.H)
            assert abs(jones.intensity(out) - math.cos(t) ** 2) < 1e-12


class TestPhase:
    def test_zero_is_identity(self):
        assert_matrix(jones.phase_matrix(0.0), np.eye(2))

    def test_half_turn_negates(self):
        assert_matrix(jones.phase_matrix(math.pi), -np.eye(2))

    def test_unit_determinant_modulus(self):
        for p in np.linspace(0, 2 * math.pi, 37):
            assert abs(abs(np.linalg.det(jones.phase_matrix(p))) - 1.0) < 1e-12


class TestUnitarityGrid:
    @pytest.mark.parametrize("maker", [
        jones.hwp_matrix, jones.qwp_matrix, jones.phase_matrix, jones.rotation_matrix,
    ])
    def test_unitary_on_one_degree_grid(self, maker):
        for a in DEG:
            m = maker(a)
            assert_matrix(m.conj().T @ m, np.eye(2))


class TestComposeApply:
    def test_identity_neutral(self):
        m = jones.qwp_matrix(0.3)
        assert_matrix(jones.compose(np.eye(2, dtype=complex), m), m)

    def test_hwp_composition_cancels(self):
        assert_matrix(
            jones.compose(jones.hwp_matrix(math.pi / 8), jones.hwp_matrix(math.pi / 8)),
            np.eye(2),
        )

    def test_projector_idempotent_under_compose(self):
        p = jones.polarizer_matrix(0.37)
        assert_matrix(jones.compose(p, p), p)

    def test_apply_identity(self):
        v = jones.jones_vector(0.3 + 0.1j, -0.2j)
        assert_matrix(jones.apply(np.eye(2, dtype=complex), v), v)

    def test_hadamard_on_h(self):
        assert_matrix(jones.apply(jones.hwp_matrix(math.pi / 8), jones.H), [1 / RT2, 1 / RT2])

    def test_unitary_preserves_norm(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            v = rng.normal(size=2) + 1j * rng.normal(size=2)
            m = jones.qwp_matrix(rng.uniform(0, 2 * math.pi))
            assert abs(jones.intensity(jones.apply(m, v)) - jones.intensity(v)) < 1e-12

    def test_apply_is_linear(self):
        rng = np.random.default_rng(8)
        m = jones.hwp_matrix(0.81)
        u = rng.normal(size=2) + 1j * rng.normal(size=2)
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        a, b = 0.3 - 0.2j, 1.1 + 0.4j
        assert_matrix(jones.apply(m, a * u + b * v),
                      a * jones.apply(m, u) + b * jones.apply(m, v))


class TestFiniteness:
    def test_operations_stay_finite_on_finite_inputs(self):
        rng = np.random.default_rng(21)
        makers = (jones.hwp_matrix, jones.qwp_matrix, jones.polarizer_matrix,
                  jones.phase_matrix, jones.rotation_matrix)
        for _ in range(100):
            v = rng.normal(size=2) * 10.0 ** rng.integers(-8, 9) + 1j * rng.normal(size=2)
            m = np.eye(2, dtype=complex)
            for maker in rng.choice(makers, size=4):
                m = jones.compose(maker(rng.uniform(-10, 10)), m)
            out = jones.apply(m, v)
            assert np.all(np.isfinite(out.real)) and np.all(np.isfinite(out.imag))


class TestSymmetricDecompose:
    def test_members_cancel_at_matched_split(self):
        u_plus, u_minus = jones.symmetric_decompose(jones.H, math.pi / 4, math.pi / 4)
        assert_matrix(u_plus, jones.D)
        assert abs(jones.project_amplitude(math.pi / 4, u_minus)) < 1e-12

    def test_zero_split_returns_basis(self):
        for basis in (jones.H, jones.V):
            u_plus, u_minus = jones.symmetric_decompose(basis, 0.9, 0.0)
            assert_matrix(u_plus, basis)
            assert_matrix(u_minus, basis)

    def test_reconstruction_scaling(self):
        # summed projections equal twice the basis projection scaled by cos(delta)
        for basis in (jones.H, jones.V):
            for t_deg in range(0, 90, 7):
                for d_deg in range(0, 90, 7):
                    t, d = math.radians(t_deg), math.radians(d_deg)
                    u_plus, u_minus = jones.symmetric_decompose(basis, t, d)
                    got = (jones.project_amplitude(t, u_plus)
                           + jones.project_amplitude(t, u_minus))
                    want = 2.0 * math.cos(d) * jones.project_amplitude(t, basis)
                    assert abs(got - want) < 1e-12

    def test_rejects_non_basis(self):
        with pytest.raises(ValueError):
            jones.symmetric_decompose(jones.D, 0.5, 0.2)

    def test_rejects_out_of_range_delta(self):
        with pytest.raises(ValueError):
            jones.symmetric_decompose(jones.H, 0.5, math.pi / 2)

    def test_members_are_unit(self):
        u_plus, u_minus = jones.symmetric_decompose(jones.V, 1.0, 0.6)
        assert abs(jones.intensity(u_plus) - 1.0) < 1e-12
        assert abs(jones.intensity(u_minus) - 1.0) < 1e-12
