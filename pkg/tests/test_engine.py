import math

import numpy as np
import pytest

from qeraser import engine, jones


def state(a1h=0, a1v=0, a2h=0, a2v=0):
    return np.array([a1h, a1v, a2h, a2v], dtype=complex)


def assert_close(actual, expected, tol=1e-12):
    assert np.max(np.abs(np.asarray(actual) - np.asarray(expected))) < tol


class TestPbs:
    def test_h_transmits_in_rail(self):
        out = engine.propagate(state(a1h=1), [engine.pbs_element()])
        assert_close(out, state(a1h=1))

    def test_v_reflects_across_rails_with_phase(self):
        out = engine.propagate(state(a1v=1), [engine.pbs_element()])
        assert_close(out, state(a2v=1j))
        out = engine.propagate(state(a2v=1), [engine.pbs_element()])
        assert_close(out, state(a1v=1j))

    def test_unitary(self):
        m = engine.pbs_element().matrix
        assert_close(m.conj().T @ m, np.eye(4))

    @pytest.mark.parametrize("leakage", [0.0, 0.01, 0.5, 1.0])
    def test_leaky_cube_stays_unitary(self, leakage):
        m = engine.pbs_element(leakage=leakage).matrix
        assert_close(m.conj().T @ m, np.eye(4))

    def test_leakage_routes_wrong_port(self):
        out = engine.propagate(state(a1h=1), [engine.pbs_element(leakage=0.01)])
        assert abs(abs(out[2]) ** 2 - 0.01) < 1e-12

    def test_leakage_out_of_range(self):
        with pytest.raises(ValueError):
            engine.pbs_element(leakage=1.5)


class TestBs:
    def test_splits_half_half(self):
        out = engine.propagate(state(a2h=1), [engine.bs_element()])
        assert abs(abs(out[0]) ** 2 - 0.5) < 1e-12
        assert abs(abs(out[2]) ** 2 - 0.5) < 1e-12

    def test_double_pass_routes_all_light_across(self):
        m = engine.bs_element().matrix
        # two balanced splitters with no internal phase form a full crossover
        expected = np.zeros((4, 4), dtype=complex)
        for k in (0, 1):
            expected[k, k + 2] = 1j
            expected[k + 2, k] = 1j
        assert_close(m @ m, expected)
        out = engine.propagate(state(a2h=1), [engine.bs_element(), engine.bs_element()])
        assert abs(abs(out[0]) ** 2 - 1.0) < 1e-12

    def test_unitary(self):
        m = engine.bs_element().matrix
        assert_close(m.conj().T @ m, np.eye(4))


class TestLift:
    def test_identity_lift(self):
        el = engine.lift_to_path(np.eye(2, dtype=complex), 1)
        assert_close(el.matrix, np.eye(4))

    def test_leaves_other_rail_untouched(self):
        el = engine.lift_to_path(jones.hwp_matrix(math.pi / 8), 1)
        out = engine.propagate(state(a2h=0.3, a2v=0.4j), [el])
        assert_close(out[2:], [0.3, 0.4j])

    def test_unitary_iff_block_unitary(self):
        el = engine.lift_to_path(jones.qwp_matrix(0.7), 2)
        assert_close(el.matrix.conj().T @ el.matrix, np.eye(4))
        proj = engine.lift_to_path(jones.polarizer_matrix(0.7), 2)
        assert np.linalg.norm(proj.matrix, 2) <= 1.0 + 1e-12

    def test_rejects_bad_path(self):
        with pytest.raises(ValueError):
            engine.lift_to_path(np.eye(2, dtype=complex), 3)


class TestPropagate:
    def test_empty_circuit_is_identity(self):
        s = state(0.1, 0.2j, 0.3, -0.4)
        assert_close(engine.propagate(s, []), s)

    def test_unitary_chain_conserves_intensity(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            s = rng.normal(size=4) + 1j * rng.normal(size=4)
            els = [
                engine.pbs_element(),
                engine.lift_to_path(jones.rotation_matrix(rng.uniform(-3, 3)), 1),
                engine.lift_to_path(jones.hwp_matrix(rng.uniform(-3, 3)), 2),
                engine.phase_element(rng.uniform(0, 7), 1),
                engine.bs_element(),
            ]
            out = engine.propagate(s, els)
            assert abs(engine.total_intensity(out) - engine.total_intensity(s)) < 1e-12

    def test_linearity(self):
        rng = np.random.default_rng(12)
        els = [engine.pbs_element(), engine.phase_element(1.1, 1), engine.bs_element()]
        u = rng.normal(size=4) + 1j * rng.normal(size=4)
        v = rng.normal(size=4) + 1j * rng.normal(size=4)
        a, b = 0.7 - 0.3j, -1.2 + 0.5j
        assert_close(
            engine.propagate(a * u + b * v, els),
            a * engine.propagate(u, els) + b * engine.propagate(v, els),
        )

    def test_batched_states_match_loop(self):
        els = [engine.pbs_element(), engine.bs_element()]
        rng = np.random.default_rng(13)
        batch = rng.normal(size=(4, 5)) + 1j * rng.normal(size=(4, 5))
        out = engine.propagate(batch, els)
        for k in range(5):
            assert_close(out[:, k], engine.propagate(batch[:, k], els))


class TestReadPort:
    def test_requires_merge(self):
        with pytest.raises(ValueError):
            engine.read_port(state(a1h=1), "A", None)

    def test_rejects_unknown_port(self):
        with pytest.raises(ValueError):
            engine.read_port(state(), "C", dict(engine.PORT_RAILS))

    def test_zero_state(self):
        reading = engine.read_port(state(), "A", dict(engine.PORT_RAILS))
        assert reading.intensity == 0.0

    def test_intensity_matches_fields(self):
        reading = engine.read_port(state(a2h=0.6, a2v=0.8j), "A", dict(engine.PORT_RAILS))
        assert abs(reading.intensity - jones.intensity(reading.fields)) < 1e-12
        assert abs(reading.intensity - 1.0) < 1e-12

    def test_ports_sum_to_total(self):
        s = state(0.1, 0.2, 0.3j, 0.4)
        a = engine.read_port(s, "A", dict(engine.PORT_RAILS))
        b = engine.read_port(s, "B", dict(engine.PORT_RAILS))
        assert abs(a.intensity + b.intensity - engine.total_intensity(s)) < 1e-12


class TestMirror:
    def test_identity(self):
        assert_close(engine.mirror_element().matrix, np.eye(4))
