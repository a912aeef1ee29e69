"""Engine-vs-analytic cross checks behind the ``verify`` command.

Every check recomputes its circuits from scratch so that deliberately
perturbing an engine convention (e.g. flipping the splitter reflection
phase) is caught.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import engine, jones, montecarlo, oracle, scenarios

_TOL = 1e-12


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def check_oracle_specializations(samples: int = 1000, seed: int = 20260810) -> CheckResult:
    """Special-case intensity laws must equal the general laws exactly."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        phase = rng.uniform(0.0, 2.0 * np.pi)
        analyzer = rng.uniform(-np.pi, np.pi)
        r1, r2 = rng.uniform(-np.pi, np.pi, 2)
        sign = rng.choice([-1.0, 1.0])
        diag = oracle.ScenarioParams(
            hwp1_rot=sign * np.pi / 4.0, hwp2_rot=sign * np.pi / 4.0,
            pol_a_angle=analyzer, pol_b_angle=analyzer, phase=phase,
            has_pol_a=True, has_pol_b=True,
        )
        worst = max(
            worst,
            abs(oracle.intensity_1(diag) - oracle.intensity_1_diag_hwps(analyzer, phase)),
            abs(oracle.intensity_2(diag) - oracle.intensity_2_diag_hwps(analyzer, phase)),
        )
        pols = oracle.ScenarioParams(
            hwp1_rot=r1, hwp2_rot=r2,
            pol_a_angle=np.pi / 4.0, pol_b_angle=np.pi / 4.0, phase=phase,
            has_pol_a=True, has_pol_b=True,
        )
        worst = max(
            worst,
            abs(oracle.intensity_1(pols) - oracle.intensity_1_diag_pols(r1, r2, phase)),
            abs(oracle.intensity_2(pols) - oracle.intensity_2_diag_pols(r1, r2, phase)),
        )
    return CheckResult(
        "oracle specialization consistency", bool(worst < _TOL),
        f"max |general - special| = {worst:.3e} over {samples} draws",
    )


def check_engine_oracle_fringes(steps: int = 256) -> CheckResult:
    """Normalized fringes of engine and closed form must coincide per preset."""
    phis = scenarios.default_phase_grid(steps)
    details = []
    worst = 0.0
    for preset in scenarios.PRESETS.values():
        expectations = (preset.expect_1, preset.expect_2)
        if not any(e in scenarios.FRINGING for e in expectations):
            continue
        eng = scenarios.scan_circuit(scenarios.circuit_for(preset.params), phis)
        orc = scenarios.scan_oracle(preset.params, phis)
        dev = 0.0
        for expect, e_vals, o_vals in zip(expectations, (eng.i1, eng.i2), (orc.i1, orc.i2)):
            if expect in scenarios.FRINGING:
                dev = max(dev, float(np.max(np.abs(
                    montecarlo.normalized_fringe(e_vals) - montecarlo.normalized_fringe(o_vals)
                ))))
        details.append(f"{preset.name}: {dev:.3e}")
        worst = max(worst, dev)
    return CheckResult(
        "engine-vs-oracle normalized fringes", bool(worst < 1e-9),
        "max deviation per scenario: " + ", ".join(details),
    )


def check_distinguishability_lock(steps: int = 256) -> CheckResult:
    """Without analyzers the PBS-merged outputs must be phase-flat for any
    wave-plate rotations (5 degree grid), and route all light to port A
    when the plates are absent."""
    phis = scenarios.default_phase_grid(steps)
    worst = 0.0
    grid = np.radians(np.arange(0.0, 180.0, 5.0))
    for r1 in grid:
        for r2 in grid:
            params = oracle.ScenarioParams(hwp1_rot=r1, hwp2_rot=r2)
            ia, ib = scenarios.sweep_intensities(scenarios.circuit_for(params), phis)
            worst = max(worst, float(np.ptp(ia)), float(np.ptp(ib)))
    no_hwp = oracle.ScenarioParams(has_hwp1=False, has_hwp2=False)
    ia, ib = scenarios.sweep_intensities(scenarios.circuit_for(no_hwp), phis)
    routing = max(float(np.max(np.abs(ia - 1.0))), float(np.max(np.abs(ib))))
    ok = bool(worst < _TOL and routing < _TOL)
    return CheckResult(
        "distinguishability lock", ok,
        f"max fringe amplitude {worst:.3e}; no-plate routing error {routing:.3e}",
    )


def check_swap_laws(samples: int = 200, seed: int = 4242) -> CheckResult:
    """Analyzer flip, path-2 plate flip, and half-period phase shift must
    invert fringes as exact identities for both oracle and engine."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        r1, r2 = rng.uniform(-np.pi / 2, np.pi / 2, 2)
        xi, th = rng.uniform(-np.pi, np.pi, 2)
        phase = rng.uniform(0.0, 2.0 * np.pi)

        def params(rot2=r2, a=xi, b=th, ph=phase):
            return oracle.ScenarioParams(
                hwp1_rot=r1, hwp2_rot=rot2, pol_a_angle=a, pol_b_angle=b,
                phase=ph, has_pol_a=True, has_pol_b=True,
            )

        base = params()
        # analyzer flip on port B <-> half-period shift
        worst = max(worst, abs(
            oracle.intensity_2(base) - oracle.intensity_2(params(b=-th, ph=phase + np.pi))
        ))
        # path-2 plate flip inverts screen 2 and leaves screen 1 unchanged
        worst = max(worst, abs(
            oracle.intensity_2(params(rot2=-r2)) - oracle.intensity_2(params(ph=phase + np.pi))
        ))
        worst = max(worst, abs(
            oracle.intensity_1(params(rot2=-r2)) - oracle.intensity_1(base)
        ))
        # half-period shift inverts both cross terms
        for fn in (oracle.intensity_1, oracle.intensity_2):
            dc2 = fn(params(ph=phase)) + fn(params(ph=phase + np.pi))
            dc2_shifted = fn(params(ph=phase + 0.5)) + fn(params(ph=phase + 0.5 + np.pi))
            worst = max(worst, abs(dc2 - dc2_shifted))

    # engine side, pointwise on a smaller sample
    for _ in range(40):
        r1, r2 = rng.uniform(-np.pi / 2, np.pi / 2, 2)
        xi, th = rng.uniform(-np.pi, np.pi, 2)
        phase = rng.uniform(0.0, 2.0 * np.pi)

        def eng_point(rot2, b, ph):
            p = oracle.ScenarioParams(
                hwp1_rot=r1, hwp2_rot=rot2, pol_a_angle=xi, pol_b_angle=b,
                has_pol_a=True, has_pol_b=True,
            )
            a_read, b_read = scenarios.run_circuit(scenarios.circuit_for(p), ph)
            return a_read.intensity, b_read.intensity

        i1_base, i2_base = eng_point(r2, th, phase)
        worst = max(worst, abs(i2_base - eng_point(r2, -th, phase + np.pi)[1]))
        i1_flip, i2_flip = eng_point(-r2, th, phase)
        worst = max(worst, abs(i2_flip - eng_point(r2, th, phase + np.pi)[1]))
        worst = max(worst, abs(i1_flip - i1_base))
    return CheckResult(
        "fringe swap laws", bool(worst < _TOL), f"max identity violation {worst:.3e}",
    )


def check_conservation(trials: int = 10000, seed: int = 777) -> CheckResult:
    """Analyzer-free pipelines must conserve total intensity."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        state = rng.normal(size=4) + 1j * rng.normal(size=4)
        total_in = engine.total_intensity(state)
        for _ in range(rng.integers(1, 8)):
            choice = rng.integers(0, 5)
            path = int(rng.integers(1, 3))
            angle = rng.uniform(-np.pi, np.pi)
            if choice == 0:
                el = engine.pbs_element(leakage=float(rng.uniform(0.0, 1.0)))
            elif choice == 1:
                el = engine.bs_element()
            elif choice == 2:
                el = engine.lift_to_path(jones.rotation_matrix(angle), path)
            elif choice == 3:
                el = engine.lift_to_path(jones.hwp_matrix(angle), path)
            else:
                el = engine.phase_element(angle, path)
            state = el.matrix @ state
        worst = max(worst, abs(engine.total_intensity(state) - total_in) / max(total_in, 1.0))
    return CheckResult(
        "energy conservation", bool(worst < _TOL),
        f"max relative drift {worst:.3e} over {trials} random pipelines",
    )


def run_all() -> list[CheckResult]:
    return [
        check_oracle_specializations(),
        check_engine_oracle_fringes(),
        check_distinguishability_lock(),
        check_swap_laws(),
        check_conservation(),
    ]
