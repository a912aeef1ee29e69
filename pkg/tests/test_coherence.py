import math

import numpy as np
import pytest

from qeraser import coherence


def source(linewidth=1e6, lineshape=coherence.LORENTZIAN):
    return coherence.SourceSpec(wavelength=632.8e-9, linewidth=linewidth, lineshape=lineshape)


class TestCoherenceLength:
    def test_lorentzian_1mhz(self):
        assert abs(coherence.coherence_length(source()) - 95.42690318473885) < 1e-3

    def test_gaussian_1mhz(self):
        lc = coherence.coherence_length(source(lineshape=coherence.GAUSSIAN))
        assert abs(lc - 199.14687456794366) < 1e-3

    def test_inverse_proportionality(self):
        lc = coherence.coherence_length(source())
        lc2 = coherence.coherence_length(source(linewidth=2e6))
        assert abs(lc2 - lc / 2.0) < 1e-9

    def test_rejects_bad_source(self):
        with pytest.raises(ValueError):
            coherence.SourceSpec(wavelength=632.8e-9, linewidth=0.0)
        with pytest.raises(ValueError):
            coherence.SourceSpec(wavelength=-1.0, linewidth=1e6)
        with pytest.raises(ValueError):
            coherence.SourceSpec(wavelength=1e-6, linewidth=1e6, lineshape="boxcar")


class TestVisibilityFactor:
    @pytest.mark.parametrize("shape", [coherence.LORENTZIAN, coherence.GAUSSIAN])
    def test_perfect_at_zero(self, shape):
        m = coherence.CoherenceModel(10.0, 0.0, shape)
        assert coherence.visibility_factor(m) == 1.0

    @pytest.mark.parametrize("shape", [coherence.LORENTZIAN, coherence.GAUSSIAN])
    def test_one_over_e_at_coherence_length(self, shape):
        m = coherence.CoherenceModel(10.0, 10.0, shape)
        assert abs(coherence.visibility_factor(m) - math.exp(-1.0)) < 1e-12

    @pytest.mark.parametrize("shape", [coherence.LORENTZIAN, coherence.GAUSSIAN])
    def test_vanishes_far_out(self, shape):
        m = coherence.CoherenceModel(10.0, 1000.0, shape)
        assert coherence.visibility_factor(m) < 1e-10

    @pytest.mark.parametrize("shape", [coherence.LORENTZIAN, coherence.GAUSSIAN])
    def test_strictly_decreasing(self, shape):
        values = [
            coherence.visibility_factor(coherence.CoherenceModel(10.0, d, shape))
            for d in np.linspace(0.0, 50.0, 60)
        ]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_rejects_negative_path_difference(self):
        with pytest.raises(ValueError):
            coherence.visibility_factor(coherence.CoherenceModel(10.0, -1.0))


class TestAttenuateFringe:
    def test_unit_factor_identity(self):
        assert coherence.attenuate_fringe(0.5, 0.25, 1.0) == 0.75

    def test_zero_factor_keeps_dc(self):
        assert coherence.attenuate_fringe(0.5, 0.25, 0.0) == 0.5

    def test_visibility_scales_with_factor(self):
        phi = np.linspace(0, 2 * np.pi, 64, endpoint=False)
        dc, amp, factor = 0.4, 0.3, 0.37
        curve = np.array([
            coherence.attenuate_fringe(dc, amp * math.cos(p), factor) for p in phi
        ])
        ideal_vis = amp / dc
        got = (curve.max() - curve.min()) / (curve.max() + curve.min())
        assert abs(got - factor * ideal_vis) < 1e-9

    def test_rejects_bad_factor(self):
        with pytest.raises(ValueError):
            coherence.attenuate_fringe(1.0, 0.0, 1.5)

    def test_attenuated_intensity_non_negative(self):
        phi = np.linspace(0, 2 * np.pi, 32, endpoint=False)
        for factor in (0.0, 0.3, 1.0):
            for p in phi:
                v = coherence.attenuate_fringe(0.125, -0.125 * math.cos(p), factor)
                assert v >= -1e-12
