"""Tests for link drawing, phase design and the equivalent-channel simulator."""

import numpy as np
import pytest

from channel import (
    GeneralizedLinks,
    LinkModel,
    apply_phase_design,
    draw_correlated_rayleigh_links,
    draw_generalized_links,
    simulate_equivalent_channel,
    snr_from_magnitude,
)
from channel.simulate import batch_plan, equivalent_magnitude
from sampling import RngStream
from tests.helpers import ScenarioBuilder

PERFECT_KAPPA = 1e8


def outage_fraction(samples: np.ndarray, threshold: float) -> float:
    return float(np.mean(samples < threshold))


class TestLinkDraws:
    """Shapes and powers of the three links"""

    def test_correlated_shapes(
        self, rng: RngStream, correlated_scenario: ScenarioBuilder
    ) -> None:
        """G is N x M, h2 has length N, hsd has length M"""
        config = correlated_scenario(m_antennas=2)
        g, h2, hsd = draw_correlated_rayleigh_links(rng, config)
        assert g.shape == (36, 2)
        assert h2.shape == (36,)
        assert hsd.shape == (2,)
        np.testing.assert_array_equal(hsd, 0.0)

        g, h2, hsd = draw_correlated_rayleigh_links(rng, config, size=5)
        assert (g.shape, h2.shape, hsd.shape) == ((5, 36, 2), (5, 36), (5, 2))

    def test_correlated_power(
        self, rng: RngStream, correlated_scenario: ScenarioBuilder
    ) -> None:
        """E|g|^2 and E|h2|^2 equal A beta when the area is already included"""
        config = correlated_scenario(iid=True)
        g, h2, _ = draw_correlated_rayleigh_links(rng, config, size=5000)
        expected = 10 ** (-7.5)
        assert np.mean(np.abs(g) ** 2) == pytest.approx(expected, rel=0.03)
        assert np.mean(np.abs(h2) ** 2) == pytest.approx(expected, rel=0.03)

    def test_generalized_power(
        self, rng: RngStream, generalized_scenario: ScenarioBuilder
    ) -> None:
        """S->RIS power is A beta1 (Omega_0 + Omega_L); RIS->D omits A"""
        config = generalized_scenario()
        g, h2, hsd = draw_generalized_links(rng, config, size=4000)
        beta = 10 ** (-5.5)
        area = 0.05**2
        assert np.mean(np.abs(g) ** 2) == pytest.approx(area * beta * 2.25, rel=0.03)
        assert np.mean(np.abs(h2) ** 2) == pytest.approx(beta * 2.25, rel=0.03)
        np.testing.assert_array_equal(hsd, 0.0)

    def test_variant_mismatch(
        self,
        rng: RngStream,
        correlated_scenario: ScenarioBuilder,
        generalized_scenario: ScenarioBuilder,
    ) -> None:
        """Each drawer only accepts its own variant"""
        with pytest.raises(ValueError):
            draw_generalized_links(rng, correlated_scenario())
        with pytest.raises(ValueError):
            draw_correlated_rayleigh_links(rng, generalized_scenario())

    def test_model_dispatch(self, generalized_scenario: ScenarioBuilder) -> None:
        """LinkModel.for_config picks the implementation by variant"""
        model = LinkModel.for_config(generalized_scenario())
        assert isinstance(model, GeneralizedLinks)


class TestPhaseDesign:
    """Phase alignment and MRT magnitude"""

    def test_perfect_phases_add_coherently(
        self, rng: RngStream, correlated_scenario: ScenarioBuilder
    ) -> None:
        """With negligible phase error h = sum |h2_n| |g_n| for M = 1"""
        config = correlated_scenario()
        g, h2, hsd = draw_correlated_rayleigh_links(rng, config, size=50)
        phases = apply_phase_design(rng, g, h2, hsd, PERFECT_KAPPA)
        h = equivalent_magnitude(g, h2, hsd, phases)
        coherent = np.sum(np.abs(h2) * np.abs(g[..., 0]), axis=-1)
        np.testing.assert_allclose(h, coherent, rtol=1e-6)

    def test_direct_path_aligned(
        self, rng: RngStream, correlated_scenario: ScenarioBuilder
    ) -> None:
        """The reflected sum is co-phased with the direct path"""
        config = correlated_scenario(direct_db=-130.0)
        g, h2, hsd = draw_correlated_rayleigh_links(rng, config, size=50)
        phases = apply_phase_design(rng, g, h2, hsd, PERFECT_KAPPA)
        h = equivalent_magnitude(g, h2, hsd, phases)
        coherent = np.sum(np.abs(h2) * np.abs(g[..., 0]), axis=-1) + np.abs(hsd[..., 0])
        np.testing.assert_allclose(h, coherent, rtol=1e-6)

    def test_extra_antennas_add_power(
        self, rng: RngStream, correlated_scenario: ScenarioBuilder
    ) -> None:
        """MRT magnitude is at least the co-phased reference-antenna term"""
        config = correlated_scenario(m_antennas=3)
        g, h2, hsd = draw_correlated_rayleigh_links(rng, config, size=20)
        phases = apply_phase_design(rng, g, h2, hsd, PERFECT_KAPPA)
        h = equivalent_magnitude(g, h2, hsd, phases)
        reference = np.sum(np.abs(h2) * np.abs(g[..., 0]), axis=-1)
        assert np.all(h >= reference * (1 - 1e-6))

    def test_reference_antenna_range(
        self, rng: RngStream, correlated_scenario: ScenarioBuilder
    ) -> None:
        """The reference antenna index must exist"""
        g, h2, hsd = draw_correlated_rayleigh_links(rng, correlated_scenario())
        with pytest.raises(ValueError):
            apply_phase_design(rng, g, h2, hsd, 1.0, reference_antenna=1)

    def test_snr(self) -> None:
        """gamma = rho h^2"""
        assert snr_from_magnitude(1.0, 10.0) == pytest.approx(10.0)
        assert snr_from_magnitude(0.0, 124.0) == 0.0
        with pytest.raises(ValueError):
            snr_from_magnitude(-1.0, 0.0)


class TestSimulator:
    """Batched Monte Carlo simulation"""

    def test_sample_set_identity(self, correlated_scenario: ScenarioBuilder) -> None:
        """The sample set records the scenario digest and stream"""
        config = correlated_scenario(sample_count=500)
        samples = simulate_equivalent_channel(RngStream(9, 0), config, workers=1)
        assert len(samples) == 500
        assert samples.config_digest == config.digest()
        assert (samples.seed, samples.stream_id) == (9, 0)
        assert samples.substream == []
        assert np.all(samples.samples > 0)

    def test_deterministic_across_worker_counts(
        self, correlated_scenario: ScenarioBuilder
    ) -> None:
        """Equal seeds give identical samples for 1 and 4 workers"""
        config = correlated_scenario(n=256, sample_count=9000)
        assert len(batch_plan(config)) > 1
        serial = simulate_equivalent_channel(RngStream(3, 0), config, workers=1)
        parallel = simulate_equivalent_channel(RngStream(3, 0), config, workers=4)
        np.testing.assert_array_equal(serial.samples, parallel.samples)

    def test_batch_plan_covers_all_samples(
        self, correlated_scenario: ScenarioBuilder
    ) -> None:
        """Batches tile [0, t) without gaps"""
        config = correlated_scenario(n=256, sample_count=10_001)
        plan = batch_plan(config)
        assert plan[0][0] == 0
        assert sum(count for _, count in plan) == 10_001
        for (start, count), (next_start, _) in zip(plan, plan[1:]):
            assert start + count == next_start

    def test_generalized_with_direct_link(
        self, generalized_scenario: ScenarioBuilder
    ) -> None:
        """The generalized variant simulates with and without the direct path"""
        for direct in (False, True):
            config = generalized_scenario(direct=direct)
            samples = simulate_equivalent_channel(RngStream(1, 0), config, workers=2)
            assert len(samples) == 2000
            assert np.all(np.isfinite(samples.samples))


class TestOutageDirections:
    """Qualitative trends of the equivalent channel"""

    def test_more_elements_improve_outage(
        self, correlated_scenario: ScenarioBuilder
    ) -> None:
        """N = 100 falls below the median of N = 36 far less often than half the time"""
        small = simulate_equivalent_channel(
            RngStream(4, 0), correlated_scenario(n=36, sample_count=5000)
        )
        large = simulate_equivalent_channel(
            RngStream(4, 0), correlated_scenario(n=100, sample_count=5000)
        )
        threshold = float(np.median(small.samples))
        assert outage_fraction(large.samples, threshold) < 0.25

    def test_correlation_degrades_tail(
        self, correlated_scenario: ScenarioBuilder
    ) -> None:
        """Correlated elements put more mass in the lower tail than i.i.d. ones"""
        iid = simulate_equivalent_channel(
            RngStream(5, 0), correlated_scenario(n=100, iid=True, sample_count=20_000)
        )
        correlated = simulate_equivalent_channel(
            RngStream(5, 0), correlated_scenario(n=100, sample_count=20_000)
        )
        threshold = float(np.quantile(iid.samples, 0.05))
        assert outage_fraction(correlated.samples, threshold) > 0.07

    def test_more_antennas_improve_outage(
        self, correlated_scenario: ScenarioBuilder
    ) -> None:
        """M = 2 lowers the outage at the 10% quantile of M = 1"""
        single = simulate_equivalent_channel(
            RngStream(6, 0), correlated_scenario(iid=True, sample_count=20_000)
        )
        dual = simulate_equivalent_channel(
            RngStream(6, 0),
            correlated_scenario(iid=True, m_antennas=2, sample_count=20_000),
        )
        threshold = float(np.quantile(single.samples, 0.10))
        assert outage_fraction(dual.samples, threshold) < 0.09

    def test_phase_concentration_raises_gain(
        self, correlated_scenario: ScenarioBuilder
    ) -> None:
        """Larger kappa gives a larger mean magnitude"""
        loose = simulate_equivalent_channel(
            RngStream(8, 0), correlated_scenario(kappa=0.5, sample_count=5000)
        )
        tight = simulate_equivalent_channel(
            RngStream(8, 0), correlated_scenario(kappa=5.0, sample_count=5000)
        )
        assert np.mean(tight.samples) > np.mean(loose.samples)

    def test_phase_concentration_ordering(
        self, correlated_scenario: ScenarioBuilder
    ) -> None:
        """Mean h^2 grows from random phases to kappa = 10 to perfect phases"""
        powers = []
        for kappa in (0.0, 10.0, PERFECT_KAPPA):
            config = correlated_scenario(kappa=kappa, sample_count=5000)
            samples = simulate_equivalent_channel(RngStream(12, 0), config)
            powers.append(float(np.mean(samples.power())))
        assert powers[0] < powers[1] < powers[2]

    def test_mean_power_grows_with_elements(
        self, correlated_scenario: ScenarioBuilder
    ) -> None:
        """Mean h^2 is strictly increasing over N = 36, 100, 256"""
        powers = []
        for n in (36, 100, 256):
            config = correlated_scenario(n=n, sample_count=3000)
            samples = simulate_equivalent_channel(RngStream(13, 0), config)
            powers.append(float(np.mean(samples.power())))
        assert powers[0] < powers[1] < powers[2]
