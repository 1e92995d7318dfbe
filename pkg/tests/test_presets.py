"""Tests for the preset catalog and experiment specs."""

import math
import time

import numpy as np
import pytest
from pydantic import ValidationError

from analysis import outage_empirical
from channel import (
    ChannelSampleSet,
    CorrelatedRayleigh,
    GeneralizedIid,
    simulate_equivalent_channel,
)
from errors import ConfigError
from experiments import (
    DEFAULT_RATE_GRID,
    ExperimentSpec,
    allows_antenna_override,
    get_preset,
    list_presets,
    preset_names,
    preset_scenario,
    run_experiment,
)
from sampling import RngStream

RUNTIME_BUDGET_SECONDS = 60.0


def simulate_preset(name: str, sample_count: int, seed: int = 2022) -> ChannelSampleSet:
    scenario = preset_scenario(name).model_copy(update={"sample_count": sample_count})
    return simulate_equivalent_channel(RngStream(seed, 0), scenario)


class TestCatalog:
    """Preset names and parameters"""

    def test_names(self) -> None:
        """Every family is present with its parameter sweep"""
        names = set(preset_names())
        expected = (
            {f"fig1a-N{n}-M{m}" for n in (36, 144) for m in (1, 2, 4)}
            | {f"fig1b-N{n}" for n in (36, 100, 256)}
            | {f"fig1b-N{n}-iid" for n in (36, 100, 256)}
            | {f"fig1c-{label}" for label in ("lambda4", "lambda8", "lambda12", "iid")}
            | {f"fig2a-N{n}" for n in (49, 100, 196)}
            | {f"fig2b-N{n}" for n in (49, 100, 196)}
        )
        assert names == expected

    def test_spacing_sweep(self) -> None:
        """fig1c-lambda8: 10x10 RIS at lambda/8, kappa 3 and a weak direct path"""
        scenario = preset_scenario("fig1c-lambda8")
        assert scenario.geometry.n == 100
        assert scenario.geometry.d_h == pytest.approx(0.1 / 8)
        assert scenario.kappa == 3.0
        assert scenario.budget.direct_link
        assert scenario.budget.beta_sd_db == -130.0
        assert scenario.budget.area_included
        assert isinstance(scenario.variant, CorrelatedRayleigh)
        assert not scenario.variant.iid

    def test_generalized_with_direct(self) -> None:
        """fig2b-N196 uses two-wave links and a 5 dB Rician direct path"""
        scenario = preset_scenario("fig2b-N196")
        assert scenario.geometry.n == 196
        assert scenario.geometry.d_h == pytest.approx(0.05)
        assert not scenario.budget.area_included
        assert scenario.budget.beta_sd_db == -135.0
        assert isinstance(scenario.variant, GeneralizedIid)
        assert scenario.variant.spec_ris_in.num_waves == 2
        assert scenario.variant.spec_direct.k_factor_db == pytest.approx(5.0)

    def test_common_controls(self) -> None:
        """Every preset uses rho = 124 dB, 10^5 samples and the Gamma baseline"""
        for name, spec in list_presets().items():
            assert spec.scenario.snr_budget_db == 124.0, name
            assert spec.scenario.sample_count == 100_000, name
            assert spec.baselines == ["gamma-mom"], name
            assert spec.preset_name == name
            assert spec.rate_grid == DEFAULT_RATE_GRID

    def test_unknown_preset(self) -> None:
        """Unknown names are configuration errors"""
        with pytest.raises(ConfigError):
            get_preset("fig9-N1")


class TestOverrides:
    """Run-control overrides"""

    def test_sample_count_and_seed(self) -> None:
        """sample_count and seed are accepted for every preset"""
        spec = get_preset("fig2a-N49", seed=11, sample_count=5000)
        assert spec.seed == 11
        assert spec.scenario.sample_count == 5000

    def test_antennas_fig1a_only(self) -> None:
        """--antennas is valid for fig1a and rejected elsewhere"""
        assert allows_antenna_override("fig1a-N36-M1")
        assert get_preset("fig1a-N36-M1", antennas=8).scenario.m_antennas == 8
        with pytest.raises(ConfigError):
            get_preset("fig1b-N36", antennas=2)

    def test_invalid_override_value(self) -> None:
        """A zero sample count is rejected as a configuration error"""
        with pytest.raises(ConfigError):
            get_preset("fig1b-N36", sample_count=0)

    def test_scenario_tampering_rejected(self) -> None:
        """A preset-named spec must keep the preset scenario"""
        data = get_preset("fig1b-N36").model_dump()
        data["scenario"]["kappa"] = 7.0
        with pytest.raises(ValidationError):
            ExperimentSpec.model_validate(data)

    def test_with_overrides(self) -> None:
        """with_overrides re-validates the copy"""
        spec = get_preset("fig1a-N144-M2").with_overrides(
            sample_count=1234, m_antennas=4
        )
        assert spec.scenario.sample_count == 1234
        assert spec.scenario.m_antennas == 4
        with pytest.raises(ValidationError):
            get_preset("fig1b-N36").with_overrides(m_antennas=3)


class TestExperimentSpec:
    """JSON configs"""

    def test_json_round_trip(self) -> None:
        """A dumped spec validates back to an equal spec"""
        spec = get_preset("fig1c-iid", seed=5)
        restored = ExperimentSpec.model_validate_json(spec.model_dump_json())
        assert restored.model_dump() == spec.model_dump()

    def test_unknown_keys(self) -> None:
        """Extra top-level keys are rejected"""
        data = get_preset("fig1b-N36").model_dump()
        data["workers"] = 4
        with pytest.raises(ValidationError):
            ExperimentSpec.model_validate(data)

    def test_rate_grid_validation(self) -> None:
        """Rate grids are positive and strictly increasing"""
        data = get_preset("fig1b-N36").model_dump()
        for grid in ([1.0, 1.0], [0.0, 1.0], []):
            data["rate_grid"] = grid
            with pytest.raises(ValidationError):
                ExperimentSpec.model_validate(data)

    def test_repeated_baseline(self) -> None:
        """Each baseline appears once"""
        data = get_preset("fig1b-N36").model_dump()
        data["baselines"] = ["gamma-mom", "gamma-mom"]
        with pytest.raises(ValidationError):
            ExperimentSpec.model_validate(data)

    def test_defaults(self) -> None:
        """Seed and fit options come from settings"""
        data = get_preset("fig1b-N36").model_dump()
        for key in ("seed", "fit", "preset_name", "baselines", "rate_grid"):
            data.pop(key)
        spec = ExperimentSpec.model_validate(data)
        assert spec.seed == 2022
        assert spec.fit.epsilon == 1e-3
        assert spec.fit.max_iter == 500
        assert spec.baselines == []


class TestPresetDirections:
    """Qualitative trends across preset families"""

    def test_denser_spacing_degrades_outage(self) -> None:
        """At R_th = 3 the OP grows from lambda/4 to lambda/8 to lambda/12"""
        ops = {}
        for label in ("iid", "lambda4", "lambda8", "lambda12"):
            samples = simulate_preset(f"fig1c-{label}", 20_000)
            ops[label], _ = outage_empirical(samples, 124.0, 3.0)
        assert ops["iid"] < ops["lambda4"] < ops["lambda8"] < ops["lambda12"]
        assert ops["lambda4"] < 0.05
        assert 0.15 < ops["lambda12"] < 0.25

    def test_direct_link_lowers_outage(self) -> None:
        """fig2b OP stays below fig2a OP at the same seed"""
        without = simulate_preset("fig2a-N49", 20_000)
        with_direct = simulate_preset("fig2b-N49", 20_000)
        rho = 10 ** (124.0 / 10)
        for q in (0.1, 0.5):
            magnitude = float(np.quantile(without.samples, q))
            r_th = math.log2(1.0 + rho * magnitude**2)
            op_without, _ = outage_empirical(without, 124.0, r_th)
            op_with, _ = outage_empirical(with_direct, 124.0, r_th)
            assert op_with < op_without, q

    @pytest.mark.slow
    @pytest.mark.parametrize("name", preset_names())
    def test_runtime_budget(self, name: str) -> None:
        """Each preset at t = 10^4 stays within a tenth of the t = 10^5 budget"""
        spec = get_preset(name, sample_count=10_000)
        started = time.perf_counter()
        run_experiment(spec)
        assert time.perf_counter() - started < RUNTIME_BUDGET_SECONDS / 10
