"""
Simulate -> fit -> evaluate pipeline
"""

import json
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Union

import numpy as np
from loguru import logger
from pydantic import ValidationError

from analysis import (
    OutageCurve,
    analytic_curve,
    empirical_curve,
    gamma_mom_baseline,
    nmse,
    write_curve_csv,
)
from channel import ChannelSampleSet, simulate_equivalent_channel
from errors import ConfigError, RisEmError, StageError, ZeroVarianceReferenceError
from mixture import NakagamiMixture, fit
from sampling import RngStream

from .models import ExperimentReport, ExperimentSpec, Stage, StageRecord, StageStatus

SIMULATION_STREAM = 0
FIT_STREAM = 1


def load_spec(path: Union[str, Path]) -> ExperimentSpec:
    """Parse a UTF-8 JSON config; unknown keys are rejected"""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"Cannot read config {path}: {e}") from e
    try:
        return ExperimentSpec.model_validate_json(text)
    except ValidationError as e:
        raise ConfigError(f"Invalid experiment config {path}:\n{e}") from e


def run_id_for(spec: ExperimentSpec) -> str:
    return f"{spec.preset_name or 'custom'}-{spec.scenario.digest()[:8]}-{spec.seed}"


@contextmanager
def _stage(stage: Stage, run_id: str, records: List[StageRecord]) -> Iterator[Dict]:
    """Time a stage and attribute any failure to it"""
    detail: Dict = {}
    started = time.perf_counter()
    logger.info(f"[{run_id}] {stage.value} stage started")
    try:
        yield detail
    except (RisEmError, ValueError, ArithmeticError) as e:
        records.append(
            StageRecord.create(
                stage,
                run_id,
                time.perf_counter() - started,
                StageStatus.FAILED,
                {"error": str(e)},
            )
        )
        logger.error(f"[{run_id}] {stage.value} stage failed: {e}")
        raise StageError(stage.value, e) from e
    seconds = time.perf_counter() - started
    records.append(StageRecord.create(stage, run_id, seconds, detail=detail))
    logger.info(f"[{run_id}] {stage.value} stage completed in {seconds:.2f}s")


def evaluate_curves(
    spec: ExperimentSpec,
    samples: ChannelSampleSet,
    mixture: NakagamiMixture,
) -> "tuple[List[OutageCurve], Dict[str, Optional[float]]]":
    """Monte Carlo reference, the mixture curve and the requested baselines.

    The NMSE table scores every model curve against the reference.
    """
    rho_db = spec.scenario.snr_budget_db
    reference = empirical_curve(samples, rho_db, spec.rate_grid)
    curves = [reference, analytic_curve(mixture, rho_db, spec.rate_grid)]
    if "gamma-mom" in spec.baselines:
        curves.append(gamma_mom_baseline(samples).curve(rho_db, spec.rate_grid))

    table: Dict[str, Optional[float]] = {}
    for curve in curves[1:]:
        try:
            table[curve.method] = nmse(reference, curve, spec.nmse_domain)
        except ZeroVarianceReferenceError:
            logger.warning(
                "Monte Carlo reference is constant over the rate grid; "
                f"NMSE of {curve.method} is undefined"
            )
            table[curve.method] = None
    return curves, table


def run_experiment(
    spec: ExperimentSpec, workers: Optional[int] = None
) -> ExperimentReport:
    """Run one experiment.

    Apart from timing the report is a pure function of (spec, seed).
    """
    run_id = run_id_for(spec)
    records: List[StageRecord] = []

    with _stage(Stage.SIMULATE, run_id, records) as detail:
        samples = simulate_equivalent_channel(
            RngStream(spec.seed, SIMULATION_STREAM), spec.scenario, workers
        )
        detail["samples"] = len(samples)

    with _stage(Stage.FIT, run_id, records) as detail:
        mixture, trace = fit(
            samples, RngStream(spec.seed, FIT_STREAM), options=spec.fit
        )
        detail["iterations"] = trace.iterations
        detail["converged"] = trace.converged

    with _stage(Stage.EVALUATE, run_id, records) as detail:
        curves, nmse_table = evaluate_curves(spec, samples, mixture)
        detail["curves"] = [curve.method for curve in curves]

    power = samples.power()
    config_echo = spec.model_dump(mode="json")
    config_echo["implied_k_factors"] = spec.scenario.implied_k_factors()

    return ExperimentReport(
        fitted=mixture,
        fitted_record=mixture.to_record(trace.iterations, trace.converged),
        em=trace.summary(),
        curves=curves,
        nmse_table=nmse_table,
        samples={
            "count": len(samples),
            "config_digest": samples.config_digest,
            "seed": samples.seed,
            "stream_id": samples.stream_id,
            "mean_power": float(np.mean(power)),
            "fitted_mean_power": mixture.mean_power,
            "zero_samples": int(np.count_nonzero(samples.samples == 0)),
        },
        config_echo=config_echo,
        timing={record.stage.value: record.seconds for record in records},
    )


def write_report(report: ExperimentReport, out_dir: Union[str, Path]) -> List[Path]:
    """report.json (deterministic), timing.json and one curve_<method>.csv per curve"""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    report_path = out_dir / "report.json"
    report_json = report.model_dump_json(indent=2, exclude={"timing"})
    report_path.write_text(report_json + "\n", encoding="utf-8")

    timing_path = out_dir / "timing.json"
    timing_path.write_text(json.dumps(report.timing, indent=2) + "\n", encoding="utf-8")

    written = [report_path, timing_path]
    for curve in report.curves:
        written.append(write_curve_csv(curve, out_dir / f"curve_{curve.method}.csv"))
    logger.info(f"Wrote {len(written)} files to {out_dir}")
    return written
