"""
RIS-EM command line

Runs the simulate -> fit -> evaluate pipeline from a JSON config or a named
preset and writes report.json, timing.json and one CSV per outage curve.

Exit codes: 0 success, 2 configuration error, 3 numerical failure
(component collapse or EM non-convergence).
"""

from pathlib import Path
from typing import NoReturn, Optional

import typer
from pydantic import ValidationError
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from config import get_settings, setup_logging
from errors import ConfigError, NumericalError, StageError
from experiments import (
    ExperimentReport,
    ExperimentSpec,
    get_preset,
    list_presets as preset_catalog,
    load_spec,
    run_experiment,
    write_report,
)
from experiments.runner import run_id_for

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

app = typer.Typer(
    name="ris-em",
    help="RIS channel simulation, Nakagami-m mixture fitting and outage analysis",
    rich_markup_mode="rich",
)
console = Console()

SeedOption = typer.Option(
    None, "--seed", help="Unsigned 64-bit seed (default: spec or RIS_EM_DEFAULT_SEED)"
)
SamplesOption = typer.Option(None, "--samples", help="Number of channel realizations t")
OutDirOption = typer.Option(
    None, "--out-dir", help="Output directory (default: RIS_EM_OUT_DIR/<run>)"
)
NmseDomainOption = typer.Option(
    None, "--nmse-domain", help="NMSE domain: linear or log10"
)
VerboseOption = typer.Option(False, "--verbose", "-v", help="Enable debug logging")


def _fail(title: str, message: str, code: int) -> NoReturn:
    console.print(Panel(message, title=title, border_style="red"))
    raise typer.Exit(code)


def _apply_run_controls(
    spec: ExperimentSpec,
    seed: Optional[int],
    samples: Optional[int],
    nmse_domain: Optional[str],
) -> ExperimentSpec:
    updates = {}
    if seed is not None:
        updates["seed"] = seed
    if samples is not None:
        updates["sample_count"] = samples
    if nmse_domain is not None:
        updates["nmse_domain"] = nmse_domain
    if not updates:
        return spec
    try:
        return spec.with_overrides(**updates)
    except ValidationError as e:
        raise ConfigError(f"Invalid run option: {e}") from e


def create_fit_table(report: ExperimentReport) -> Table:
    table = Table(
        title="Fitted Nakagami-m Mixture", show_header=True, header_style="bold magenta"
    )
    table.add_column("Component", style="cyan", no_wrap=True)
    table.add_column("Weight", style="green", justify="right")
    table.add_column("m", style="green", justify="right")
    table.add_column("Omega", style="green", justify="right")
    for i, component in enumerate(report.fitted.components, 1):
        table.add_row(
            str(i),
            f"{component.weight:.4f}",
            f"{component.m:.4f}",
            f"{component.omega:.4e}",
        )
    return table


def create_nmse_table(report: ExperimentReport) -> Table:
    table = Table(
        title="NMSE vs Monte Carlo", show_header=True, header_style="bold magenta"
    )
    table.add_column("Method", style="cyan")
    table.add_column("NMSE", style="green", justify="right")
    for method, value in report.nmse_table.items():
        table.add_row(method, "undefined" if value is None else f"{value:.4f}")
    return table


def execute(spec: ExperimentSpec, out_dir: Optional[Path], verbose: bool) -> None:
    """Run a resolved spec, write its outputs and map failures to exit codes"""
    run_id = run_id_for(spec)
    setup_logging(run_id, "DEBUG" if verbose else None)
    target = out_dir or get_settings().get_out_dir() / (spec.preset_name or run_id)

    try:
        report = run_experiment(spec)
    except StageError as e:
        code = EXIT_NUMERICAL if isinstance(e.cause, NumericalError) else EXIT_CONFIG
        _fail(f"{e.stage.capitalize()} stage failed", str(e.cause), code)

    write_report(report, target)
    console.print(create_fit_table(report))
    console.print(create_nmse_table(report))
    em = report.em
    console.print(
        f"EM: {em['iterations']} iterations, converged={em['converged']}, "
        f"exact m-steps={em['exact_m_steps']}"
    )
    console.print(f"[green]✓[/green] Results written to {target}")

    if not report.converged:
        console.print(
            "[yellow]EM did not converge; the best iterate was reported[/yellow]"
        )
        raise typer.Exit(EXIT_NUMERICAL)


@app.command()
def run(
    config_path: Path = typer.Argument(
        ..., help="Experiment config (JSON mirroring ExperimentSpec)"
    ),
    seed: Optional[int] = SeedOption,
    samples: Optional[int] = SamplesOption,
    out_dir: Optional[Path] = OutDirOption,
    nmse_domain: Optional[str] = NmseDomainOption,
    verbose: bool = VerboseOption,
) -> None:
    """
    Run an experiment described by a JSON config file.

    Example:
        ris-em run configs/fig1b-n100.json --seed 7 --out-dir results/n100
    """
    try:
        spec = _apply_run_controls(load_spec(config_path), seed, samples, nmse_domain)
    except ConfigError as e:
        _fail("Configuration Error", str(e), EXIT_CONFIG)
    execute(spec, out_dir, verbose)


@app.command()
def preset(
    name: str = typer.Argument(..., help="Preset name (see list-presets)"),
    seed: Optional[int] = SeedOption,
    samples: Optional[int] = SamplesOption,
    out_dir: Optional[Path] = OutDirOption,
    nmse_domain: Optional[str] = NmseDomainOption,
    antennas: Optional[int] = typer.Option(
        None, "--antennas", help="Transmit antennas M (fig1a presets only)"
    ),
    verbose: bool = VerboseOption,
) -> None:
    """
    Run a named preset scenario.

    Example:
        ris-em preset fig1b-N100 --samples 20000
    """
    try:
        spec = get_preset(name, seed=seed, sample_count=samples, antennas=antennas)
        spec = _apply_run_controls(spec, None, None, nmse_domain)
    except ConfigError as e:
        _fail("Configuration Error", str(e), EXIT_CONFIG)
    execute(spec, out_dir, verbose)


@app.command("list-presets")
def list_presets() -> None:
    """Show every preset with its resolved scenario parameters."""
    table = Table(title="Presets", show_header=True, header_style="bold magenta")
    table.add_column("Name", style="cyan", no_wrap=True)
    table.add_column("Fading", style="green")
    table.add_column("N", justify="right")
    table.add_column("M", justify="right")
    table.add_column("d / lambda", justify="right")
    table.add_column("kappa", justify="right")
    table.add_column("Direct link", style="yellow")

    for name, spec in preset_catalog().items():
        scenario = spec.scenario
        budget = scenario.budget
        variant = scenario.variant
        fading = variant.kind
        if getattr(variant, "iid", False):
            fading += " (iid)"
        direct = f"{budget.beta_sd_db:g} dB" if budget.direct_link else "blocked"
        table.add_row(
            name,
            fading,
            str(scenario.n_elements),
            str(scenario.m_antennas),
            f"1/{scenario.geometry.wavelength / scenario.geometry.d_h:.0f}",
            f"{scenario.kappa:g}",
            direct,
        )

    console.print(table)


if __name__ == "__main__":
    app()
