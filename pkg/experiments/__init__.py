from .models import (
    DEFAULT_RATE_GRID,
    ExperimentReport,
    ExperimentSpec,
    Stage,
    StageRecord,
    StageStatus,
)
from .presets import (
    allows_antenna_override,
    check_preset_scenario,
    get_preset,
    list_presets,
    preset_names,
    preset_scenario,
)
from .runner import evaluate_curves, load_spec, run_experiment, write_report

__all__ = [
    "DEFAULT_RATE_GRID",
    "ExperimentReport",
    "ExperimentSpec",
    "Stage",
    "StageRecord",
    "StageStatus",
    "allows_antenna_override",
    "check_preset_scenario",
    "evaluate_curves",
    "get_preset",
    "list_presets",
    "load_spec",
    "preset_names",
    "preset_scenario",
    "run_experiment",
    "write_report",
]
