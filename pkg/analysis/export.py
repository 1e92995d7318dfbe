"""
CSV serialization of outage curves

Header ``r_th,op,ci_halfwidth,method``, decimal notation, LF line endings.
"""

import csv
from pathlib import Path
from typing import Union

import numpy as np

from .models import OutageCurve

CSV_HEADER = ["r_th", "op", "ci_halfwidth", "method"]


def format_decimal(value: float) -> str:
    """Shortest round-tripping decimal string, never scientific notation"""
    return np.format_float_positional(float(value), unique=True, trim="-")


def write_curve_csv(curve: OutageCurve, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for rate, op, half in zip(curve.rate_grid, curve.op_values, curve.ci_halfwidth):
            writer.writerow(
                [
                    format_decimal(rate),
                    format_decimal(op),
                    format_decimal(half),
                    curve.method,
                ]
            )
    return path
