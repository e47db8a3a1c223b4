"""Reference experiments, their specifications and CSV output."""

from .experiments import (
    RUNNERS,
    monte_carlo_mse,
    run,
    run_fading_cdf,
    run_fading_tradeoff,
    run_hpa_mmse,
    run_mmse_vs_time,
    run_tradeoff_static,
)
from .spec import ExperimentSpec, Kind, SpecError, format_spec, parse_spec_text, resolve
from .table import ResultTable, emit_csv, read_csv, to_csv

__all__ = [
    "ExperimentSpec",
    "Kind",
    "RUNNERS",
    "ResultTable",
    "SpecError",
    "emit_csv",
    "format_spec",
    "monte_carlo_mse",
    "parse_spec_text",
    "read_csv",
    "resolve",
    "run",
    "run_fading_cdf",
    "run_fading_tradeoff",
    "run_hpa_mmse",
    "run_mmse_vs_time",
    "run_tradeoff_static",
    "to_csv",
]
