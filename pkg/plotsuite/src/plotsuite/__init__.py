"""Publication figures for the security-game experiment exports.

This package consumes only the documented file formats (training-curve CSVs,
evaluation trial CSVs and JSON summaries, sweep CSVs); it never imports the
simulator, so either package installs and runs without the other.
"""

from .figures import KINDS, SMOOTHING_WINDOW, FigureSpec, moving_average, render
from .schemas import (
    EmptyInputError,
    EvalSummary,
    EvalTrials,
    SchemaError,
    SweepGrid,
    TrainingCurves,
    load_eval_csv,
    load_eval_summary,
    load_sweep_csv,
    load_training_csv,
)

__version__ = "0.1.0"

__all__ = [
    "KINDS",
    "SMOOTHING_WINDOW",
    "FigureSpec",
    "render",
    "moving_average",
    "SchemaError",
    "EmptyInputError",
    "TrainingCurves",
    "EvalTrials",
    "EvalSummary",
    "SweepGrid",
    "load_training_csv",
    "load_eval_csv",
    "load_eval_summary",
    "load_sweep_csv",
    "__version__",
]
