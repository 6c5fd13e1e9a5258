"""Public surface for running walk experiments and loading packaged configuration."""
from __future__ import annotations

from .experiments import figure_table, run_experiment, sweep_table
from .export import CsvTable, format_cell
from .loader import (
    file_sha256,
    get_figure_presets,
    get_verify_settings,
    load_figure_presets,
    load_verify_settings,
)
from .models import ExperimentConfig, FigurePresets, VerifySettings, What
from .versioning import config_versions

__all__ = [
    "__version__",
    "CsvTable",
    "ExperimentConfig",
    "FigurePresets",
    "VerifySettings",
    "What",
    "config_versions",
    "figure_table",
    "file_sha256",
    "format_cell",
    "get_figure_presets",
    "get_verify_settings",
    "load_figure_presets",
    "load_verify_settings",
    "run_experiment",
    "sweep_table",
]

__version__ = "0.1.0"
