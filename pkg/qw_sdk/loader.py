"""Helpers for loading the packaged YAML configuration."""
from __future__ import annotations

import hashlib
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict

import yaml

from .models import FigurePresets, VerifySettings

CONFIG_DIR = Path(__file__).resolve().parents[1] / "config"
FIGURES_PATH = CONFIG_DIR / "figures.yml"
VERIFY_PATH = CONFIG_DIR / "verify.yml"


def load_yaml(path: Path | str) -> Dict[str, Any]:
    """Load a YAML file as a dictionary."""
    p = Path(path)
    with p.open("r", encoding="utf-8") as handle:
        data = yaml.safe_load(handle) or {}
    if not isinstance(data, dict):
        raise ValueError(f"Expected mapping at root of {p}, got {type(data)!r}")
    return data


def load_figure_presets(path: Path | str = FIGURES_PATH) -> FigurePresets:
    """Load the figure presets from config/figures.yml."""

    return FigurePresets(**load_yaml(path))


def load_verify_settings(path: Path | str = VERIFY_PATH) -> VerifySettings:
    """Load tolerances and grids from config/verify.yml."""

    return VerifySettings(**load_yaml(path))


@lru_cache(maxsize=1)
def get_figure_presets() -> FigurePresets:
    return load_figure_presets()


@lru_cache(maxsize=1)
def get_verify_settings() -> VerifySettings:
    return load_verify_settings()


def file_sha256(path: Path) -> str:
    """Compute a SHA-256 digest for the supplied file path."""

    data = path.read_bytes()
    return hashlib.sha256(data).hexdigest()


def text_sha256(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


__all__ = [
    "CONFIG_DIR",
    "FIGURES_PATH",
    "VERIFY_PATH",
    "file_sha256",
    "get_figure_presets",
    "get_verify_settings",
    "load_figure_presets",
    "load_verify_settings",
    "load_yaml",
    "text_sha256",
]
