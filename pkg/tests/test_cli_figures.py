from __future__ import annotations

import csv
from pathlib import Path
from typing import Dict, List

import numpy as np
import pytest
from typer.testing import CliRunner

from qw_sdk.cli import app
from qw_sdk.experiments import figure_config


def run_figure(runner: CliRunner, number: int, out: Path) -> Dict[str, np.ndarray]:
    result = runner.invoke(app, ["figure", str(number), "--out", str(out)])
    assert result.exit_code == 0, result.output
    with out.open(encoding="utf-8", newline="") as handle:
        header, *rows = list(csv.reader(handle))
    columns: List[List[float]] = [[float(row[i]) for row in rows] for i in range(len(header))]
    return {name: np.array(values) for name, values in zip(header, columns)}


def test_figure_configs_follow_presets() -> None:
    first = figure_config(1)
    assert (first.d, first.initial.label(), first.t_max) == (24, "single:0", 5000)
    assert first.what.value == "tvd_series"
    assert figure_config(2).what.value == "analytic_comparison"
    assert figure_config(3).initial.label() == "quad:3,0"


def test_figure1_approaches_limit(runner: CliRunner, tmp_path: Path) -> None:
    table = run_figure(runner, 1, tmp_path / "figure1.csv")
    assert list(table) == ["t", "delta"]
    assert len(table["t"]) == 5001
    assert abs(table["delta"][-1] - 0.054) < 0.005


def test_figure2_is_flat_and_matches_closed_form(runner: CliRunner, tmp_path: Path) -> None:
    table = run_figure(runner, 2, tmp_path / "figure2.csv")
    assert list(table) == ["t", "delta", "analytic"]
    assert np.max(np.abs(table["delta"] - table["analytic"])) < 1e-9
    assert np.ptp(table["delta"]) < 1e-11
    assert table["analytic"][0] == pytest.approx(0.204, abs=5e-4)


def test_figure3_follows_damped_law(runner: CliRunner, tmp_path: Path) -> None:
    table = run_figure(runner, 3, tmp_path / "figure3.csv")
    assert len(table["t"]) == 1001
    assert np.max(np.abs(table["delta"] - table["analytic"])) < 1e-7
    assert float(np.mean(table["delta"][900:])) > table["delta"][0]


def test_unknown_figure_exits_2(runner: CliRunner) -> None:
    result = runner.invoke(app, ["figure", "4"])
    assert result.exit_code == 2
