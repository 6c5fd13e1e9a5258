"""Turn experiment requests into CSV tables."""
from __future__ import annotations

import time
from typing import List, Optional

import numpy as np
from numpy.typing import NDArray

import structlog

from qw_analytic import (
    averaged_quad_series,
    limiting_pair,
    limiting_single_node,
    tvd_limit_single_node,
    tvd_limit_single_node_asymptotic,
    tvd_pair,
)
from qw_spectral import SpectralBasis, limiting_distribution
from qw_states import InitialStateSpec, Pair, SingleNode, build_initial
from qw_walk import CycleParams, Distribution, final_average, iter_averaged

from .export import CsvTable, Row
from .loader import get_figure_presets
from .models import ExperimentConfig, What

FloatArray = NDArray[np.float64]

logger = structlog.get_logger(__name__)


def analytic_tvd_series(params: CycleParams, spec: InitialStateSpec, t_max: int) -> FloatArray:
    """Closed-form distance from uniform for t = 0..t_max.

    Single-node starts only have a limit, so their column is the constant limiting value.
    """

    if isinstance(spec, SingleNode):
        return np.full(t_max + 1, tvd_limit_single_node(params, spec.v0))
    if isinstance(spec, Pair):
        return np.full(t_max + 1, tvd_pair(params, spec.m))
    return averaged_quad_series(params, spec.m, spec.k, t_max)


def analytic_limit(params: CycleParams, spec: InitialStateSpec) -> Distribution:
    """Closed-form limiting distribution for the family of ``spec``."""

    if isinstance(spec, SingleNode):
        return limiting_single_node(params, spec.v0, check=False)
    return limiting_pair(params, spec.m)


def _tvd_rows(config: ExperimentConfig, analytic: Optional[FloatArray]) -> List[Row]:
    state0 = build_initial(config.initial, config.params)
    rows: List[Row] = []
    for t, _, delta in iter_averaged(state0, config.t_max):
        if analytic is None:
            rows.append((t, delta))
        else:
            rows.append((t, delta, float(analytic[t])))
    return rows


def run_experiment(config: ExperimentConfig) -> CsvTable:
    """Compute the table requested by ``config.what``."""

    started = time.perf_counter()
    params = config.params
    what = What(config.what)
    if what is What.tvd_series:
        result = CsvTable(("t", "delta"), _tvd_rows(config, None))
    elif what is What.analytic_comparison:
        analytic = analytic_tvd_series(params, config.initial, config.t_max)
        result = CsvTable(("t", "delta", "analytic"), _tvd_rows(config, analytic))
    elif what is What.averaged_distribution:
        final, _ = final_average(build_initial(config.initial, params), config.t_max)
        result = CsvTable(("v", "p"), [(v, float(p)) for v, p in enumerate(final.p)])
    else:
        spectral = limiting_distribution(
            build_initial(config.initial, params), SpectralBasis.build(params)
        )
        closed = analytic_limit(params, config.initial)
        result = CsvTable(
            ("v", "p", "analytic"),
            [(v, float(p), float(q)) for v, (p, q) in enumerate(zip(spectral.p, closed.p))],
        )
    logger.info(
        "experiment.run.done",
        d=config.d,
        initial=config.initial.label(),
        what=what.value,
        t_max=config.t_max,
        rows=len(result.rows),
        elapsed=round(time.perf_counter() - started, 3),
    )
    return result


def figure_config(number: int) -> ExperimentConfig:
    preset = get_figure_presets().get(number)
    what = What.tvd_series if preset.analytic == "none" else What.analytic_comparison
    return ExperimentConfig(d=preset.d, initial=preset.initial, t_max=preset.t_max, what=what)


def figure_table(number: int) -> CsvTable:
    """Simulated series for a preset figure, with the analytic column where one exists."""

    return run_experiment(figure_config(number))


def sweep_table(d_min: int, d_max: int) -> CsvTable:
    """Exact and large-d limiting distance of the single-node start for even d in range."""

    if d_min < 8:
        raise ValueError(f"d_min must be >= 8, got {d_min}")
    if d_max < d_min:
        raise ValueError(f"d_max={d_max} is smaller than d_min={d_min}")
    rows: List[Row] = []
    for d in range(d_min + d_min % 2, d_max + 1, 2):
        params = CycleParams(d)
        rows.append((d, tvd_limit_single_node(params), tvd_limit_single_node_asymptotic(params)))
    logger.info("experiment.sweep.done", d_min=d_min, d_max=d_max, rows=len(rows))
    return CsvTable(("d", "exact", "asymptotic"), rows)


__all__ = [
    "analytic_limit",
    "analytic_tvd_series",
    "figure_config",
    "figure_table",
    "run_experiment",
    "sweep_table",
]
