"""Coined Hadamard walk on even cycles: states, evolution, averaging."""
from __future__ import annotations

from .core import (
    CycleParams,
    Distribution,
    TvdSeries,
    WalkState,
    apply_coin,
    apply_shift,
    evolve,
    evolve_averaged,
    final_average,
    iter_averaged,
    node_distribution,
    norm,
    point_mass,
    state_from_vector,
    step,
    transition_matrix,
    tvd,
    tvd_between,
    uniform,
)

__all__ = [
    "CycleParams",
    "Distribution",
    "TvdSeries",
    "WalkState",
    "apply_coin",
    "apply_shift",
    "evolve",
    "evolve_averaged",
    "final_average",
    "iter_averaged",
    "node_distribution",
    "norm",
    "point_mass",
    "state_from_vector",
    "step",
    "transition_matrix",
    "tvd",
    "tvd_between",
    "uniform",
]
