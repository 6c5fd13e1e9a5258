"""Closed-form limits for single-node, pair and quad initial states."""
from __future__ import annotations

from .closed_form import (
    Z,
    ClosedFormContext,
    DegenerateParameterError,
    FormulaDiscrepancyError,
    averaged_quad,
    averaged_quad_series,
    averaged_quad_tvd,
    eta,
    f_single,
    limiting_pair,
    limiting_single_node,
    tvd_limit_single_node,
    tvd_limit_single_node_asymptotic,
    tvd_pair,
    tvd_pair_closed,
    xi,
)

__all__ = [
    "ClosedFormContext",
    "DegenerateParameterError",
    "FormulaDiscrepancyError",
    "Z",
    "averaged_quad",
    "averaged_quad_series",
    "averaged_quad_tvd",
    "eta",
    "f_single",
    "limiting_pair",
    "limiting_single_node",
    "tvd_limit_single_node",
    "tvd_limit_single_node_asymptotic",
    "tvd_pair",
    "tvd_pair_closed",
    "xi",
]
