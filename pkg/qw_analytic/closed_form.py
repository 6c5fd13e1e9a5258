"""Closed-form limiting distributions and distances for the three initial-state families.

The pair/quad profile is printed for the mirror image of the walk (its plane waves carry
omega^(jv) while the shift moves coin 0 to v - 1), so it is evaluated at the reflected node
-v mod d. Distances from uniform and the single-node law are reflection invariant.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.typing import NDArray

import structlog

from qw_spectral.basis import SpectralBasis, eigenpair, limiting_distribution
from qw_states.initial import make_quad, make_single_node
from qw_walk.core import CycleParams, Distribution, node_distribution, tvd

FloatArray = NDArray[np.float64]

Z = 3.0 - 2.0 * math.sqrt(2.0)
SUM_TOLERANCE = 1e-10
PAIR_SUM_TOLERANCE = 1e-12
PAIR_CONSISTENCY_TOLERANCE = 1e-12
ORACLE_TOLERANCE = 1e-9
MIN_SIN_TWO_PHASE = 1e-12

logger = structlog.get_logger(__name__)


class FormulaDiscrepancyError(RuntimeError):
    """A closed form disagrees with its oracle or fails to normalize."""

    def __init__(self, message: str, deviation: float) -> None:
        super().__init__(f"{message} (max deviation {deviation:.3e})")
        self.deviation = deviation


class DegenerateParameterError(ValueError):
    """sin(2 phi) vanishes, so the damped-oscillation law is undefined."""


def xi(d: int) -> int:
    """1 when d/2 is even, 0 when d/2 is odd."""
    return (1 + (-1) ** (d // 2)) // 2


def eta(d: int, m: int) -> int:
    """floor(d / (4m) - 1/2) in integer arithmetic."""
    if m < 1:
        raise ValueError(f"eta needs m >= 1, got {m}")
    return (2 * d - 4 * m) // (8 * m)


@dataclass(frozen=True)
class ClosedFormContext:
    params: CycleParams
    z: float
    xi: int
    alpha: float
    eta: Optional[int]
    phase: float

    @classmethod
    def create(cls, params: CycleParams, m: int = 0, k: int = 0) -> "ClosedFormContext":
        return cls(
            params=params,
            z=Z,
            xi=xi(params.d),
            alpha=2.0 * math.pi * m / params.d,
            eta=eta(params.d, m) if m >= 1 else None,
            phase=eigenpair(m % params.d, k, params).phase,
        )


def _check_pair_m(params: CycleParams, m: int) -> None:
    if not 0 <= m <= params.m_max:
        raise ValueError(f"m={m} out of range [0, {params.m_max}] for d={params.d}")


def _check_quad_m(params: CycleParams, m: int) -> None:
    if not 1 <= m <= params.m_max:
        raise ValueError(f"m={m} out of range [1, {params.m_max}] for d={params.d}")


def f_single(x: int | FloatArray, d: int) -> FloatArray:
    """f(x) = sqrt(2) z^x / (1 - (-z)^(d/2)) - delta_x0 - 1/d."""

    xs = np.asarray(x)
    scale = math.sqrt(2.0) / (1.0 - (-Z) ** (d // 2))
    return scale * Z**xs - (xs == 0).astype(np.float64) - 1.0 / d


def _single_node_profile(params: CycleParams, v0: int) -> FloatArray:
    d = params.d
    offset = np.abs(np.arange(d) - v0)
    s = np.minimum(offset, d - offset)
    s_prime = params.half - s
    sign = (-1) ** xi(d)
    return (1.0 + f_single(s, d) - sign * f_single(s_prime, d)) / d


def limiting_single_node(params: CycleParams, v0: int = 0, *, check: bool = True) -> Distribution:
    """Limiting distribution for a start on node ``v0``.

    With ``check`` the result is compared pointwise against the spectral projection and a
    deviation above 1e-9 raises FormulaDiscrepancyError instead of being returned.
    """

    if not 0 <= v0 < params.d:
        raise IndexError(f"v0={v0} outside [0, {params.d})")
    profile = _single_node_profile(params, v0)
    total = float(profile.sum())
    if abs(total - 1.0) > SUM_TOLERANCE:
        raise FormulaDiscrepancyError(
            f"single-node closed form sums to {total:.15g} for d={params.d}", abs(total - 1.0)
        )
    if check:
        oracle = limiting_distribution(make_single_node(params, v0), SpectralBasis.build(params))
        deviation = float(np.max(np.abs(profile - oracle.p)))
        if deviation > ORACLE_TOLERANCE:
            logger.warning(
                "analytic.single_node.discrepancy", d=params.d, v0=v0, deviation=deviation
            )
            raise FormulaDiscrepancyError(
                f"single-node closed form disagrees with spectral projection for d={params.d}",
                deviation,
            )
    return Distribution(params, profile)


def tvd_limit_single_node(params: CycleParams, v0: int = 0) -> float:
    """Exact limiting distance from uniform for a single-node start."""

    return tvd(limiting_single_node(params, v0, check=False))


def tvd_limit_single_node_asymptotic(params: CycleParams) -> float:
    """Large-d form: 1/d when d/2 is odd, else 2/d - 4/d^2 (1 - 2 (log2 d - 1/2) / log2 z)."""

    d = params.d
    if d < 8:
        raise ValueError(f"asymptotic form needs d >= 8, got {d}")
    if xi(d) == 0:
        return 1.0 / d
    return 2.0 / d - 4.0 / d**2 * (1.0 - 2.0 * (math.log2(d) - 0.5) / math.log2(Z))


def _pair_profile(params: CycleParams, m: int, nodes: FloatArray) -> FloatArray:
    d = params.d
    alpha = 2.0 * math.pi * m / d
    amplitude = math.sin(alpha) / (d * math.sqrt(1.0 + math.cos(alpha) ** 2))
    signs = np.where(nodes % 2 == 0, 1.0, -1.0)
    return 1.0 / d + amplitude * signs * np.sin(alpha * (2 * nodes + 1))


def limiting_pair(params: CycleParams, m: int) -> Distribution:
    """Frozen distribution of the pair states (both branches share it)."""

    _check_pair_m(params, m)
    reflected = (-np.arange(params.d)) % params.d
    profile = _pair_profile(params, m, reflected)
    total = float(profile.sum())
    if abs(total - 1.0) > PAIR_SUM_TOLERANCE:
        raise FormulaDiscrepancyError(
            f"pair closed form sums to {total:.15g} for d={params.d}, m={m}", abs(total - 1.0)
        )
    return Distribution(params, profile)


def tvd_pair_closed(params: CycleParams, m: int) -> float:
    """(m/d) (1 / sqrt(1 + cos^2 a)) (1 - cos(2a(eta + 1))); valid when m divides d/2."""

    _check_pair_m(params, m)
    if m == 0 or params.half % m:
        raise ValueError(f"closed pair distance needs m to divide d/2, got m={m}, d={params.d}")
    alpha = 2.0 * math.pi * m / params.d
    steps = eta(params.d, m) + 1
    scale = (m / params.d) / math.sqrt(1.0 + math.cos(alpha) ** 2)
    return scale * (1.0 - math.cos(2 * alpha * steps))


def tvd_pair(params: CycleParams, m: int) -> float:
    """Distance from uniform of the pair-state distribution.

    Evaluates (1/2) sin a / (d sqrt(1 + cos^2 a)) * sum_v |sin(a(2v + 1))|; whenever m divides
    d/2 the short closed form must agree to 1e-12.
    """

    _check_pair_m(params, m)
    if m == 0:
        return 0.0
    d = params.d
    alpha = 2.0 * math.pi * m / d
    nodes = np.arange(d)
    total = float(np.sum(np.abs(np.sin(alpha * (2 * nodes + 1)))))
    general = 0.5 * math.sin(alpha) / (d * math.sqrt(1.0 + math.cos(alpha) ** 2)) * total
    if params.half % m == 0:
        closed = tvd_pair_closed(params, m)
        if abs(closed - general) > PAIR_CONSISTENCY_TOLERANCE:
            raise FormulaDiscrepancyError(
                f"pair distance sum and closed form disagree for d={d}, m={m}",
                abs(closed - general),
            )
    return general


def _quad_terms(params: CycleParams, m: int, k: int) -> tuple[FloatArray, FloatArray, float]:
    _check_quad_m(params, m)
    phase = eigenpair(m, k, params).phase
    sin_two_phase = math.sin(2.0 * phase)
    if abs(sin_two_phase) < MIN_SIN_TWO_PHASE:
        raise DegenerateParameterError(
            f"sin(2 phi) vanishes for d={params.d}, m={m}, k={k}; oscillation law undefined"
        )
    baseline = limiting_pair(params, m).p
    initial = node_distribution(make_quad(params, m, k)).p
    weight = (initial - baseline) / sin_two_phase
    return baseline, weight, phase


def averaged_quad(params: CycleParams, m: int, k: int, t: int) -> Distribution:
    """p_bar_t(v) = A(v) + B(v) sin(2 phi (t + 1)) / (t + 1) for the quad state."""

    if t < 0:
        raise ValueError(f"t must be non-negative, got {t}")
    baseline, weight, phase = _quad_terms(params, m, k)
    damping = math.sin(2.0 * phase * (t + 1)) / (t + 1)
    return Distribution(params, baseline + weight * damping)


def averaged_quad_tvd(params: CycleParams, m: int, k: int, t: int) -> float:
    return tvd(averaged_quad(params, m, k, t))


def averaged_quad_series(params: CycleParams, m: int, k: int, t_max: int) -> FloatArray:
    """Closed-form distance from uniform for t = 0..t_max, shape (t_max + 1,)."""

    if t_max < 0:
        raise ValueError(f"t_max must be non-negative, got {t_max}")
    baseline, weight, phase = _quad_terms(params, m, k)
    times = np.arange(t_max + 1)
    damping = np.sin(2.0 * phase * (times + 1)) / (times + 1)
    profiles = baseline[np.newaxis, :] + damping[:, np.newaxis] * weight[np.newaxis, :]
    return 0.5 * np.sum(np.abs(profiles - 1.0 / params.d), axis=1)


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
