"""State vectors, one-step evolution and time-averaged node distributions."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from decimal import Decimal
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np
from numpy.typing import NDArray

import structlog

ComplexArray = NDArray[np.complex128]
FloatArray = NDArray[np.float64]

SQRT1_2 = 1.0 / np.sqrt(2.0)
# rounding residue of SQRT1_2; SQRT1_2 + SQRT1_2_RESIDUE is 1/sqrt(2) past double precision
SQRT1_2_RESIDUE = float(Decimal(2).sqrt() / 2 - Decimal(SQRT1_2))
NORM_TOLERANCE = 1e-12
DISTRIBUTION_SUM_TOLERANCE = 1e-10
NEGATIVE_CLAMP = 1e-14

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class CycleParams:
    """Cycle size ``d`` together with the constants derived from it."""

    d: int

    def __post_init__(self) -> None:
        if isinstance(self.d, bool) or not isinstance(self.d, (int, np.integer)):
            raise ValueError(f"d must be an integer, got {self.d!r}")
        if self.d < 4 or self.d % 2:
            raise ValueError(f"d must be even and >= 4, got {self.d}")
        object.__setattr__(self, "d", int(self.d))

    @property
    def half(self) -> int:
        return self.d // 2

    @property
    def m_max(self) -> int:
        """Largest admissible ``m`` for pair and quad initial states."""
        return (self.d - 2) // 4

    @property
    def omega(self) -> complex:
        return complex(np.exp(2j * np.pi / self.d))

    @property
    def uniform_probability(self) -> float:
        return 1.0 / self.d


@dataclass(frozen=True, eq=False)
class WalkState:
    """Normalized amplitudes ``gamma[s, v]`` over coin (s) and position (v)."""

    params: CycleParams
    amplitudes: ComplexArray = field(repr=False)

    def __post_init__(self) -> None:
        amps = np.array(self.amplitudes, dtype=np.complex128, copy=True)
        expected = (2, self.params.d)
        if amps.shape != expected:
            raise ValueError(f"amplitudes must have shape {expected}, got {amps.shape}")
        total = float(np.sum(amps.real**2 + amps.imag**2))
        if abs(total - 1.0) > NORM_TOLERANCE:
            raise ValueError(f"state is not normalized: squared norm {total:.15g}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def d(self) -> int:
        return self.params.d

    def vector(self) -> ComplexArray:
        """Flat amplitude vector indexed ``s * d + v``."""
        return self.amplitudes.reshape(-1)


@dataclass(frozen=True, eq=False)
class Distribution:
    """Probability distribution over the d nodes of the cycle."""

    params: CycleParams
    p: FloatArray = field(repr=False)

    def __post_init__(self) -> None:
        probs = np.array(self.p, dtype=np.float64, copy=True)
        if probs.shape != (self.params.d,):
            raise ValueError(f"distribution must have length {self.params.d}, got {probs.shape}")
        if np.any(probs < -NEGATIVE_CLAMP):
            raise ValueError(f"negative probability {float(probs.min()):.3e}")
        probs[probs < 0.0] = 0.0
        total = float(probs.sum())
        if abs(total - 1.0) > DISTRIBUTION_SUM_TOLERANCE:
            raise ValueError(f"distribution sums to {total:.15g}, expected 1")
        probs.setflags(write=False)
        object.__setattr__(self, "p", probs)

    def __len__(self) -> int:
        return self.params.d


@dataclass(frozen=True)
class TvdSeries:
    """Ordered ``(t, delta)`` entries starting at t = 0.

    With ``d`` set, every delta must lie in [0, 1 - 1/d]; otherwise in [0, 1].
    """

    entries: Tuple[Tuple[int, float], ...]
    d: Optional[int] = None

    def __post_init__(self) -> None:
        upper = 1.0 if self.d is None else 1.0 - 1.0 / self.d
        previous = -1
        for t, delta in self.entries:
            if t <= previous:
                raise ValueError(f"time steps must increase strictly, got {t} after {previous}")
            if previous == -1 and t != 0:
                raise ValueError("series must start at t = 0")
            if not 0.0 <= delta <= upper:
                raise ValueError(f"delta {delta} outside [0, {upper:.15g}]")
            previous = t

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def times(self) -> List[int]:
        return [t for t, _ in self.entries]

    @property
    def deltas(self) -> FloatArray:
        return np.array([delta for _, delta in self.entries], dtype=np.float64)

    @property
    def last(self) -> float:
        return self.entries[-1][1]

    def tail_limit(self, window: int = 100) -> float:
        """Estimate of the limiting distance: mean of the last ``window`` deltas."""

        if window <= 0:
            raise ValueError("window must be positive")
        tail = self.deltas[-window:]
        return float(tail.mean())


def _butterfly(amps: ComplexArray) -> ComplexArray:
    return np.stack((amps[0] + amps[1], amps[0] - amps[1]))


def _coin(amps: ComplexArray) -> ComplexArray:
    raw = _butterfly(amps)
    return raw * SQRT1_2 + raw * SQRT1_2_RESIDUE


def _shift(amps: ComplexArray) -> ComplexArray:
    # coin 0 moves v -> v-1, coin 1 moves v -> v+1
    return np.stack((np.roll(amps[0], -1), np.roll(amps[1], 1)))


def _probabilities(amps: ComplexArray) -> FloatArray:
    return np.sum(amps.real**2 + amps.imag**2, axis=0)


def _tvd_from_array(p: FloatArray, d: int) -> float:
    value = float(0.5 * np.sum(np.abs(p - 1.0 / d)))
    return min(max(value, 0.0), 1.0 - 1.0 / d)


def norm(state: WalkState) -> float:
    return float(np.linalg.norm(state.vector()))


def apply_coin(state: WalkState) -> WalkState:
    """Apply the Hadamard coin at every node."""

    return WalkState(state.params, _coin(state.amplitudes))


def apply_shift(state: WalkState) -> WalkState:
    """Move amplitude at (s, v) to (s, v + 2s - 1 mod d)."""

    return WalkState(state.params, _shift(state.amplitudes))


def step(state: WalkState) -> WalkState:
    """One step of the walk, U = S (H x I)."""

    return WalkState(state.params, _shift(_coin(state.amplitudes)))


def _double_step(amps: ComplexArray) -> ComplexArray:
    # two unscaled butterflies gain exactly 2; the 0.5 is exact
    return _shift(_butterfly(_shift(_butterfly(amps)))) * 0.5


def evolve(state: WalkState, t: int) -> WalkState:
    """Apply ``t`` steps to ``state``.

    Steps are taken in pairs with the Hadamard factor applied as an exact 1/2, so the norm
    does not drift with t; a trailing odd step uses the ordinary coin.
    """

    if t < 0:
        raise ValueError(f"t must be non-negative, got {t}")
    amps = state.amplitudes
    for _ in range(t // 2):
        amps = _double_step(amps)
    if t % 2:
        amps = _shift(_coin(amps))
    return WalkState(state.params, amps)


def node_distribution(state: WalkState) -> Distribution:
    """Trace out the coin: p(v) = |gamma_0v|^2 + |gamma_1v|^2."""

    return Distribution(state.params, _probabilities(state.amplitudes))


def uniform(params: CycleParams) -> Distribution:
    return Distribution(params, np.full(params.d, params.uniform_probability))


def point_mass(params: CycleParams, v: int) -> Distribution:
    if not 0 <= v < params.d:
        raise IndexError(f"node {v} outside [0, {params.d})")
    probs = np.zeros(params.d)
    probs[v] = 1.0
    return Distribution(params, probs)


def tvd(dist: Distribution) -> float:
    """Total variation distance from the uniform distribution."""

    return _tvd_from_array(dist.p, dist.params.d)


def tvd_between(first: Distribution, second: Distribution) -> float:
    if first.params.d != second.params.d:
        raise ValueError(f"cycle sizes differ: {first.params.d} != {second.params.d}")
    return float(0.5 * np.sum(np.abs(first.p - second.p)))


def _averaged_row(
    params: CycleParams, t: int, mean: FloatArray
) -> Tuple[int, Distribution, float]:
    # emitted rows are renormalized; the running sum carries rounding noise
    dist = Distribution(params, mean / mean.sum())
    return t, dist, _tvd_from_array(dist.p, params.d)


def iter_averaged(state0: WalkState, t_max: int) -> Iterator[Tuple[int, Distribution, float]]:
    """Yield ``(t, p_bar_t, delta_t)`` for t = 0..t_max.

    The running mean is updated as p_bar_t = p_bar_{t-1} + (p_t - p_bar_{t-1}) / (t + 1).
    Amplitudes evolve unscaled between even steps: at odd t they are sqrt(2) times the
    state, so p_t is half their squared modulus.
    """

    if t_max < 0:
        raise ValueError(f"t_max must be non-negative, got {t_max}")
    params = state0.params
    amps = state0.amplitudes
    mean = _probabilities(amps)
    yield _averaged_row(params, 0, mean)
    for t in range(1, t_max + 1):
        amps = _shift(_butterfly(amps))
        if t % 2:
            probs = 0.5 * _probabilities(amps)
        else:
            amps = amps * 0.5
            probs = _probabilities(amps)
        mean = mean + (probs - mean) / (t + 1)
        yield _averaged_row(params, t, mean)


def final_average(state0: WalkState, t_max: int) -> Tuple[Distribution, float]:
    """``(p_bar_{t_max}, delta_{t_max})`` without keeping the intermediate rows."""

    last = deque(iter_averaged(state0, t_max), maxlen=1)
    _, mean, delta = last[0]
    return mean, delta


def evolve_averaged(state0: WalkState, t_max: int) -> Tuple[List[Distribution], TvdSeries]:
    """Time-averaged distributions and their distance from uniform for t = 0..t_max."""

    averaged: List[Distribution] = []
    entries: List[Tuple[int, float]] = []
    for t, mean, delta in iter_averaged(state0, t_max):
        averaged.append(mean)
        entries.append((t, delta))
    logger.debug("walk.evolve_averaged.done", d=state0.d, t_max=t_max, last_delta=entries[-1][1])
    return averaged, TvdSeries(tuple(entries), d=state0.d)


def transition_matrix(params: CycleParams) -> ComplexArray:
    """Dense 2d x 2d matrix of U in the ``s * d + v`` basis."""

    d = params.d
    hadamard = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) * SQRT1_2
    coin = np.kron(hadamard, np.eye(d, dtype=np.complex128))
    shift = np.zeros((2 * d, 2 * d), dtype=np.complex128)
    for s in (0, 1):
        for v in range(d):
            shift[s * d + (v + 2 * s - 1) % d, s * d + v] = 1.0
    return shift @ coin


def state_from_vector(params: CycleParams, vector: Sequence[complex] | ComplexArray) -> WalkState:
    """Build a state from a flat ``s * d + v`` amplitude vector."""

    return WalkState(params, np.asarray(vector, dtype=np.complex128).reshape(2, params.d))
