"""Closed-form eigensystem of the walk operator and projections onto it.

The operator U commutes with translations of the cycle, so every eigenvector is a plane
wave in position times a fixed coin vector. With the shift moving coin 0 to v - 1, the
eigenvalue ``c_jk`` and coin ratio ``b_jk`` below belong to the plane wave
``sum_v omega^(-jv) |v>``; ``eigenvector`` materializes exactly that wave.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import FrozenSet, List, Sequence, Set, Tuple

import numpy as np
from numpy.typing import NDArray

import structlog

from qw_walk.core import CycleParams, Distribution, WalkState

ComplexArray = NDArray[np.complex128]
Index = Tuple[int, int]

CLASS_TOLERANCE = 1e-10

logger = structlog.get_logger(__name__)


class SpectralConsistencyError(RuntimeError):
    """Raised when float grouping of eigenvalues disagrees with index arithmetic."""


@dataclass(frozen=True)
class EigenPair:
    j: int
    k: int
    c: complex
    a: float
    b: complex
    phase: float


def _check_index(j: int, k: int, params: CycleParams) -> None:
    if not 0 <= j < params.d:
        raise IndexError(f"j={j} outside [0, {params.d})")
    if k not in (0, 1):
        raise IndexError(f"k={k} must be 0 or 1")


def _angle(j: int, d: int) -> float:
    return 2.0 * math.pi * j / d


def slot(j: int, k: int, params: CycleParams) -> int:
    """Position of (j, k) in coefficient vectors."""
    return k * params.d + j


def eigenvalue(j: int, k: int, params: CycleParams) -> complex:
    """c_jk = ((-1)^k sqrt(1 + cos^2 t) - i sin t) / sqrt(2), t = 2 pi j / d."""

    _check_index(j, k, params)
    theta = _angle(j, params.d)
    radial = (-1) ** k * math.sqrt(1.0 + math.cos(theta) ** 2)
    return complex(radial, -math.sin(theta)) / math.sqrt(2.0)


def coin_ratio(j: int, k: int, params: CycleParams) -> complex:
    """b_jk = omega^j ((-1)^k sqrt(1 + cos^2 t) - cos t)."""

    _check_index(j, k, params)
    theta = _angle(j, params.d)
    radial = (-1) ** k * math.sqrt(1.0 + math.cos(theta) ** 2) - math.cos(theta)
    return cmath.exp(1j * theta) * radial


def eigenpair(j: int, k: int, params: CycleParams) -> EigenPair:
    c = eigenvalue(j, k, params)
    b = coin_ratio(j, k, params)
    a = 1.0 / math.sqrt(params.d * (1.0 + abs(b) ** 2))
    return EigenPair(j=j, k=k, c=c, a=a, b=b, phase=cmath.phase(c))


def _plane_wave(j: int, d: int) -> ComplexArray:
    # reduce j*v mod d first so the exponent stays small
    exponents = (j * np.arange(d)) % d
    return np.exp(-2j * np.pi * exponents / d)


def _amplitudes(pair: EigenPair, d: int) -> ComplexArray:
    wave = _plane_wave(pair.j, d)
    return np.stack((pair.a * wave, pair.a * pair.b * wave))


def eigenvector(j: int, k: int, params: CycleParams) -> WalkState:
    """Materialize |phi_jk> as a normalized walk state."""

    return WalkState(params, _amplitudes(eigenpair(j, k, params), params.d))


def class_of(j: int, k: int, params: CycleParams) -> Tuple[Index, ...]:
    """Degenerate class of (j, k) from index arithmetic: {j, d/2 - j mod d} at fixed k."""

    _check_index(j, k, params)
    partner = (params.half - j) % params.d
    return tuple((index, k) for index in sorted({j, partner}))


def _group_by_eigenvalue(pairs: Sequence[EigenPair], tolerance: float) -> List[Tuple[Index, ...]]:
    groups: List[List[EigenPair]] = []
    for pair in pairs:
        for group in groups:
            if abs(group[0].c - pair.c) < tolerance:
                group.append(pair)
                break
        else:
            groups.append([pair])
    return [tuple(sorted((p.j, p.k) for p in group)) for group in groups]


@dataclass(frozen=True)
class SpectralBasis:
    """All 2d eigenpairs of U for one cycle size, grouped into degenerate classes."""

    params: CycleParams
    pairs: Tuple[EigenPair, ...]
    classes: Tuple[Tuple[Index, ...], ...]

    @classmethod
    def build(cls, params: CycleParams, *, tolerance: float = CLASS_TOLERANCE) -> "SpectralBasis":
        pairs = tuple(eigenpair(j, k, params) for k in (0, 1) for j in range(params.d))

        by_value = _group_by_eigenvalue(pairs, tolerance)
        by_index: Set[Tuple[Index, ...]] = {
            class_of(j, k, params) for k in (0, 1) for j in range(params.d)
        }
        float_partition: Set[FrozenSet[Index]] = {frozenset(group) for group in by_value}
        index_partition: Set[FrozenSet[Index]] = {frozenset(group) for group in by_index}
        if float_partition != index_partition:
            mismatch = sorted(tuple(sorted(group)) for group in float_partition ^ index_partition)
            raise SpectralConsistencyError(
                f"eigenvalue classes disagree with index arithmetic for d={params.d}: {mismatch}"
            )

        classes = tuple(sorted(by_index, key=lambda group: (group[0][1], group[0][0])))
        logger.debug("spectral.basis.built", d=params.d, classes=len(classes))
        return cls(params=params, pairs=pairs, classes=classes)

    @property
    def d(self) -> int:
        return self.params.d

    def pair(self, j: int, k: int) -> EigenPair:
        _check_index(j, k, self.params)
        return self.pairs[slot(j, k, self.params)]

    def vector(self, j: int, k: int) -> ComplexArray:
        return _amplitudes(self.pair(j, k), self.d)


def _check_same_cycle(state: WalkState, basis: SpectralBasis) -> None:
    if state.d != basis.d:
        raise ValueError(f"dimension mismatch: state has d={state.d}, basis has d={basis.d}")


def _coefficient_arrays(basis: SpectralBasis) -> Tuple[NDArray[np.float64], ComplexArray]:
    a = np.array([pair.a for pair in basis.pairs], dtype=np.float64).reshape(2, basis.d)
    b = np.array([pair.b for pair in basis.pairs], dtype=np.complex128).reshape(2, basis.d)
    return a, b


def decompose(state: WalkState, basis: SpectralBasis) -> ComplexArray:
    """Coefficients <phi_jk|Psi> ordered by ``slot(j, k)``.

    Summing conj(omega^(-jv)) psi(v) over v is d * ifft(psi)[j], so every coefficient comes
    out of two inverse FFTs of the coin components.
    """

    _check_same_cycle(state, basis)
    d = basis.d
    spectrum = d * np.fft.ifft(state.amplitudes, axis=1)
    a, b = _coefficient_arrays(basis)
    coefficients = a * (spectrum[0][np.newaxis, :] + np.conj(b) * spectrum[1][np.newaxis, :])
    return coefficients.reshape(-1)


def _synthesize(coefficients: ComplexArray, basis: SpectralBasis) -> ComplexArray:
    d = basis.d
    coeffs = np.asarray(coefficients, dtype=np.complex128)
    if coeffs.shape != (2 * d,):
        raise ValueError(f"expected {2 * d} coefficients, got shape {coeffs.shape}")
    a, b = _coefficient_arrays(basis)
    weights = coeffs.reshape(2, d) * a
    coin0 = weights.sum(axis=0)
    coin1 = (weights * b).sum(axis=0)
    # sum_j y_j omega^(-jv) is the forward FFT of y
    return np.stack((np.fft.fft(coin0), np.fft.fft(coin1)))


def reconstruct(coefficients: ComplexArray, basis: SpectralBasis) -> WalkState:
    """Inverse of :func:`decompose`."""

    return WalkState(basis.params, _synthesize(coefficients, basis))


def degenerate_classes(basis: SpectralBasis) -> Tuple[Tuple[Index, ...], ...]:
    """Partition of the (j, k) indices into groups sharing one eigenvalue."""

    return basis.classes


def project(
    state: WalkState,
    members: Sequence[Index],
    basis: SpectralBasis,
    coefficients: ComplexArray | None = None,
) -> ComplexArray:
    """Amplitudes of P_lambda |Psi> for the eigenspace spanned by ``members``."""

    _check_same_cycle(state, basis)
    if coefficients is None:
        coefficients = decompose(state, basis)
    projected = np.zeros((2, basis.d), dtype=np.complex128)
    for j, k in members:
        projected += coefficients[slot(j, k, basis.params)] * basis.vector(j, k)
    return projected


def limiting_distribution(state0: WalkState, basis: SpectralBasis) -> Distribution:
    """Limit of the time-averaged node distribution.

    Cross terms between distinct eigenvalues average out, so only the squared projections
    onto each degenerate class survive.
    """

    coefficients = decompose(state0, basis)
    probs = np.zeros(basis.d)
    for members in basis.classes:
        projected = project(state0, members, basis, coefficients)
        probs += np.sum(projected.real**2 + projected.imag**2, axis=0)
    return Distribution(basis.params, probs)


__all__ = [
    "CLASS_TOLERANCE",
    "EigenPair",
    "SpectralBasis",
    "SpectralConsistencyError",
    "class_of",
    "coin_ratio",
    "decompose",
    "degenerate_classes",
    "eigenpair",
    "eigenvalue",
    "eigenvector",
    "limiting_distribution",
    "project",
    "reconstruct",
    "slot",
]
