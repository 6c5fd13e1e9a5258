"""Exact eigensystem of the Hadamard walk operator on even cycles."""
from __future__ import annotations

from .basis import (
    CLASS_TOLERANCE,
    EigenPair,
    SpectralBasis,
    SpectralConsistencyError,
    class_of,
    coin_ratio,
    decompose,
    degenerate_classes,
    eigenpair,
    eigenvalue,
    eigenvector,
    limiting_distribution,
    project,
    reconstruct,
    slot,
)

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
