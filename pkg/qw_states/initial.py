"""Constructors for the three initial-state families."""
from __future__ import annotations

import math
from typing import List, Tuple

import numpy as np
from pydantic import TypeAdapter, ValidationError

from qw_spectral.basis import eigenvector
from qw_walk.core import CycleParams, WalkState

from .models import Branch, InitialStateSpec, Pair, Quad, SingleNode

_SPEC_ADAPTER: TypeAdapter[InitialStateSpec] = TypeAdapter(InitialStateSpec)

SINGLE_NODE_COIN = (1.0 / math.sqrt(2.0), 1j / math.sqrt(2.0))


def make_single_node(params: CycleParams, v0: int) -> WalkState:
    """((|0> + i|1>)/sqrt(2)) (x) |v0>.

    This coin vector is the one whose eigen-coefficients are a_jk (1 + i b_jk*) / sqrt(2).
    """

    if not 0 <= v0 < params.d:
        raise IndexError(f"v0={v0} outside [0, {params.d})")
    amps = np.zeros((2, params.d), dtype=np.complex128)
    amps[0, v0], amps[1, v0] = SINGLE_NODE_COIN
    return WalkState(params, amps)


def _check_k(k: int) -> None:
    if k not in (0, 1):
        raise ValueError(f"k={k} must be 0 or 1")


def pair_members(params: CycleParams, m: int, branch: Branch = Branch.lower) -> Tuple[int, int]:
    """Eigenvector indices j combined by a pair state."""

    low = 0 if branch is Branch.lower else 1
    if not low <= m <= params.m_max:
        raise ValueError(
            f"m={m} out of range [{low}, {params.m_max}] for {branch.value} pair, d={params.d}"
        )
    half = params.half
    if branch is Branch.lower:
        return m, half - m
    return half + m, params.d - m


def make_pair(params: CycleParams, m: int, k: int, branch: Branch = Branch.lower) -> WalkState:
    """(|phi_{j1,k}> + |phi_{j2,k}>) / sqrt(2) for one degenerate class."""

    _check_k(k)
    first, second = pair_members(params, m, branch)
    amps = eigenvector(first, k, params).amplitudes + eigenvector(second, k, params).amplitudes
    return WalkState(params, amps / math.sqrt(2.0))


def quad_members(params: CycleParams, m: int) -> List[Tuple[int, float]]:
    """(j, weight) terms of the quad state."""

    if not 1 <= m <= params.m_max:
        raise ValueError(f"m={m} out of range [1, {params.m_max}] for quad state, d={params.d}")
    half = params.half
    return [(m, 0.5), (half - m, 0.5), (half + m, -0.5), (params.d - m, -0.5)]


def make_quad(params: CycleParams, m: int, k: int) -> WalkState:
    """(|phi_m> + |phi_{d/2-m}> - |phi_{d/2+m}> - |phi_{d-m}>) / 2 at fixed k."""

    _check_k(k)
    amps = np.zeros((2, params.d), dtype=np.complex128)
    for j, weight in quad_members(params, m):
        amps += weight * eigenvector(j, k, params).amplitudes
    return WalkState(params, amps)


def parse_initial(text: str) -> InitialStateSpec:
    """Parse ``single:<v0>``, ``pair:<m>,<k>[,upper]`` or ``quad:<m>,<k>``."""

    kind, sep, rest = text.strip().partition(":")
    if not sep or not rest:
        raise ValueError(f"invalid initial state {text!r}: expected <kind>:<args>")
    args = [part.strip() for part in rest.split(",")]
    try:
        if kind == "single" and len(args) == 1:
            return SingleNode(v0=int(args[0]))
        if kind == "pair" and len(args) in (2, 3):
            branch = Branch.lower
            if len(args) == 3:
                if args[2] not in ("upper", "lower"):
                    raise ValueError(f"unknown pair branch {args[2]!r}")
                branch = Branch(args[2])
            return Pair(m=int(args[0]), k=int(args[1]), branch=branch)  # type: ignore[arg-type]
        if kind == "quad" and len(args) == 2:
            return Quad(m=int(args[0]), k=int(args[1]))  # type: ignore[arg-type]
    except ValidationError as exc:
        reason = exc.errors()[0]["msg"]
        raise ValueError(f"invalid initial state {text!r}: {reason}") from exc
    except ValueError as exc:
        raise ValueError(f"invalid initial state {text!r}: {exc}") from exc
    raise ValueError(f"invalid initial state {text!r}")


def coerce_initial(value: object) -> InitialStateSpec:
    """Accept a spec model, its string form, or its dict form."""

    if isinstance(value, str):
        return parse_initial(value)
    return _SPEC_ADAPTER.validate_python(value)


def build_initial(spec: InitialStateSpec, params: CycleParams) -> WalkState:
    spec.validate_for(params)
    if isinstance(spec, SingleNode):
        return make_single_node(params, spec.v0)
    if isinstance(spec, Pair):
        return make_pair(params, spec.m, spec.k, spec.branch)
    return make_quad(params, spec.m, spec.k)


__all__ = [
    "SINGLE_NODE_COIN",
    "build_initial",
    "coerce_initial",
    "make_pair",
    "make_quad",
    "make_single_node",
    "pair_members",
    "parse_initial",
    "quad_members",
]
