"""Initial states: single occupied node, degenerate pairs, four-eigenvector states."""
from __future__ import annotations

from .initial import (
    SINGLE_NODE_COIN,
    build_initial,
    coerce_initial,
    make_pair,
    make_quad,
    make_single_node,
    pair_members,
    parse_initial,
    quad_members,
)
from .models import Branch, InitialStateSpec, Pair, Quad, SingleNode

__all__ = [
    "Branch",
    "InitialStateSpec",
    "Pair",
    "Quad",
    "SINGLE_NODE_COIN",
    "SingleNode",
    "build_initial",
    "coerce_initial",
    "make_pair",
    "make_quad",
    "make_single_node",
    "pair_members",
    "parse_initial",
    "quad_members",
]
