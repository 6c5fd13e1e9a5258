"""Pydantic models describing the initial-state families."""
from __future__ import annotations

from enum import Enum
from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from qw_walk.core import CycleParams


class StrictFrozenModel(BaseModel):
    """Immutable pydantic base model that forbids unknown fields."""

    model_config = ConfigDict(extra="forbid", frozen=True)


class Branch(str, Enum):
    lower = "lower"
    upper = "upper"


class SingleNode(StrictFrozenModel):
    """Walker localized on node ``v0`` with coin (|0> + i|1>)/sqrt(2)."""

    kind: Literal["single"] = "single"
    v0: int = Field(ge=0)

    def label(self) -> str:
        return f"single:{self.v0}"

    def validate_for(self, params: CycleParams) -> None:
        if self.v0 >= params.d:
            raise IndexError(f"v0={self.v0} outside [0, {params.d})")


class Pair(StrictFrozenModel):
    """Equal superposition of two degenerate eigenvectors."""

    kind: Literal["pair"] = "pair"
    m: int = Field(ge=0)
    k: Literal[0, 1] = 0
    branch: Branch = Branch.lower

    @model_validator(mode="after")
    def _upper_starts_at_one(self) -> "Pair":
        if self.branch is Branch.upper and self.m < 1:
            raise ValueError("upper pair states need m >= 1")
        return self

    def label(self) -> str:
        suffix = ",upper" if self.branch is Branch.upper else ""
        return f"pair:{self.m},{self.k}{suffix}"

    def validate_for(self, params: CycleParams) -> None:
        if self.m > params.m_max:
            raise ValueError(f"m={self.m} out of range for d={params.d} (m_max={params.m_max})")


class Quad(StrictFrozenModel):
    """Signed superposition of four eigenvectors from two conjugate classes."""

    kind: Literal["quad"] = "quad"
    m: int = Field(ge=1)
    k: Literal[0, 1] = 0

    def label(self) -> str:
        return f"quad:{self.m},{self.k}"

    def validate_for(self, params: CycleParams) -> None:
        if self.m > params.m_max:
            raise ValueError(f"m={self.m} out of range for d={params.d} (m_max={params.m_max})")


InitialStateSpec = Annotated[Union[SingleNode, Pair, Quad], Field(discriminator="kind")]


__all__ = ["Branch", "InitialStateSpec", "Pair", "Quad", "SingleNode", "StrictFrozenModel"]
