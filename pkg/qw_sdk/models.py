"""Pydantic models for experiment runs and the packaged configuration files."""
from __future__ import annotations

from enum import Enum
from pathlib import Path
from typing import Any, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from qw_states import InitialStateSpec, coerce_initial
from qw_walk import CycleParams

MAX_T_MAX = 10**7


class What(str, Enum):
    """Quantity written by ``qw simulate``."""

    tvd_series = "tvd_series"
    averaged_distribution = "averaged_distribution"
    limiting_distribution = "limiting_distribution"
    analytic_comparison = "analytic_comparison"


class ExperimentConfig(BaseModel):
    """One simulation request."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    d: int
    initial: InitialStateSpec
    t_max: int = Field(ge=0, le=MAX_T_MAX)
    output_path: Optional[Path] = None
    what: What = What.tvd_series

    @field_validator("initial", mode="before")
    @classmethod
    def _parse_initial(cls, value: Any) -> Any:
        if isinstance(value, str):
            return coerce_initial(value)
        return value

    @model_validator(mode="after")
    def _check_against_cycle(self) -> "ExperimentConfig":
        params = CycleParams(self.d)
        try:
            self.initial.validate_for(params)
        except IndexError as exc:
            raise ValueError(str(exc)) from exc
        return self

    @property
    def params(self) -> CycleParams:
        return CycleParams(self.d)


class FigurePreset(BaseModel):
    """Parameters of one reproduced figure."""

    model_config = ConfigDict(extra="forbid")

    number: int = Field(ge=1)
    d: int
    initial: str
    t_max: int = Field(ge=0, le=MAX_T_MAX)
    analytic: Literal["none", "pair", "quad"] = "none"


class FigurePresets(BaseModel):
    """Contents of ``config/figures.yml``."""

    version: str
    figures: List[FigurePreset]

    @model_validator(mode="after")
    def _unique_numbers(self) -> "FigurePresets":
        numbers = [figure.number for figure in self.figures]
        if len(numbers) != len(set(numbers)):
            raise ValueError(f"duplicate figure numbers in {numbers}")
        return self

    @property
    def numbers(self) -> List[int]:
        return sorted(figure.number for figure in self.figures)

    def get(self, number: int) -> FigurePreset:
        for figure in self.figures:
            if figure.number == number:
                return figure
        raise ValueError(f"unknown figure {number}; expected one of {self.numbers}")


class VerifyTolerances(BaseModel):
    eigen_relation: float = Field(gt=0)
    orthonormality: float = Field(gt=0)
    conjugate_symmetry: float = Field(gt=0)
    matrix_step: float = Field(gt=0)
    coin_involution: float = Field(gt=0)
    norm: float = Field(gt=0)
    distribution_sum: float = Field(gt=0)
    reconstruction: float = Field(gt=0)
    decomposition: float = Field(gt=0)
    limiting_invariance: float = Field(gt=0)
    constructor_norm: float = Field(gt=0)
    oracle: float = Field(gt=0)
    frozen: float = Field(gt=0)
    frozen_overlap: float = Field(gt=0)
    pair_closed: float = Field(gt=0)
    pair_consistency: float = Field(gt=0)
    quad_law: float = Field(gt=0)
    figure1_simulated: float = Field(gt=0)
    figure1_reference: float = Field(gt=0)
    figure2_analytic: float = Field(gt=0)


class VerifyGrids(BaseModel):
    spectral: List[int]
    closed_form: List[int]
    pair_consistency_d_max: int = Field(ge=4)
    odd_half: List[int]
    trend: List[int] = Field(min_length=2)
    quad_law: List[int] = Field(min_length=1)

    @field_validator("spectral", "closed_form", "odd_half", "trend")
    @classmethod
    def _valid_sizes(cls, sizes: List[int]) -> List[int]:
        for d in sizes:
            CycleParams(d)
        return sizes

    @field_validator("odd_half")
    @classmethod
    def _odd_halves(cls, sizes: List[int]) -> List[int]:
        even = [d for d in sizes if (d // 2) % 2 == 0]
        if even:
            raise ValueError(f"odd_half grid contains sizes with even d/2: {even}")
        return sizes

    @field_validator("quad_law")
    @classmethod
    def _quad_sizes(cls, sizes: List[int]) -> List[int]:
        small = [d for d in sizes if CycleParams(d).m_max < 1]
        if small:
            raise ValueError(f"quad_law grid contains sizes without a quad state: {small}")
        return sizes


class VerifyRuns(BaseModel):
    norm_steps: int = Field(ge=1)
    norm_d: int
    parity_steps: int = Field(ge=1)
    frozen_steps: int = Field(ge=1)
    quad_steps: int = Field(ge=1)
    quad_tail_from: int = Field(ge=0)
    quad_grid_steps: int = Field(ge=1)
    figure1_steps: int = Field(ge=1)
    reference_delta: float
    reference_pair_delta: float
    seed: int = 0

    @model_validator(mode="after")
    def _tail_inside_run(self) -> "VerifyRuns":
        if self.quad_tail_from >= self.quad_steps:
            raise ValueError("quad_tail_from must be smaller than quad_steps")
        return self


class VerifySettings(BaseModel):
    """Contents of ``config/verify.yml``."""

    version: str
    tolerances: VerifyTolerances
    grids: VerifyGrids
    runs: VerifyRuns


__all__ = [
    "ExperimentConfig",
    "FigurePreset",
    "FigurePresets",
    "MAX_T_MAX",
    "VerifyGrids",
    "VerifyRuns",
    "VerifySettings",
    "VerifyTolerances",
    "What",
]
