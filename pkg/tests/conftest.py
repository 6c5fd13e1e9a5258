from __future__ import annotations

import sys
from pathlib import Path
from typing import Iterator

import pytest
import structlog
from typer.testing import CliRunner

REPO_ROOT = Path(__file__).resolve().parents[1]
if str(REPO_ROOT) not in sys.path:
    sys.path.insert(0, str(REPO_ROOT))

from qw_spectral import SpectralBasis  # noqa: E402
from qw_walk import CycleParams  # noqa: E402


@pytest.fixture(autouse=True)
def reset_structlog() -> Iterator[None]:
    """CLI invocations reconfigure structlog; restore defaults after every test."""

    yield
    structlog.reset_defaults()


@pytest.fixture(scope="session")
def params24() -> CycleParams:
    return CycleParams(24)


@pytest.fixture(scope="session")
def basis24(params24: CycleParams) -> SpectralBasis:
    return SpectralBasis.build(params24)


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()
