"""Plain-text rendering of check results."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence

from .checks import CheckResult


@dataclass(frozen=True)
class VerifyReport:
    results: tuple[CheckResult, ...]
    text: str

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    @property
    def failed_names(self) -> List[str]:
        return [result.name for result in self.results if not result.passed]


def render_report(results: Sequence[CheckResult]) -> VerifyReport:
    """One ``PASS|FAIL name detail`` line per check, then a summary line."""

    lines = [
        f"{'PASS' if result.passed else 'FAIL'} {result.name} {result.detail}" for result in results
    ]
    failed = sum(1 for result in results if not result.passed)
    lines.append(f"{len(results) - failed}/{len(results)} checks passed")
    return VerifyReport(results=tuple(results), text="\n".join(lines) + "\n")


__all__ = ["VerifyReport", "render_report"]
