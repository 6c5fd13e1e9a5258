"""Invariant suite behind ``qw verify``."""
from __future__ import annotations

from .checks import CHECKS, CheckResult, check, run_checks
from .report import VerifyReport, render_report

__all__ = ["CHECKS", "CheckResult", "VerifyReport", "check", "render_report", "run_checks"]
