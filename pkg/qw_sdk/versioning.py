"""Version and digest report for the packaged configuration files."""
from __future__ import annotations

from pathlib import Path

from .loader import FIGURES_PATH, VERIFY_PATH, file_sha256, load_yaml

FILES = {
    "figures": FIGURES_PATH,
    "verify": VERIFY_PATH,
}


def _version_from_yaml(path: Path) -> str | None:
    try:
        version = load_yaml(path).get("version")
    except (OSError, ValueError):
        return None
    return None if version is None else str(version)


def config_versions() -> dict[str, dict[str, object]]:
    """Return version, short digest and path of each configuration file."""

    out: dict[str, dict[str, object]] = {}
    for key, path in FILES.items():
        if path.exists():
            out[key] = {
                "version": _version_from_yaml(path),
                "sha256": file_sha256(path)[:12],
                "path": str(path),
            }
        else:
            out[key] = {"missing": True, "path": str(path)}
    return out
