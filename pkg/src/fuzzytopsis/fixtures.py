"""Access to the bundled study files."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

__all__ = ["fixture_path", "fixture_text", "list_fixtures"]


def fixture_path(name: str) -> Path:
    """Filesystem path of a bundled study file, e.g. ``paper_table4.matrix``."""
    path = Path(str(resources.files("fuzzytopsis.data").joinpath(name)))
    if not path.exists():
        raise FileNotFoundError(f"no bundled file named {name!r}; see list_fixtures()")
    return path


def fixture_text(name: str) -> str:
    return fixture_path(name).read_text(encoding="utf-8")


def list_fixtures() -> list[str]:
    root = resources.files("fuzzytopsis.data")
    return sorted(
        entry.name
        for entry in root.iterdir()
        if entry.is_file() and not entry.name.endswith(".py")
    )
