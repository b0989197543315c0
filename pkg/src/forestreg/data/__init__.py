"""Bundled example graphs."""

from importlib import resources
from pathlib import Path

BUNDLED = (
    "cm_forest_12.graph",
    "cm_forest_10.graph",
    "nonsink_forest_10.graph",
    "single_edge_w4.graph",
)


def path(name: str) -> Path:
    """Filesystem path of a bundled graph file."""
    if name not in BUNDLED:
        raise KeyError(f"unknown bundled graph {name!r}; have {BUNDLED}")
    return Path(str(resources.files(__package__) / name))


def text(name: str) -> str:
    return path(name).read_text(encoding="utf-8")
