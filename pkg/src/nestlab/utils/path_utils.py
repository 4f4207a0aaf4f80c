import os
from pathlib import Path
from typing import Union


def get_project_root(marker_filename="pyproject.toml", fallback_levels=3):
    """
    Walk up the directory tree from this file to locate the project root.
    The presence of `marker_filename` (e.g., pyproject.toml or .git) is used
    to determine the root. If not found, it falls back by going up `fallback_levels`.
    """
    path = os.path.abspath(__file__)
    while True:
        parent = os.path.dirname(path)
        if os.path.isfile(os.path.join(parent, marker_filename)):
            return parent
        if parent == path:
            break
        path = parent

    path = os.path.abspath(__file__)
    for _ in range(fallback_levels):
        path = os.path.dirname(path)
    return path


def ensure_parent_exists(path: Union[str, Path], logger=None) -> Path:
    """Create the directory a report file goes into; returns the path."""
    target = Path(path)
    parent = target.parent
    if not parent.exists():
        parent.mkdir(parents=True, exist_ok=True)
        msg = f"[PathUtils] Created directory: {parent}"
        logger.info(msg) if logger else print(msg)
    return target
