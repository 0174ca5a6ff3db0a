"""Bundled sample graph documents."""

from __future__ import annotations

from importlib.resources import files
from pathlib import Path

DATASETS = {
    "video": "video.json",
    "video-discrete": "video-discrete.json",
}


def path(name: str) -> Path:
    """Filesystem path of a bundled dataset ("video" or "video-discrete")."""
    try:
        resource = DATASETS[name]
    except KeyError:
        raise ValueError(f"unknown dataset: {name}") from None
    return Path(str(files(__package__) / resource))


def video_path() -> Path:
    return path("video")


def video_discrete_path() -> Path:
    return path("video-discrete")
