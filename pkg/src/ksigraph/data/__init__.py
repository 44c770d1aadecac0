"""Bundled demonstration datasets."""

from importlib import resources
from pathlib import Path


def bundled_network_path() -> Path:
    """Path to the bundled Les Miserables co-occurrence edge list."""
    with resources.as_file(resources.files(__name__) / "lesmis_edges.txt") as p:
        return Path(p)
