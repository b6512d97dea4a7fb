"""The border-control running example, shipped as package data.

``airport()`` has five candidate norms with costs (0, 2, 5, 2, 2) and the
value order free_movement > safety. ``airport_extended()`` adds the two
norms already in force, n6 (no unattended luggage) and n7 (passport
control), each costing 1; n7 excludes n1. The values attached to n6 and
n7 (safety) are our own choice, not part of the original example.
"""

from importlib import resources

from .io import parse_norm_net
from .net import NormNet


def _load(name: str) -> NormNet:
    return parse_norm_net(resources.files(__package__).joinpath("data", name).read_text("utf-8"))


def airport() -> NormNet:
    return _load("airport.json")


def airport_extended() -> NormNet:
    return _load("airport_extended.json")


def data_path(name: str):
    """Filesystem path of a shipped data file (for the CLI and demos)."""
    return resources.files(__package__).joinpath("data", name)
