"""Bundled example plants used by the tests, the CLI and the docs."""
from __future__ import annotations

from importlib import resources

from ..model import PlantGraph, load_graph

_FILES = {
    "T": "fixture_t.json",
    "L": "fixture_l.json",
}


def fixture_names() -> tuple[str, ...]:
    return tuple(sorted(_FILES))


def fixture_text(name: str) -> str:
    key = name.upper()
    if key not in _FILES:
        raise KeyError(f"no bundled fixture {name!r}; have {sorted(_FILES)}")
    return resources.files(__package__).joinpath(_FILES[key]).read_text("utf-8")


def load_fixture(name: str) -> PlantGraph:
    return load_graph(fixture_text(name))
