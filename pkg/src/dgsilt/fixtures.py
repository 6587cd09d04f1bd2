"""Canonical quiver fixtures shipped as data files."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .quiver import DgQuiver
from .quiverfile import parse

_NAMES = ("rel", "a2", "tilde_a", "b0", "b1")


def fixture_path(name: str) -> str:
    if name not in _NAMES:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(_NAMES)}")
    return str(resources.files("dgsilt").joinpath(f"data/{name}.quiver"))


@lru_cache(maxsize=None)
def load(name: str) -> DgQuiver:
    with open(fixture_path(name), "r", encoding="utf-8") as fh:
        return parse(fh.read()).to_quiver()


def q_rel() -> DgQuiver:
    """Three-vertex chain 1 -> 2 -> 3 with a degree -1 arrow killing the length-2 path."""
    return load("rel")


def q_a2() -> DgQuiver:
    """Two vertices, one degree-0 arrow."""
    return load("a2")


def q_tilde_a() -> DgQuiver:
    """Graded-polynomial-endomorphism quiver on vertices 0..3 (deg z = 2 grading)."""
    return load("tilde_a")


def q_b0() -> DgQuiver:
    """Expected arrow counts after mutating the tilde_a seed at vertex 0."""
    return load("b0")


def q_b1() -> DgQuiver:
    """Expected arrow counts after mutating the tilde_a seed at vertex 1."""
    return load("b1")
