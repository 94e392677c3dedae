"""Bundled example networks."""

from __future__ import annotations

from importlib import resources

from .network import Network, parse_network

FIXTURES = ("circuit",)


def fixture_text(name: str = "circuit") -> str:
    if name not in FIXTURES:
        raise ValueError(f"unknown fixture {name!r}; available: {', '.join(FIXTURES)}")
    return (
        resources.files("mrex").joinpath("data", f"{name}.net").read_text("utf-8")
    )


def circuit_network() -> Network:
    """The four-gate current-path diagnostic network."""
    return parse_network(fixture_text("circuit"))
