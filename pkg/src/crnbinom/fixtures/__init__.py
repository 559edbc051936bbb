"""Networks from the water-gas shift and related textbook examples."""

from importlib.resources import files

from ..parser import parse_network

NAMES = ("water_gas", "four_a", "triangle")


def path(name: str):
    return files(__name__) / f"{name}.crn"


def load(name: str):
    return parse_network(path(name).read_text(encoding="utf-8"))
