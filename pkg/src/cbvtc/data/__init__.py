"""Bundled example systems."""

from pathlib import Path

DATA_DIR = Path(__file__).resolve().parent
SYSTEMS = ("add", "map", "addmap")


def path(name: str) -> Path:
    return DATA_DIR / name


def read(name: str) -> str:
    return path(name).read_text(encoding="utf-8")


def load(system: str):
    """``(trs, interpretation)`` for one of :data:`SYSTEMS`."""
    from ..parser import parse_interpretation, parse_trs

    trs = parse_trs(read(f"{system}.trs"))
    return trs, parse_interpretation(read(f"{system}.csint"), trs)
