"""Simple types over a set of base types, and signatures."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Tuple, Union

from .errors import DuplicateSymbol, UnknownType


@dataclass(frozen=True)
class Base:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Arrow:
    dom: "SimpleType"
    cod: "SimpleType"

    def __str__(self):
        return format_type(self)


SimpleType = Union[Base, Arrow]


def arrows(*types):
    """``arrows(a, b, c)`` is ``a -> b -> c``."""
    result = types[-1]
    for t in reversed(types[:-1]):
        result = Arrow(t, result)
    return result


def uncurry(t) -> Tuple[List[SimpleType], SimpleType]:
    """Split ``a1 -> ... -> an -> r`` (r not an arrow) into ``([a1..an], r)``."""
    args = []
    while isinstance(t, Arrow):
        args.append(t.dom)
        t = t.cod
    return args, t


def base_names(t) -> FrozenSet[str]:
    if isinstance(t, Base):
        return frozenset([t.name])
    return base_names(t.dom) | base_names(t.cod)


def format_type(t, parens=False) -> str:
    if isinstance(t, Base):
        return t.name
    s = f"{format_type(t.dom, True)} -> {format_type(t.cod)}"
    return f"({s})" if parens else s


@dataclass(frozen=True)
class Signature:
    """Base types plus a typed, ordered symbol table.

    ``symbols`` keeps declaration order, which the pretty-printer and the
    random term generator rely on for deterministic output.
    """

    base_types: Tuple[str, ...]
    symbols: Dict[str, SimpleType] = field(default_factory=dict, hash=False)

    def __post_init__(self):
        if len(set(self.base_types)) != len(self.base_types):
            raise DuplicateSymbol("duplicate base type declaration")
        for name, ty in self.symbols.items():
            self.check_type(ty)

    def check_type(self, ty):
        missing = base_names(ty) - set(self.base_types)
        if missing:
            raise UnknownType(f"undeclared base type {sorted(missing)[0]!r}")

    def type_of(self, name):
        return self.symbols[name]

    def __contains__(self, name):
        return name in self.symbols
