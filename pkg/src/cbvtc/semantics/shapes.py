"""Semantic shapes and the interpretation of simple types.

A type ``s`` is interpreted as ``Cost(s) x Size(s)`` with

    Cost(s)          = N x CostF(s)
    CostF(b)         = unit
    CostF(s => t)    = (CostF(s) x Size(s)) => Cost(t)
    Size(b)          = N^K(b)
    Size(s => t)     = Size(s) => Size(t)

``N^1`` is represented as a bare natural, matching the usual notation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Tuple, Union

from ..errors import MissingKey
from ..stypes import Base


@dataclass(frozen=True)
class NatS:
    def __str__(self):
        return "N"


@dataclass(frozen=True)
class UnitS:
    def __str__(self):
        return "unit"


@dataclass(frozen=True)
class ProdS:
    items: Tuple["Shape", ...]

    def __str__(self):
        if self.items and all(isinstance(i, NatS) for i in self.items):
            return f"N^{len(self.items)}"
        return "(" + " x ".join(str(i) for i in self.items) + ")"


@dataclass(frozen=True)
class FunS:
    dom: "Shape"
    cod: "Shape"

    def __str__(self):
        d = f"({self.dom})" if isinstance(self.dom, FunS) else str(self.dom)
        return f"{d} => {self.cod}"


Shape = Union[NatS, UnitS, ProdS, FunS]
NAT = NatS()
UNIT_S = UnitS()


def size_shape(t, key: Mapping[str, int]) -> Shape:
    if isinstance(t, Base):
        if t.name not in key:
            raise MissingKey(f"no interpretation key for base type {t.name}")
        k = key[t.name]
        return NAT if k == 1 else ProdS((NAT,) * k)
    return FunS(size_shape(t.dom, key), size_shape(t.cod, key))


def costf_shape(t, key) -> Shape:
    if isinstance(t, Base):
        if t.name not in key:
            raise MissingKey(f"no interpretation key for base type {t.name}")
        return UNIT_S
    return FunS(ProdS((costf_shape(t.dom, key), size_shape(t.dom, key))), cost_shape(t.cod, key))


def cost_shape(t, key) -> Shape:
    return ProdS((NAT, costf_shape(t, key)))


@dataclass(frozen=True)
class SemType:
    cost: Shape
    size: Shape

    @property
    def costf(self) -> Shape:
        return self.cost.items[1]

    @property
    def shape(self) -> Shape:
        return ProdS((self.cost, self.size))

    def __str__(self):
        return f"{self.cost} x {self.size}"


def type_interpretation(t, key: Mapping[str, int]) -> SemType:
    return SemType(cost_shape(t, key), size_shape(t, key))


def is_cs_pair(shape) -> bool:
    """True for ``CostF(s) x Size(s)``, the argument shape of cost functions."""
    return (isinstance(shape, ProdS) and len(shape.items) == 2
            and isinstance(shape.items[0], (UnitS, FunS)))
