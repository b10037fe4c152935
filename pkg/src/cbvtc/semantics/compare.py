"""Sampled component-wise comparison of semantic values.

First-order data is compared exactly.  Functions are compared pointwise on a
deterministic grid: naturals from ``GridSpec.nats`` and, for function-shaped
arguments, a small library of monotone functions.  A passing verdict only
means "holds on the samples".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

from ..errors import GridTooLarge, ShapeError
from .monoexpr import U, Closure, PyClosure, Residual
from .shapes import FunS, NatS, ProdS, Shape, UnitS

DEFAULT_NATS = (0, 1, 2, 3, 5, 8)
LIBRARY = ("zero", "id", "succ", "double")


@dataclass(frozen=True)
class GridSpec:
    nats: Tuple[int, ...] = DEFAULT_NATS
    library: Tuple[str, ...] = LIBRARY
    budget: int = 200_000

    def __post_init__(self):
        unknown = set(self.library) - set(LIBRARY)
        if unknown:
            raise ValueError(f"unknown library function {sorted(unknown)[0]!r}")
        if not self.nats or not self.library:
            raise ValueError("grid needs at least one natural and one library function")
        if any(n < 0 for n in self.nats):
            raise ValueError("grid naturals must be non-negative")

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        """Parse ``nats=0,1,2;lib=zero,id;budget=1000`` (any subset of fields)."""
        kwargs = {}
        for part in filter(None, (p.strip() for p in text.split(";"))):
            name, _, value = part.partition("=")
            name, value = name.strip(), value.strip()
            if name == "nats":
                kwargs["nats"] = tuple(int(v) for v in value.split(","))
            elif name == "lib":
                kwargs["library"] = tuple(v.strip() for v in value.split(","))
            elif name == "budget":
                kwargs["budget"] = int(value)
            else:
                raise ValueError(f"unknown grid field {name!r}")
        return cls(**kwargs)

    def __str__(self):
        return (f"nats={','.join(map(str, self.nats))};lib={','.join(self.library)};"
                f"budget={self.budget}")


# ---------------------------------------------------------------------------
# the function library

def zero_of(shape: Shape):
    return fill(shape, 0)


def fill(shape: Shape, n: int):
    """The value of ``shape`` with every natural leaf equal to ``n``."""
    if isinstance(shape, NatS):
        return n
    if isinstance(shape, UnitS):
        return U
    if isinstance(shape, ProdS):
        return tuple(fill(s, n) for s in shape.items)
    inner = fill(shape.cod, n)
    return PyClosure(lambda _a: inner, label=f"const {n}")


def magnitude(v) -> int:
    """Largest natural in the first-order part of ``v`` (functions count as 0)."""
    if isinstance(v, bool):
        raise ShapeError("booleans are not semantic values")
    if isinstance(v, int):
        return v
    if isinstance(v, tuple):
        return max((magnitude(x) for x in v), default=0)
    if isinstance(v, Residual):
        raise ShapeError("cannot sample a symbolic value")
    return 0


def _map_leaves(v, f):
    if isinstance(v, int):
        return f(v)
    if isinstance(v, tuple):
        return tuple(_map_leaves(x, f) for x in v)
    return v


_OPS = {
    "zero": lambda n: 0,
    "id": lambda n: n,
    "succ": lambda n: n + 1,
    "double": lambda n: 2 * n,
}


def library_function(name: str, shape: FunS) -> Closure:
    op = _OPS[name]
    if name == "zero":
        z = zero_of(shape.cod)
        return PyClosure(lambda _a: z, label="zero")
    if shape.dom == shape.cod:
        return PyClosure(lambda a: _map_leaves(a, op), label=name)
    return PyClosure(lambda a: fill(shape.cod, op(magnitude(a))), label=name)


# ---------------------------------------------------------------------------
# samples

def sample_count(shape: Shape, grid: GridSpec) -> int:
    if isinstance(shape, NatS):
        return len(grid.nats)
    if isinstance(shape, UnitS):
        return 1
    if isinstance(shape, ProdS):
        n = 1
        for s in shape.items:
            n *= sample_count(s, grid)
        return n
    return len(grid.library)


def samples(shape: Shape, grid: GridSpec) -> Iterator[Tuple[object, str]]:
    """Yield ``(value, description)`` pairs covering the grid for ``shape``."""
    if isinstance(shape, NatS):
        for n in grid.nats:
            yield n, str(n)
    elif isinstance(shape, UnitS):
        yield U, "u"
    elif isinstance(shape, ProdS):
        for combo in itertools.product(*(list(samples(s, grid)) for s in shape.items)):
            yield (tuple(v for v, _ in combo),
                   "(" + ", ".join(d for _, d in combo) + ")")
    else:
        for name in grid.library:
            yield library_function(name, shape), name


# ---------------------------------------------------------------------------
# comparison

@dataclass(frozen=True)
class Verdict:
    holds: bool
    # path into the value: component indices (1-based) and "@arg" steps
    witness: Optional[Tuple[str, ...]] = None
    left: object = None
    right: object = None
    samples: int = 0

    def __bool__(self):
        return self.holds

    def describe(self):
        if self.holds:
            return "holds on samples"
        where = " ".join(self.witness) if self.witness else "top"
        return f"fails at {where}: {self.left!r} vs {self.right!r}"


class _Counter:
    def __init__(self, budget):
        self.n = 0
        self.budget = budget

    def tick(self):
        self.n += 1
        if self.n > self.budget:
            raise GridTooLarge(f"comparison needs more than {self.budget} samples")


def _failures(a, b, shape, grid, path, counter, strict=False):
    if isinstance(shape, NatS):
        if not isinstance(a, int) or not isinstance(b, int):
            raise ShapeError(f"cannot compare {a!r} and {b!r} as naturals")
        counter.tick()
        if (a <= b) if strict else (a < b):
            yield path, a, b
    elif isinstance(shape, UnitS):
        if a is not U or b is not U:
            raise ShapeError(f"cannot compare {a!r} and {b!r} as unit")
    elif isinstance(shape, ProdS):
        if not (isinstance(a, tuple) and isinstance(b, tuple)
                and len(a) == len(b) == len(shape.items)):
            raise ShapeError(f"cannot compare {a!r} and {b!r} at shape {shape}")
        for i, (x, y, s) in enumerate(zip(a, b, shape.items)):
            yield from _failures(x, y, s, grid, path + (str(i + 1),), counter)
    else:
        if not isinstance(a, Closure) or not isinstance(b, Closure):
            raise ShapeError(f"cannot compare {a!r} and {b!r} as functions")
        for arg, desc in samples(shape.dom, grid):
            yield from _failures(a(arg), b(arg), shape.cod, grid, path + (f"@{desc}",), counter)


def compare(a, b, shape: Shape, mode: str = "ge", grid: GridSpec = GridSpec()) -> Verdict:
    """Check ``a >= b`` component-wise.

    ``mode="gt"`` expects cost-size tuples ``((n, fc), fs)`` and demands a
    strict decrease in the cost number ``n`` with ``>=`` everywhere else.
    """
    counter = _Counter(grid.budget)
    if mode == "ge":
        fails = _failures(a, b, shape, grid, (), counter)
    elif mode == "gt":
        if not (isinstance(shape, ProdS) and isinstance(shape.items[0], ProdS)):
            raise ShapeError("strict comparison needs cost-size tuples")
        (na, fa), sa = a
        (nb, fb), sb = b
        cost_s, size_s = shape.items
        fails = itertools.chain(
            _failures(na, nb, cost_s.items[0], grid, ("1", "1"), counter, strict=True),
            _failures(fa, fb, cost_s.items[1], grid, ("1", "2"), counter),
            _failures(sa, sb, size_s, grid, ("2",), counter),
        )
    else:
        raise ValueError(f"unknown comparison mode {mode!r}")
    for path, x, y in fails:
        return Verdict(False, path, x, y, counter.n)
    return Verdict(True, samples=counter.n)
