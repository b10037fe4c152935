"""Weakly monotonic expressions and their values.

The grammar has naturals, variables, ``+``, ``*``, ``max``, the unit ``u``,
tuples, 1-based projections, abstraction and application.  There is nothing
that decreases, so every closed expression denotes a weakly monotonic value.

Values are plain Python data: ``int`` for naturals, :data:`U` for unit,
``tuple`` for products and :class:`Closure` for functions.  A
:class:`Residual` is a natural that is only known symbolically; residuals let
closures be read back into expressions (``\\y. 7 + y``) for display.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Mapping, Tuple, Union

from ..errors import ShapeError, UnboundVariable
from .shapes import NAT, UNIT_S, FunS, NatS, ProdS, Shape, UnitS, is_cs_pair


@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class Ref:
    name: str


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Max:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class UnitLit:
    pass


@dataclass(frozen=True)
class Tup:
    items: Tuple["Expr", ...]


@dataclass(frozen=True)
class Proj:
    expr: "Expr"
    index: int  # 1-based


@dataclass(frozen=True)
class Fn:
    param: str
    body: "Expr"
    # binder ranges over cost-size pairs; only affects math-style printing
    cs: bool = field(default=False, compare=False)


@dataclass(frozen=True)
class Call:
    fun: "Expr"
    arg: "Expr"


Expr = Union[Const, Ref, Add, Mul, Max, UnitLit, Tup, Proj, Fn, Call]


def free_refs(e) -> frozenset:
    if isinstance(e, Ref):
        return frozenset([e.name])
    if isinstance(e, (Const, UnitLit)):
        return frozenset()
    if isinstance(e, (Add, Mul, Max, Call)):
        a, b = (e.left, e.right) if not isinstance(e, Call) else (e.fun, e.arg)
        return free_refs(a) | free_refs(b)
    if isinstance(e, Tup):
        return frozenset().union(*map(free_refs, e.items))
    if isinstance(e, Proj):
        return free_refs(e.expr)
    return free_refs(e.body) - {e.param}


def expr_alpha_key(e, bound=()):
    if isinstance(e, Ref):
        for i, b in enumerate(reversed(bound)):
            if b == e.name:
                return ("b", i)
        return ("r", e.name)
    if isinstance(e, Const):
        return ("c", e.value)
    if isinstance(e, UnitLit):
        return ("u",)
    if isinstance(e, (Add, Mul, Max)):
        return (type(e).__name__, expr_alpha_key(e.left, bound), expr_alpha_key(e.right, bound))
    if isinstance(e, Call):
        return ("@", expr_alpha_key(e.fun, bound), expr_alpha_key(e.arg, bound))
    if isinstance(e, Tup):
        return ("t",) + tuple(expr_alpha_key(i, bound) for i in e.items)
    if isinstance(e, Proj):
        return ("p", e.index, expr_alpha_key(e.expr, bound))
    return ("\\", expr_alpha_key(e.body, bound + (e.param,)))


def expr_alpha_eq(a, b) -> bool:
    return expr_alpha_key(a) == expr_alpha_key(b)


# ---------------------------------------------------------------------------
# shape checking

def check_shape(e, expected: Shape, env: Mapping[str, Shape]):
    """Raise :class:`ShapeError` unless ``e`` has shape ``expected`` under ``env``."""
    if isinstance(e, Fn):
        if not isinstance(expected, FunS):
            raise ShapeError(f"abstraction where a value of shape {expected} is expected")
        check_shape(e.body, expected.cod, {**env, e.param: expected.dom})
        return
    if isinstance(e, Tup) and isinstance(expected, ProdS):
        if len(e.items) != len(expected.items):
            raise ShapeError(
                f"tuple of {len(e.items)} components where {expected} is expected")
        for item, shape in zip(e.items, expected.items):
            check_shape(item, shape, env)
        return
    got = infer_shape(e, env)
    if got != expected:
        raise ShapeError(f"expression has shape {got}, expected {expected}")


def infer_shape(e, env: Mapping[str, Shape]) -> Shape:
    if isinstance(e, Const):
        if e.value < 0:
            raise ShapeError("negative constant")
        return NAT
    if isinstance(e, UnitLit):
        return UNIT_S
    if isinstance(e, Ref):
        if e.name not in env:
            raise UnboundVariable(f"unbound variable {e.name}")
        return env[e.name]
    if isinstance(e, (Add, Mul, Max)):
        check_shape(e.left, NAT, env)
        check_shape(e.right, NAT, env)
        return NAT
    if isinstance(e, Tup):
        return ProdS(tuple(infer_shape(i, env) for i in e.items))
    if isinstance(e, Proj):
        s = infer_shape(e.expr, env)
        if not isinstance(s, ProdS):
            raise ShapeError(f"projection .{e.index} from a value of shape {s}")
        if not 1 <= e.index <= len(s.items):
            raise ShapeError(f"projection .{e.index} out of range for shape {s}")
        return s.items[e.index - 1]
    if isinstance(e, Call):
        s = infer_shape(e.fun, env)
        if not isinstance(s, FunS):
            raise ShapeError(f"application of a value of shape {s}")
        check_shape(e.arg, s.dom, env)
        return s.cod
    raise ShapeError("cannot infer the shape of an abstraction in this position")


# ---------------------------------------------------------------------------
# values

class _Unit:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "u"

    def __reduce__(self):
        return (_Unit, ())


U = _Unit()


@dataclass(frozen=True)
class Residual:
    """A natural number known only as an expression over readback variables."""

    expr: Expr


class Closure:
    """A semantic function.  ``hint`` names the parameter when read back."""

    hint = "x"

    def __call__(self, arg):
        raise NotImplementedError


class ExprClosure(Closure):
    def __init__(self, fn: Fn, env):
        self.fn = fn
        self.env = env
        self.hint = fn.param

    def __call__(self, arg):
        return eval_expr(self.fn.body, {**self.env, self.fn.param: arg})

    def __repr__(self):
        return f"<closure \\{self.fn.param}>"


class PyClosure(Closure):
    def __init__(self, fn: Callable, hint="x", label=None):
        self.fn = fn
        self.hint = hint
        self.label = label

    def __call__(self, arg):
        return self.fn(arg)

    def __repr__(self):
        return f"<{self.label or 'closure'}>"


class NeutralClosure(Closure):
    """An unknown function of known shape; applying it builds a residual call."""

    def __init__(self, expr, shape: FunS):
        self.expr = expr
        self.shape = shape

    def __call__(self, arg):
        used = free_refs(self.expr)
        return reflect(Call(self.expr, readback(arg, self.shape.dom, used)), self.shape.cod)


def _as_expr(v):
    return Const(v) if isinstance(v, int) else v.expr


def _flatten(e, cls):
    if isinstance(e, cls):
        return _flatten(e.left, cls) + _flatten(e.right, cls)
    return [e]


def _rebuild(parts, cls):
    out = parts[0]
    for p in parts[1:]:
        out = cls(out, p)
    return out


def nat_add(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return a + b
    parts = _flatten(_as_expr(a), Add) + _flatten(_as_expr(b), Add)
    const = sum(p.value for p in parts if isinstance(p, Const))
    out, placed = [], False
    for p in parts:
        if isinstance(p, Const):
            if not placed and const:
                out.append(Const(const))
            placed = True
        else:
            out.append(p)
    return Residual(_rebuild(out, Add)) if out else 0


def nat_mul(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return a * b
    if a == 0 or b == 0:
        return 0
    if a == 1:
        return b
    if b == 1:
        return a
    return Residual(Mul(_as_expr(a), _as_expr(b)))


def nat_max(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return max(a, b)
    if a == 0:
        return b
    if b == 0 or a == b:
        return a
    return Residual(Max(_as_expr(a), _as_expr(b)))


def _nat(v, what):
    if isinstance(v, (int, Residual)) and not isinstance(v, bool):
        return v
    raise ShapeError(f"{what} expects naturals, got {v!r}")


def eval_expr(e, env: Mapping[str, object]):
    """Evaluate ``e`` under ``env`` (call-by-value, always terminates)."""
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Ref):
        try:
            return env[e.name]
        except KeyError:
            raise UnboundVariable(f"unbound variable {e.name}") from None
    if isinstance(e, Add):
        return nat_add(_nat(eval_expr(e.left, env), "+"), _nat(eval_expr(e.right, env), "+"))
    if isinstance(e, Mul):
        return nat_mul(_nat(eval_expr(e.left, env), "*"), _nat(eval_expr(e.right, env), "*"))
    if isinstance(e, Max):
        return nat_max(_nat(eval_expr(e.left, env), "max"), _nat(eval_expr(e.right, env), "max"))
    if isinstance(e, UnitLit):
        return U
    if isinstance(e, Tup):
        return tuple(eval_expr(i, env) for i in e.items)
    if isinstance(e, Proj):
        v = eval_expr(e.expr, env)
        if not isinstance(v, tuple) or not 1 <= e.index <= len(v):
            raise ShapeError(f"projection .{e.index} from {v!r}")
        return v[e.index - 1]
    if isinstance(e, Fn):
        return ExprClosure(e, env)
    f = eval_expr(e.fun, env)
    if not isinstance(f, Closure):
        raise ShapeError(f"application of non-function {f!r}")
    return f(eval_expr(e.arg, env))


# ---------------------------------------------------------------------------
# readback

def _fresh(hint, used):
    name = hint if hint not in used and hint not in ("u", "max") else None
    if name is None:
        for i in itertools.count(1):
            if f"{hint}{i}" not in used:
                name = f"{hint}{i}"
                break
    return name


def reflect(expr, shape: Shape):
    """Turn an expression into a value of ``shape`` (eta-expanded)."""
    if isinstance(shape, NatS):
        return expr.value if isinstance(expr, Const) else Residual(expr)
    if isinstance(shape, UnitS):
        return U
    if isinstance(shape, ProdS):
        return tuple(reflect(Proj(expr, i + 1), s) for i, s in enumerate(shape.items))
    return NeutralClosure(expr, shape)


def readback(v, shape: Shape, used=frozenset()):
    """Turn a value of ``shape`` back into an expression."""
    if isinstance(shape, NatS):
        if isinstance(v, Residual):
            return v.expr
        if isinstance(v, int):
            return Const(v)
    elif isinstance(shape, UnitS):
        if v is U:
            return UnitLit()
    elif isinstance(shape, ProdS):
        if isinstance(v, tuple) and len(v) == len(shape.items):
            return Tup(tuple(readback(x, s, used) for x, s in zip(v, shape.items)))
    elif isinstance(v, NeutralClosure) and v.shape == shape:
        return v.expr
    elif isinstance(v, Closure):
        name = _fresh(getattr(v, "hint", "x") or "x", used)
        body = readback(v(reflect(Ref(name), shape.dom)), shape.cod, used | {name})
        return Fn(name, body, cs=is_cs_pair(shape.dom))
    raise ShapeError(f"value {v!r} does not have shape {shape}")
