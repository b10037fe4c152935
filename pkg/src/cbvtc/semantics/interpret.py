"""Cost-size tuples, semantic application and compositional term interpretation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Mapping, NamedTuple, Optional, Tuple

from ..errors import CbvtcError, MissingKey, MissingSymbol, ShapeError, UnboundVariable
from ..stypes import Base, Signature, SimpleType
from ..terms import App, Lam, Sym, Var
from .monoexpr import (
    U,
    Closure,
    Expr,
    PyClosure,
    Ref,
    Residual,
    Tup,
    check_shape,
    eval_expr,
    nat_add,
    readback,
    reflect,
)
from .shapes import SemType, costf_shape, size_shape, type_interpretation


class CSTuple(NamedTuple):
    """``<(number, costfn), size>``."""

    cost: tuple
    size: object

    @property
    def number(self):
        return self.cost[0]

    @property
    def costfn(self):
        return self.cost[1]

    @classmethod
    def of(cls, v):
        (n, fc), fs = v
        return cls((n, fc), fs)


def sem_apply(f: CSTuple, x: CSTuple) -> CSTuple:
    (n, fc), fs = f
    (m, xc), xs = x
    if not isinstance(fc, Closure) or not isinstance(fs, Closure):
        raise ShapeError("semantic application of a tuple that is not of arrow shape")
    res = fc((xc, xs))
    if not isinstance(res, tuple) or len(res) != 2:
        raise ShapeError(f"cost function returned {res!r}, expected a (number, function) pair")
    k, h = res
    return CSTuple((nat_add(nat_add(n, m), k), h), fs(xs))


def make_zero_cost(t: SimpleType, key: Mapping[str, int]):
    """The constant-zero cost function of shape ``CostF(t)``; ``u`` at base types."""
    if isinstance(t, Base):
        if t.name not in key:
            raise MissingKey(f"no interpretation key for base type {t.name}")
        return U
    rest = make_zero_cost(t.cod, key)
    return PyClosure(lambda _d: (0, rest), hint="x", label="zero cost")


@dataclass
class Interpretation:
    """Key plus one cost-size tuple per symbol.

    ``exprs`` keeps the defining ``(cost, size)`` expressions so the
    interpretation can be printed back.
    """

    signature: Signature
    key: Dict[str, int]
    exprs: Dict[str, Tuple[Expr, Expr]]
    symbols: Dict[str, CSTuple] = field(default_factory=dict)

    def __post_init__(self):
        for b in self.signature.base_types:
            if b not in self.key:
                raise MissingKey(f"no interpretation key for base type {b}")
            if self.key[b] < 1:
                raise MissingKey(f"interpretation key for {b} must be positive")
        for name, ty in self.signature.symbols.items():
            if name not in self.exprs:
                raise MissingSymbol(f"no interpretation for symbol {name}")
            st = type_interpretation(ty, self.key)
            cost, size = self.exprs[name]
            try:
                check_shape(Tup((cost, size)), st.shape, {})
            except CbvtcError as e:
                err = type(e)(f"interpretation of {name}: {e.message}", e.pos)
                err.symbol = name
                raise err from None
            self.symbols[name] = CSTuple.of(eval_expr(Tup((cost, size)), {}))
        extra = set(self.exprs) - set(self.signature.symbols)
        if extra:
            raise MissingSymbol(f"interpretation given for undeclared symbol {sorted(extra)[0]}")

    def semtype(self, t: SimpleType) -> SemType:
        return type_interpretation(t, self.key)

    def replace(self, name, cost=None, size=None) -> "Interpretation":
        """A copy with the cost and/or size expression of ``name`` swapped."""
        old_cost, old_size = self.exprs[name]
        exprs = dict(self.exprs)
        exprs[name] = (cost if cost is not None else old_cost,
                       size if size is not None else old_size)
        return Interpretation(self.signature, dict(self.key), exprs)


def interpret_term(t, interp: Interpretation, valuation: Optional[Mapping[Var, CSTuple]] = None):
    """Compositional interpretation of a (well-typed) term."""
    return _interpret(t, interp, dict(valuation or {}))


def _interpret(t, interp, alpha):
    if isinstance(t, Var):
        if t not in alpha:
            raise UnboundVariable(f"valuation does not cover variable {t.name}")
        return alpha[t]
    if isinstance(t, Sym):
        if t.name not in interp.symbols:
            raise MissingSymbol(f"no interpretation for symbol {t.name}")
        return interp.symbols[t.name]
    if isinstance(t, App):
        return sem_apply(_interpret(t.fun, interp, alpha), _interpret(t.arg, interp, alpha))
    return _interpret_lam(t, interp, alpha)


def _interpret_lam(t: Lam, interp, alpha):
    x, body = t.var, t.body
    zero = make_zero_cost(x.type, interp.key)

    def cost(d):
        dc, ds = d
        r = _interpret(body, interp, {**alpha, x: CSTuple((0, dc), ds)})
        return (nat_add(1, r.number), r.costfn)

    def size(ds):
        return _interpret(body, interp, {**alpha, x: CSTuple((0, zero), ds)}).size

    return CSTuple((0, PyClosure(cost, hint=x.name)), PyClosure(size, hint=x.name))


def valuation_entry(t: SimpleType, key, cost_fn=None, size=None) -> CSTuple:
    """``<(0, u), size>`` at base types, ``<(0, cost_fn), size>`` at arrow types."""
    if isinstance(t, Base):
        return CSTuple((0, U), size)
    return CSTuple((0, cost_fn), size)


def symbolic_valuation(variables, key) -> Dict[Var, CSTuple]:
    """Valuation mapping ``x`` to symbolic size ``x`` and ``F`` to ``F_c``/``F_s``."""
    alpha = {}
    for v in sorted(variables, key=lambda v: v.name):
        size = size_shape(v.type, key)
        if isinstance(v.type, Base):
            alpha[v] = CSTuple((0, U), reflect(Ref(v.name), size))
        else:
            alpha[v] = CSTuple((0, reflect(Ref(v.name + "_c"), costf_shape(v.type, key))),
                               reflect(Ref(v.name + "_s"), size))
    return alpha


def readback_cstuple(v: CSTuple, st: SemType, used=frozenset()):
    """``(cost_expr, size_expr)`` for a cost-size tuple of semantic type ``st``."""
    return readback(v.cost, st.cost, used), readback(v.size, st.size, used)


def is_concrete(v) -> bool:
    return not isinstance(v, Residual)
