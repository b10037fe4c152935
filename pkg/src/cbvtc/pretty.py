"""Printers for terms, systems, expressions and cost-size tuples.

Everything printed in ``ascii`` style reads back through :mod:`cbvtc.parser`
to an alpha-equal object.  ``math`` style uses the usual mathematical
notation (``⟨(4, λλy.(y^s, u)), λλy.7 + y⟩``) and is for display only.
"""

from __future__ import annotations

from .semantics.interpret import CSTuple, Interpretation, readback_cstuple
from .semantics.monoexpr import Add, Call, Const, Fn, Max, Mul, Proj, Ref, Tup, UnitLit
from .semantics.shapes import SemType
from .stypes import Arrow, format_type
from .terms import TRS, App, Lam, Sym, Var, spine


# ---------------------------------------------------------------------------
# terms

def _numeral(t):
    n = 0
    while isinstance(t, App) and t.fun == Sym("s"):
        n += 1
        t = t.arg
    return n if t == Sym("0") and n > 0 else None


def _list_items(t):
    items = []
    while True:
        head, args = spine(t)
        if head == Sym("nil") and not args:
            return items
        if head != Sym("cons") or len(args) != 2:
            return None
        items.append(args[0])
        t = args[1]


def format_term(t, sugar=False) -> str:
    """Print a term.  Binders always carry their type so the text re-parses exactly."""
    return _term(t, sugar, 0)


def _term(t, sugar, prec):
    # prec: 0 top, 1 function position, 2 argument position
    if sugar:
        n = _numeral(t)
        if n is not None:
            return str(n)
        items = _list_items(t)
        if items is not None and items:
            return "[" + "; ".join(_term(i, sugar, 0) for i in items) + "]"
    if isinstance(t, (Var, Sym)):
        return t.name
    if isinstance(t, Lam):
        ty = t.var.type
        ann = f"({format_type(ty)})" if isinstance(ty, Arrow) else format_type(ty)
        s = f"\\{t.var.name}:{ann}. {_term(t.body, sugar, 0)}"
        return f"({s})" if prec > 0 else s
    s = f"{_term(t.fun, sugar, 1)} {_term(t.arg, sugar, 2)}"
    return f"({s})" if prec > 1 else s


def format_rule(rule) -> str:
    return f"{format_term(rule.lhs)} => {format_term(rule.rhs)}"


def format_trs(trs: TRS) -> str:
    lines = [f"type {b}" for b in trs.signature.base_types]
    for name, ty in trs.signature.symbols.items():
        kw = "fun" if name in trs.defined else "cons"
        lines.append(f"{kw} {name} : {format_type(ty)}")
    lines.extend(f"rule {format_rule(r)}" for r in trs.rules)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# expressions

def format_expr(e, style="ascii") -> str:
    return _expr(e, style, 0, frozenset())


def _expr(e, style, prec, cs_vars):
    # prec: 0 lambda, 1 sum, 2 product, 3 application, 4 atom
    if isinstance(e, Const):
        return str(e.value)
    if isinstance(e, Ref):
        return e.name
    if isinstance(e, UnitLit):
        return "u"
    if isinstance(e, Tup):
        return "(" + ", ".join(_expr(i, style, 0, cs_vars) for i in e.items) + ")"
    if isinstance(e, Max):
        return f"max({_expr(e.left, style, 0, cs_vars)}, {_expr(e.right, style, 0, cs_vars)})"
    if isinstance(e, Proj):
        if (style == "math" and isinstance(e.expr, Ref) and e.expr.name in cs_vars
                and e.index in (1, 2)):
            return f"{e.expr.name}^{'cs'[e.index - 1]}"
        return f"{_expr(e.expr, style, 4, cs_vars)}.{e.index}"
    if isinstance(e, Fn):
        params, body = [], e
        while isinstance(body, Fn):
            params.append(body.param)
            cs_vars = (cs_vars | {body.param}) if body.cs else (cs_vars - {body.param})
            body = body.body
        if style == "math":
            s = f"λλ{' '.join(params)}.{_expr(body, style, 0, cs_vars)}"
        else:
            s = f"\\{' '.join(params)}. {_expr(body, style, 0, cs_vars)}"
        return f"({s})" if prec > 0 else s
    if isinstance(e, Add):
        s = f"{_expr(e.left, style, 1, cs_vars)} + {_expr(e.right, style, 2, cs_vars)}"
        return f"({s})" if prec > 1 else s
    if isinstance(e, Mul):
        s = f"{_expr(e.left, style, 2, cs_vars)} * {_expr(e.right, style, 3, cs_vars)}"
        return f"({s})" if prec > 2 else s
    if isinstance(e, Call):
        s = f"{_expr(e.fun, style, 3, cs_vars)} {_expr(e.arg, style, 4, cs_vars)}"
        return f"({s})" if prec > 3 else s
    raise TypeError(f"not an expression: {e!r}")


def format_cstuple_exprs(cost, size, style="math") -> str:
    if style == "math":
        return f"⟨{format_expr(cost, style)}, {format_expr(size, style)}⟩"
    return f"<{format_expr(cost, style)}, {format_expr(size, style)}>"


def format_cstuple(v: CSTuple, st: SemType, style="math", used=frozenset()) -> str:
    cost, size = readback_cstuple(v, st, used)
    return format_cstuple_exprs(cost, size, style)


def format_interpretation(interp: Interpretation) -> str:
    lines = [f"key {b} = {interp.key[b]}" for b in interp.signature.base_types]
    for name in interp.signature.symbols:
        cost, size = interp.exprs[name]
        lines.append(f"int {name} = {format_cstuple_exprs(cost, size, 'ascii')}")
    return "\n".join(lines) + "\n"
