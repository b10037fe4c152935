"""Typed terms, substitution, alpha-equivalence, rules and values.

Terms use named variables.  A variable is identified by its name *and* its
type, so ``x:nat`` and ``x:list`` are different variables.  Alpha-equivalence
and memo keys go through :func:`canonical`, a de Bruijn rendering of the term.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple, Union

from .errors import PatternError, TypeMismatch, UnboundVariable, UnknownSymbol
from .stypes import Arrow, Signature, SimpleType, format_type


@dataclass(frozen=True)
class Var:
    name: str
    type: SimpleType

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Sym:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class App:
    fun: "Term"
    arg: "Term"


@dataclass(frozen=True)
class Lam:
    var: Var
    body: "Term"


Term = Union[Var, Sym, App, Lam]


def apply(head, *args):
    for a in args:
        head = App(head, a)
    return head


def spine(t) -> Tuple["Term", List["Term"]]:
    """``f a1 .. an`` as ``(f, [a1, .., an])``."""
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fun
    args.reverse()
    return t, args


def size(t) -> int:
    """Number of symbol, variable and binder occurrences (applications are free)."""
    if isinstance(t, App):
        return size(t.fun) + size(t.arg)
    if isinstance(t, Lam):
        return 1 + size(t.body)
    return 1


def subterms(t):
    yield t
    if isinstance(t, App):
        yield from subterms(t.fun)
        yield from subterms(t.arg)
    elif isinstance(t, Lam):
        yield from subterms(t.body)


def free_vars(t) -> FrozenSet[Var]:
    if isinstance(t, Var):
        return frozenset([t])
    if isinstance(t, Sym):
        return frozenset()
    if isinstance(t, App):
        return free_vars(t.fun) | free_vars(t.arg)
    return free_vars(t.body) - {t.var}


def symbols_of(t) -> FrozenSet[str]:
    return frozenset(s.name for s in subterms(t) if isinstance(s, Sym))


def _all_names(t):
    return {s.name for s in subterms(t) if isinstance(s, Var)} | {
        s.var.name for s in subterms(t) if isinstance(s, Lam)
    }


# ---------------------------------------------------------------------------
# typing

def typecheck(t, sig: Signature, ctx: Optional[Mapping[str, SimpleType]] = None):
    """Return the type of ``t``.

    Variables carry their own type.  When ``ctx`` is given, every free
    variable must be listed there with that same type.
    """
    return _typecheck(t, sig, ctx, frozenset())


def _typecheck(t, sig, ctx, bound):
    if isinstance(t, Var):
        sig.check_type(t.type)
        if t not in bound and ctx is not None:
            if t.name not in ctx:
                raise UnboundVariable(f"unbound variable {t.name}")
            if ctx[t.name] != t.type:
                raise TypeMismatch(
                    f"variable {t.name} has type {format_type(t.type)}, "
                    f"context says {format_type(ctx[t.name])}")
        return t.type
    if isinstance(t, Sym):
        if t.name not in sig.symbols:
            raise UnknownSymbol(f"unknown symbol {t.name}")
        return sig.symbols[t.name]
    if isinstance(t, App):
        ft = _typecheck(t.fun, sig, ctx, bound)
        at = _typecheck(t.arg, sig, ctx, bound)
        if not isinstance(ft, Arrow):
            raise TypeMismatch(f"cannot apply a term of base type {format_type(ft)}")
        if ft.dom != at:
            raise TypeMismatch(
                f"argument has type {format_type(at)}, expected {format_type(ft.dom)}")
        return ft.cod
    sig.check_type(t.var.type)
    return Arrow(t.var.type, _typecheck(t.body, sig, ctx, bound | {t.var}))


# ---------------------------------------------------------------------------
# substitution and alpha

def fresh_var(v: Var, avoid: Iterable[str]) -> Var:
    avoid = set(avoid)
    name = v.name + "'"
    while name in avoid:
        name += "'"
    return Var(name, v.type)


def substitute(t, subst: Mapping[Var, "Term"], sig: Optional[Signature] = None):
    """Capture-avoiding simultaneous substitution.

    Binders are renamed (by priming) only when they would capture a free
    variable of an inserted term.  With ``sig`` the bindings are typechecked.
    """
    if sig is not None:
        for v, s in subst.items():
            st = typecheck(s, sig)
            if st != v.type:
                raise TypeMismatch(
                    f"cannot bind {v.name}:{format_type(v.type)} to a term of type "
                    f"{format_type(st)}")
    subst = {v: s for v, s in subst.items() if s != v}
    if not subst:
        return t
    return _subst(t, subst)


def _subst(t, s):
    if isinstance(t, Var):
        return s.get(t, t)
    if isinstance(t, Sym):
        return t
    if isinstance(t, App):
        f, a = _subst(t.fun, s), _subst(t.arg, s)
        if f is t.fun and a is t.arg:
            return t
        return App(f, a)
    v = t.var
    fv_body = free_vars(t.body)
    inner = {k: r for k, r in s.items() if k != v and k in fv_body}
    if not inner:
        return t
    incoming = set()
    for r in inner.values():
        incoming |= {x.name for x in free_vars(r)}
    if v.name in incoming:
        avoid = incoming | _all_names(t.body) | {k.name for k in inner}
        nv = fresh_var(v, avoid)
        inner[v] = nv
        v = nv
    return Lam(v, _subst(t.body, inner))


def canonical(t, bound=()):
    """De Bruijn key: equal keys iff the terms are alpha-equivalent."""
    if isinstance(t, Var):
        for i, b in enumerate(reversed(bound)):
            if b == t:
                return ("b", i)
        return ("v", t.name, t.type)
    if isinstance(t, Sym):
        return ("s", t.name)
    if isinstance(t, App):
        return ("@", canonical(t.fun, bound), canonical(t.arg, bound))
    return ("\\", t.var.type, canonical(t.body, bound + (t.var,)))


def alpha_eq(a, b) -> bool:
    return canonical(a) == canonical(b)


# ---------------------------------------------------------------------------
# rules and systems

@dataclass(frozen=True)
class Rule:
    lhs: Term
    rhs: Term

    @property
    def head(self) -> str:
        h, _ = spine(self.lhs)
        return h.name

    @property
    def patterns(self):
        return spine(self.lhs)[1]

    @property
    def arity(self) -> int:
        return len(spine(self.lhs)[1])


@dataclass(frozen=True)
class TRS:
    signature: Signature
    rules: Tuple[Rule, ...] = ()

    @cached_property
    def defined(self) -> FrozenSet[str]:
        return frozenset(r.head for r in self.rules)

    @cached_property
    def constructors(self) -> FrozenSet[str]:
        return frozenset(self.signature.symbols) - self.defined

    @cached_property
    def rules_by_head(self) -> Dict[str, List[Tuple[int, Rule]]]:
        table: Dict[str, List[Tuple[int, Rule]]] = {}
        for i, r in enumerate(self.rules):
            table.setdefault(r.head, []).append((i, r))
        return table

    @cached_property
    def min_arity(self) -> Dict[str, int]:
        return {f: min(r.arity for _, r in rs) for f, rs in self.rules_by_head.items()}


def classify_symbols(trs: TRS) -> Tuple[FrozenSet[str], FrozenSet[str]]:
    """``(defined, constructors)``: heads of rules, and everything else."""
    return trs.defined, trs.constructors


def is_value(t, trs: TRS) -> bool:
    if isinstance(t, Lam):
        return True
    head, args = spine(t)
    if not isinstance(head, Sym):
        return False
    k = trs.min_arity.get(head.name)
    if k is not None and k <= len(args):
        return False
    return all(is_value(a, trs) for a in args)


def is_ground_constructor_term(t, trs: TRS) -> bool:
    head, args = spine(t)
    return (isinstance(head, Sym) and head.name in trs.constructors
            and all(is_ground_constructor_term(a, trs) for a in args))


def check_rule(rule: Rule, sig: Signature, constructors) -> SimpleType:
    """Validate one rule against the term-layer invariants; returns its type."""
    head, pats = spine(rule.lhs)
    if not isinstance(head, Sym):
        raise PatternError("left-hand side must be headed by a function symbol")
    lt = typecheck(rule.lhs, sig)
    rt = typecheck(rule.rhs, sig)
    if lt != rt:
        raise TypeMismatch(
            f"rule sides have different types: {format_type(lt)} and {format_type(rt)}")
    seen = set()
    for p in pats:
        _check_pattern(p, constructors, seen)
    extra = free_vars(rule.rhs) - free_vars(rule.lhs)
    if extra:
        names = ", ".join(sorted(v.name for v in extra))
        raise PatternError(f"variables on the right do not occur on the left: {names}")
    return lt


def _check_pattern(p, constructors, seen):
    if isinstance(p, Var):
        if p in seen:
            raise PatternError(f"variable {p.name} occurs twice in left-hand side")
        seen.add(p)
        return
    if isinstance(p, Lam):
        raise PatternError("abstractions are not allowed in patterns")
    head, args = spine(p)
    if not isinstance(head, Sym):
        raise PatternError("applied variables are not allowed in patterns")
    if head.name not in constructors:
        raise PatternError(f"defined symbol {head.name} inside a pattern")
    for a in args:
        _check_pattern(a, constructors, seen)


def make_trs(sig: Signature, rules: Iterable[Rule]) -> TRS:
    rules = tuple(rules)
    constructors = frozenset(sig.symbols) - {r.head for r in rules
                                             if isinstance(spine(r.lhs)[0], Sym)}
    for r in rules:
        check_rule(r, sig, constructors)
    return TRS(sig, rules)
