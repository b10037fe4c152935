"""Random well-typed terms (open or closed) over the bundled add/map signature."""

import random

from cbvtc.data import load
from cbvtc.stypes import Arrow, Base
from cbvtc.terms import App, Lam, Sym, Var, apply

NAT, LIST = Base("nat"), Base("list")
NAT2 = Arrow(NAT, NAT)
NAMES = ("x", "y", "z")


def numeral(n):
    t = Sym("0")
    for _ in range(n):
        t = App(Sym("s"), t)
    return t


def nat_list(items):
    t = Sym("nil")
    for n in reversed(items):
        t = apply(Sym("cons"), numeral(n), t)
    return t


def random_term(rng: random.Random, ty, depth=3, scope=(), free=()):
    """A term of type ``ty``; variables come from ``scope`` (bound) and ``free``."""
    usable = [v for v in (*scope, *free) if v.type == ty]
    if depth <= 0:
        if usable and rng.random() < 0.5:
            return rng.choice(usable)
        return _leaf(rng, ty)
    r = rng.random()
    if usable and r < 0.3:
        return rng.choice(usable)
    sub = depth - 1
    if ty == NAT:
        pick = rng.randrange(4)
        if pick == 0:
            return App(Sym("s"), random_term(rng, NAT, sub, scope, free))
        if pick == 1:
            return apply(Sym("add"), random_term(rng, NAT, sub, scope, free),
                         random_term(rng, NAT, sub, scope, free))
        if pick == 2:
            return App(random_term(rng, NAT2, sub, scope, free),
                       random_term(rng, NAT, sub, scope, free))
        return _leaf(rng, ty)
    if ty == LIST:
        pick = rng.randrange(3)
        if pick == 0:
            return apply(Sym("cons"), random_term(rng, NAT, sub, scope, free),
                         random_term(rng, LIST, sub, scope, free))
        if pick == 1:
            return apply(Sym("map"), random_term(rng, NAT2, sub, scope, free),
                         random_term(rng, LIST, sub, scope, free))
        return _leaf(rng, ty)
    if ty == NAT2:
        pick = rng.randrange(3)
        if pick == 0:
            v = Var(rng.choice(NAMES), NAT)
            inner = tuple(w for w in scope if w.name != v.name) + (v,)
            return Lam(v, random_term(rng, NAT, sub, inner, free))
        if pick == 1:
            return App(Sym("add"), random_term(rng, NAT, sub, scope, free))
        return Sym("s")
    raise ValueError(ty)


def _leaf(rng, ty):
    if ty == NAT:
        return numeral(rng.randrange(3))
    if ty == LIST:
        return nat_list([rng.randrange(3) for _ in range(rng.randrange(3))])
    return Sym("s")


def random_value(rng, ty):
    """A closed value of ``ty`` whose interpretation has cost number 0."""
    if ty == NAT:
        return numeral(rng.randrange(6))
    if ty == LIST:
        return nat_list([rng.randrange(4) for _ in range(rng.randrange(4))])
    choices = [Sym("s"), Lam(Var("y", NAT), numeral(rng.randrange(3))),
               Lam(Var("y", NAT), App(Sym("s"), Var("y", NAT))),
               App(Sym("add"), numeral(rng.randrange(3)))]
    return rng.choice(choices)


def random_redex(rng, depth=3):
    """``((\\x. body) value, x, body, value)`` with only ``x`` free in the body."""
    ty = rng.choice([NAT, LIST, NAT2])
    x = Var("x", ty)
    result = rng.choice([NAT, LIST])
    body = random_term(rng, result, depth, scope=(x,))
    value = random_value(rng, ty)
    return App(Lam(x, body), value), x, body, value


def systems():
    return {name: load(name) for name in ("add", "map", "addmap")}
