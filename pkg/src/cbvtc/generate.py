"""Seeded random generation of well-typed ground terms.

At each node a head is drawn uniformly from the symbols (applied to enough
arguments to reach the wanted type) that fit the remaining size budget.
Function-typed positions may also receive an abstraction from a fixed
library: identity, constant, and compositions of a unary constructor.
"""

from __future__ import annotations

import random
from typing import Dict, List, Optional

from .stypes import Arrow, Base
from .terms import TRS, App, Lam, Sym, Var, apply, size


class TermGenerator:
    def __init__(self, trs: TRS, seed=0, lambdas=True):
        self.trs = trs
        self.sig = trs.signature
        self.rng = random.Random(seed)
        self.lambdas = lambdas
        self._min: Dict[object, Optional[int]] = {}
        self.types = self._collect_types()
        self._compute_min_sizes()

    # -- type bookkeeping ---------------------------------------------------

    def _collect_types(self):
        seen: List[object] = [Base(b) for b in self.sig.base_types]
        todo = list(self.sig.symbols.values())
        while todo:
            t = todo.pop(0)
            if t not in seen:
                seen.append(t)
            if isinstance(t, Arrow):
                todo.extend([t.dom, t.cod])
        return seen

    def _heads(self, ty):
        """``(symbol, argument types)`` pairs whose application has type ``ty``."""
        out = []
        for name, st in self.sig.symbols.items():
            args, cur = [], st
            while True:
                if cur == ty:
                    out.append((name, list(args)))
                if not isinstance(cur, Arrow):
                    break
                args.append(cur.dom)
                cur = cur.cod
        return out

    def _unary(self, ty):
        return [n for n in self.trs.constructors if self.sig.symbols[n] == Arrow(ty, ty)]

    def _compute_min_sizes(self):
        for t in self.types:
            self._min[t] = None
        changed = True
        while changed:
            changed = False
            for t in self.types:
                best = self._min[t]
                for _, args in self._heads(t):
                    mins = [self._min.get(a) for a in args]
                    if all(m is not None for m in mins):
                        cand = 1 + sum(mins)
                        if best is None or cand < best:
                            best = cand
                if self.lambdas and isinstance(t, Arrow) and (
                        t.dom == t.cod or self._nullary_constructors(t.cod)):
                    best = 2 if best is None else min(best, 2)
                if best != self._min[t]:
                    self._min[t] = best
                    changed = True

    def min_size(self, ty) -> Optional[int]:
        return self._min.get(ty)

    # -- generation -----------------------------------------------------------

    def term(self, ty, budget: int):
        """A ground term of type ``ty`` and size at most ``budget`` (or ``None``)."""
        m = self._min.get(ty)
        if m is None or m > budget:
            return None
        options = []
        for name, args in self._heads(ty):
            mins = [self._min.get(a) for a in args]
            if all(x is not None for x in mins) and 1 + sum(mins) <= budget:
                options.append(("sym", name, args, mins))
        if self.lambdas and isinstance(ty, Arrow):
            options.extend(self._lambda_options(ty, budget))
        kind, *rest = self.rng.choice(options)
        if kind == "sym":
            name, args, mins = rest
            return apply(Sym(name), *self._args(args, mins, budget - 1))
        return rest[0]()

    def _args(self, types, mins, budget):
        out = [None] * len(types)
        spare = budget - sum(mins)
        order = list(range(len(types)))
        self.rng.shuffle(order)
        for n, i in enumerate(order):
            extra = spare if n == len(order) - 1 else self.rng.randint(0, spare)
            t = self.term(types[i], mins[i] + extra)
            spare -= size(t) - mins[i]
            out[i] = t
        return out

    def _lambda_options(self, ty, budget):
        x = Var("x", ty.dom)
        opts = []
        if ty.dom == ty.cod and budget >= 2:
            opts.append(("lam", lambda: Lam(x, x)))
            unary = sorted(self._unary(ty.cod))
            if unary and budget >= 3:
                def compose():
                    k = self.rng.randint(1, max(1, min(3, budget - 2)))
                    body = x
                    for _ in range(k):
                        body = App(Sym(self.rng.choice(unary)), body)
                    return Lam(x, body)
                opts.append(("lam", compose))
        if self._nullary_constructors(ty.cod) and budget >= 2:
            opts.append(("lam", lambda: Lam(x, self._constructor_term(ty.cod, budget - 1))))
        return opts

    def _computed(self, ty):
        return any(name in self.trs.defined for name, _ in self._heads(ty))

    def _nullary_constructors(self, ty):
        return sorted(n for n, a in self._heads(ty) if not a and n in self.trs.constructors)

    def _constructor_term(self, ty, budget):
        """A small ground constructor term (used as a constant lambda body)."""
        nullary = self._nullary_constructors(ty)
        unary = sorted(self._unary(ty))
        t = Sym(self.rng.choice(nullary))
        for _ in range(self.rng.randint(0, max(0, min(3, budget - 1)))):
            if not unary:
                break
            t = App(Sym(self.rng.choice(unary)), t)
        return t

    def sample(self, max_size: int, types=None, tries=4):
        """A random ground term of one of ``types`` (default: every feasible type).

        Base types are drawn half of the time, preferring those that some
        defined symbol produces (other base types only have values).  Head
        choice alone favours tiny terms, so the largest of ``tries`` draws at
        the chosen type is kept.
        """
        pool = [t for t in (types or self.types)
                if self._min.get(t) is not None and self._min[t] <= max_size]
        if not pool:
            raise ValueError(f"no ground terms of size <= {max_size}")
        base = [t for t in pool if isinstance(t, Base)]
        base = [t for t in base if self._computed(t)] or base
        ty = self.rng.choice(base if base and self.rng.random() < 0.5 else pool)
        draws = [self.term(ty, max_size) for _ in range(tries)]
        return max(draws, key=size)


def generate_terms(trs: TRS, count: int, max_size: int, seed=0, types=None):
    gen = TermGenerator(trs, seed=seed)
    return [gen.sample(max_size, types) for _ in range(count)]
