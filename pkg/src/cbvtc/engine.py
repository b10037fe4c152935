"""Weak call-by-value rewriting: one-step reducts, normalisation, derivation height.

Reduction never happens under a binder.  A rule ``f l1 .. lk -> r`` fires on
``f (l1 g) .. (lk g)`` only when every argument is a value, and a beta-redex
``(\\x. s) v`` only when ``v`` is a value.  Both subterms of an application may
be reduced, so the relation is nondeterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .errors import FuelExhausted, NonTerminating
from .terms import TRS, App, Lam, Rule, Sym, Var, canonical, is_value, spine, substitute

# positions are tuples over {0: function part, 1: argument part}
Position = Tuple[int, ...]

DEFAULT_MAX_STEPS = 100_000
DEFAULT_MAX_BREADTH = 10_000


@dataclass(frozen=True)
class Fuel:
    """Guards against non-termination.

    ``max_steps`` bounds the length of any single reduction sequence;
    ``max_breadth`` bounds the number of distinct (modulo alpha) terms the
    derivation-height search may visit.
    """

    max_steps: int = DEFAULT_MAX_STEPS
    max_breadth: int = DEFAULT_MAX_BREADTH

    def __post_init__(self):
        if self.max_steps < 1 or self.max_breadth < 1:
            raise ValueError("fuel limits must be positive")


@dataclass(frozen=True)
class Reduct:
    term: object
    position: Position
    kind: Tuple[str, Optional[int]]  # ("rule", index) or ("beta", None)

    @property
    def label(self):
        return "beta" if self.kind[0] == "beta" else f"rule {self.kind[1]}"


def match_rule(rule: Rule, t) -> Optional[Dict[Var, object]]:
    """Match a left-linear constructor pattern; ``None`` when it does not apply."""
    gamma: Dict[Var, object] = {}
    if _match(rule.lhs, t, gamma):
        return gamma
    return None


def _match(p, t, gamma):
    if isinstance(p, Var):
        gamma[p] = t
        return True
    if isinstance(p, Sym):
        return isinstance(t, Sym) and t.name == p.name
    if isinstance(p, App):
        return isinstance(t, App) and _match(p.fun, t.fun, gamma) and _match(p.arg, t.arg, gamma)
    return False


def _root_reducts(t, trs: TRS, pos, first_only=False) -> List[Reduct]:
    out = []
    head, args = spine(t)
    if isinstance(head, Sym):
        for idx, rule in trs.rules_by_head.get(head.name, ()):
            if rule.arity != len(args):
                continue
            gamma = match_rule(rule, t)
            if gamma is None or not all(is_value(a, trs) for a in args):
                continue
            out.append(Reduct(substitute(rule.rhs, gamma), pos, ("rule", idx)))
            if first_only:
                return out
    if isinstance(t, App) and isinstance(t.fun, Lam) and is_value(t.arg, trs):
        out.append(Reduct(substitute(t.fun.body, {t.fun.var: t.arg}), pos, ("beta", None)))
    return out


def step(t, trs: TRS) -> List[Reduct]:
    """Every one-step reduct of ``t``, innermost-leftmost positions first."""
    return _step(t, trs, ())


def _step(t, trs, pos):
    out = []
    if isinstance(t, App):
        for r in _step(t.fun, trs, pos + (0,)):
            out.append(Reduct(App(r.term, t.arg), r.position, r.kind))
        for r in _step(t.arg, trs, pos + (1,)):
            out.append(Reduct(App(t.fun, r.term), r.position, r.kind))
    if isinstance(t, (App, Sym)):
        out.extend(_root_reducts(t, trs, pos))
    return out


def step_leftmost_innermost(t, trs: TRS) -> Optional[Reduct]:
    """The reduct chosen by :func:`normalize`, or ``None`` for normal forms."""
    return _lmim(t, trs, ())


def _lmim(t, trs, pos):
    if isinstance(t, App):
        r = _lmim(t.fun, trs, pos + (0,))
        if r is not None:
            return Reduct(App(r.term, t.arg), r.position, r.kind)
        r = _lmim(t.arg, trs, pos + (1,))
        if r is not None:
            return Reduct(App(t.fun, r.term), r.position, r.kind)
    if isinstance(t, (App, Sym)):
        rs = _root_reducts(t, trs, pos, first_only=True)
        if rs:
            return rs[0]
    return None


def reduction_sequence(t, trs: TRS, fuel: Fuel = Fuel()):
    """Yield the reducts visited by the leftmost-innermost strategy."""
    steps = 0
    while True:
        r = _lmim(t, trs, ())
        if r is None:
            return
        if steps >= fuel.max_steps:
            raise FuelExhausted(f"no normal form within {fuel.max_steps} steps", t, steps)
        steps += 1
        t = r.term
        yield r


def normalize(t, trs: TRS, fuel: Fuel = Fuel()):
    """Return ``(normal_form, steps)`` under leftmost-innermost reduction."""
    steps = 0
    for r in reduction_sequence(t, trs, fuel):
        t = r.term
        steps += 1
    return t, steps


def derivation_height(t, trs: TRS, fuel: Fuel = Fuel()) -> int:
    """Length of the longest reduction sequence starting at ``t``.

    Depth-first over all reducts, memoised on alpha-equivalence classes.  An
    explicit stack keeps deep derivations clear of the recursion limit.
    """
    memo: Dict[object, int] = {}
    on_path = set()
    root = canonical(t)
    # frame: [key, term, pending reducts, best so far]
    stack = [[root, t, None, 0]]
    on_path.add(root)
    while stack:
        frame = stack[-1]
        key, term, pending, best = frame
        if pending is None:
            pending = frame[2] = [r.term for r in step(term, trs)]
        if pending:
            nxt = pending.pop()
            nkey = canonical(nxt)
            if nkey in memo:
                frame[3] = max(best, memo[nkey] + 1)
                continue
            if nkey in on_path:
                raise NonTerminating("reduction cycle found", nxt, len(stack))
            if len(stack) > fuel.max_steps:
                raise FuelExhausted(
                    f"a reduction sequence exceeds {fuel.max_steps} steps", nxt, len(stack))
            if len(memo) + len(stack) > fuel.max_breadth:
                raise FuelExhausted(
                    f"more than {fuel.max_breadth} distinct terms reachable", nxt, len(memo))
            on_path.add(nkey)
            stack.append([nkey, nxt, None, 0])
            continue
        stack.pop()
        on_path.discard(key)
        memo[key] = best
        if stack:
            stack[-1][3] = max(stack[-1][3], best + 1)
    return memo[root]
