"""Readers for ``.trs`` files, ``.csint`` interpretation files and query terms.

Both file formats are line oriented: a statement starts in column 0 and may
continue on following lines that are indented.  ``#`` starts a comment.

TRS files::

    type nat
    cons 0 : nat
    cons s : nat -> nat
    fun add : nat -> nat -> nat
    rule add x 0 => 0
    rule add x (s y) => s (add x y)

Interpretation files::

    key nat = 1
    int 0 = < (0, u), 1 >
    int s = < (0, \\x. (0, u)), \\x. x + 1 >

Terms use juxtaposition for application and ``\\x. t`` (or ``\\x:nat. t``)
for abstraction.  ``3`` abbreviates ``s (s (s 0))`` and ``[1; 7]`` abbreviates
``cons 1 (cons 7 nil)``.  Every error carries a line and column.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Tuple

from .errors import (
    CbvtcError,
    DuplicateSymbol,
    MissingKey,
    ParseError,
    PatternError,
    TypeMismatch,
    UnboundVariable,
    UnknownSymbol,
    UnknownType,
)
from .semantics.interpret import Interpretation
from .semantics.monoexpr import Add, Call, Const, Fn, Max, Mul, Proj, Ref, Tup, UnitLit
from .stypes import Arrow, Base, Signature
from .terms import TRS, App, Lam, Rule, Sym, Var, check_rule, spine

_PUNCT = ["->", "=>", "(", ")", "[", "]", ";", ",", ".", "\\", "λ", ":", "=", "<", ">",
          "⟨", "⟩", "+", "*", "^"]
_IDENT_CHARS = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_'")


@dataclass(frozen=True)
class Token:
    kind: str  # "id", "num", "punct", "nl", "eof"
    text: str
    pos: Tuple[int, int]


@dataclass(frozen=True)
class SourceFile:
    path: str
    text: str
    kind: str  # "trs" | "interpretation" | "term"

    @classmethod
    def read(cls, path, kind):
        try:
            with open(path, encoding="utf-8") as fh:
                return cls(str(path), fh.read(), kind)
        except UnicodeDecodeError as e:
            raise ParseError(f"{path}: not valid UTF-8 ({e.reason})", (1, 1)) from None


def tokenize(text: str, statements=True) -> List[Token]:
    """Split ``text`` into tokens.

    With ``statements`` a ``nl`` token separates statements; indented lines
    continue the previous statement.
    """
    toks: List[Token] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        code = line.split("#", 1)[0]
        if not code.strip():
            continue
        if statements and toks and not code[0].isspace():
            toks.append(Token("nl", "", (lineno, 1)))
        i = 0
        while i < len(code):
            c = code[i]
            if c.isspace():
                i += 1
                continue
            col = i + 1
            if c in _IDENT_CHARS:
                j = i
                while j < len(code) and code[j] in _IDENT_CHARS:
                    j += 1
                word = code[i:j]
                toks.append(Token("num" if word.isdigit() else "id", word, (lineno, col)))
                i = j
                continue
            for p in _PUNCT:
                if code.startswith(p, i):
                    toks.append(Token("punct", p, (lineno, col)))
                    i += len(p)
                    break
            else:
                raise ParseError(f"unexpected character {c!r}", (lineno, col))
    tail = text.rsplit("\n", 1)[-1]
    toks.append(Token("eof", "", (text.count("\n") + 1, len(tail) + 1)))
    return toks


class _Stream:
    def __init__(self, toks):
        self.toks = toks
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k=1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self) -> Token:
        t = self.toks[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def at(self, *texts) -> bool:
        t = self.tok
        return t.kind == "punct" and t.text in texts

    def expect(self, text) -> Token:
        if not self.at(text):
            raise ParseError(f"expected {text!r}, found {describe(self.tok)}", self.tok.pos)
        return self.next()

    def name(self, what="a name") -> Token:
        if self.tok.kind not in ("id", "num"):
            raise ParseError(f"expected {what}, found {describe(self.tok)}", self.tok.pos)
        return self.next()

    def end_statement(self):
        if self.tok.kind not in ("nl", "eof"):
            raise ParseError(f"unexpected {describe(self.tok)}", self.tok.pos)
        self.next()


def describe(tok: Token) -> str:
    if tok.kind == "eof":
        return "end of input"
    if tok.kind == "nl":
        return "end of statement"
    return repr(tok.text)


def _statements(toks):
    """Group tokens by statement, each group ending in ``nl``/``eof``."""
    groups, cur = [], []
    for t in toks:
        cur.append(t)
        if t.kind in ("nl", "eof"):
            if len(cur) > 1:
                groups.append(cur[:-1] + [Token("eof", "", t.pos)])
            cur = []
    return groups


# ---------------------------------------------------------------------------
# types

def _parse_type(s: _Stream, base_types):
    t = _parse_type_atom(s, base_types)
    if s.at("->"):
        s.next()
        return Arrow(t, _parse_type(s, base_types))
    return t


def _parse_type_atom(s, base_types):
    if s.at("("):
        s.next()
        t = _parse_type(s, base_types)
        s.expect(")")
        return t
    tok = s.name("a type")
    if base_types is not None and tok.text not in base_types:
        raise UnknownType(f"undeclared base type {tok.text!r}", tok.pos)
    return Base(tok.text)


# ---------------------------------------------------------------------------
# raw terms

@dataclass(frozen=True)
class _RName:
    name: str
    pos: tuple


@dataclass(frozen=True)
class _RNum:
    value: int
    pos: tuple


@dataclass(frozen=True)
class _RList:
    items: tuple
    pos: tuple


@dataclass(frozen=True)
class _RApp:
    fun: object
    arg: object
    pos: tuple


@dataclass(frozen=True)
class _RLam:
    name: str
    annot: object
    body: object
    pos: tuple


def _parse_raw_term(s: _Stream, base_types):
    if s.at("\\", "λ"):
        pos = s.next().pos
        while s.at("λ"):
            s.next()
        binders = []
        while not s.at("."):
            if s.at("("):
                s.next()
                tok = s.name("a variable")
                s.expect(":")
                binders.append((tok, _parse_type(s, base_types)))
                s.expect(")")
            else:
                tok = s.name("a variable")
                annot = None
                if s.at(":"):
                    s.next()
                    annot = _parse_type(s, base_types)
                binders.append((tok, annot))
                if annot is not None and not s.at("."):
                    raise ParseError("expected '.' after annotated binder", s.tok.pos)
        if not binders:
            raise ParseError("abstraction without a bound variable", pos)
        s.expect(".")
        body = _parse_raw_term(s, base_types)
        for tok, annot in reversed(binders):
            body = _RLam(tok.text, annot, body, tok.pos)
        return body
    head = _parse_raw_atom(s, base_types)
    while _starts_atom(s):
        arg = _parse_raw_atom(s, base_types)
        head = _RApp(head, arg, arg.pos)
    return head


def _starts_atom(s):
    return s.tok.kind in ("id", "num") or s.at("(", "[")


def _parse_raw_atom(s, base_types):
    tok = s.tok
    if tok.kind == "num":
        s.next()
        return _RNum(int(tok.text), tok.pos)
    if tok.kind == "id":
        s.next()
        return _RName(tok.text, tok.pos)
    if s.at("("):
        s.next()
        t = _parse_raw_term(s, base_types)
        s.expect(")")
        return t
    if s.at("["):
        s.next()
        items = []
        if not s.at("]"):
            items.append(_parse_raw_term(s, base_types))
            while s.at(";"):
                s.next()
                items.append(_parse_raw_term(s, base_types))
        s.expect("]")
        return _RList(tuple(items), tok.pos)
    raise ParseError(f"expected a term, found {describe(tok)}", tok.pos)


# ---------------------------------------------------------------------------
# type inference for raw terms

@dataclass(frozen=True)
class _Meta:
    id: int


class _Infer:
    def __init__(self, sig: Signature, allow_free: bool):
        self.sig = sig
        self.allow_free = allow_free
        self.sol: Dict[int, object] = {}
        self.free: Dict[str, _Meta] = {}
        self.free_pos: Dict[str, tuple] = {}
        self.binder_pos: List[Tuple[str, object, tuple]] = []
        self._ids = itertools.count()

    def meta(self):
        return _Meta(next(self._ids))

    def resolve(self, t):
        while isinstance(t, _Meta) and t.id in self.sol:
            t = self.sol[t.id]
        return t

    def zonk(self, t):
        t = self.resolve(t)
        if isinstance(t, Arrow):
            return Arrow(self.zonk(t.dom), self.zonk(t.cod))
        return t

    def occurs(self, m, t):
        t = self.resolve(t)
        if t == m:
            return True
        return isinstance(t, Arrow) and (self.occurs(m, t.dom) or self.occurs(m, t.cod))

    def unify(self, a, b, pos):
        a, b = self.resolve(a), self.resolve(b)
        if a == b:
            return
        if isinstance(a, _Meta) or isinstance(b, _Meta):
            m, t = (a, b) if isinstance(a, _Meta) else (b, a)
            if self.occurs(m, t):
                raise TypeMismatch("infinite type", pos)
            self.sol[m.id] = t
            return
        if isinstance(a, Arrow) and isinstance(b, Arrow):
            self.unify(a.dom, b.dom, pos)
            self.unify(a.cod, b.cod, pos)
            return
        raise TypeMismatch(
            f"type mismatch: {_show(self.zonk(a))} versus {_show(self.zonk(b))}", pos)

    def symbol(self, name, pos):
        if name not in self.sig.symbols:
            raise UnknownSymbol(f"sugar needs the symbol {name!r}", pos)
        return Sym(name), self.sig.symbols[name]

    def infer(self, r, env):
        if isinstance(r, _RName):
            if r.name in env:
                ty = env[r.name]
                return ("var", r.name, ty), ty
            if r.name in self.sig.symbols:
                return Sym(r.name), self.sig.symbols[r.name]
            if not self.allow_free:
                raise UnboundVariable(f"unknown symbol or variable {r.name!r}", r.pos)
            if r.name not in self.free:
                self.free[r.name] = self.meta()
                self.free_pos[r.name] = r.pos
            ty = self.free[r.name]
            return ("var", r.name, ty), ty
        if isinstance(r, _RNum):
            if str(r.value) in self.sig.symbols:
                name = str(r.value)
                return Sym(name), self.sig.symbols[name]
            zero, zt = self.symbol("0", r.pos)
            succ, st = self.symbol("s", r.pos)
            self.unify(st, Arrow(zt, zt), r.pos)
            t = zero
            for _ in range(r.value):
                t = App(succ, t)
            return t, zt
        if isinstance(r, _RList):
            nil, nt = self.symbol("nil", r.pos)
            cons, ct = self.symbol("cons", r.pos)
            t, ty = nil, nt
            for item in reversed(r.items):
                it, ity = self.infer(item, env)
                self.unify(ct, Arrow(ity, Arrow(ty, ty)), item.pos)
                t = App(App(cons, it), t)
            return t, ty
        if isinstance(r, _RApp):
            f, ft = self.infer(r.fun, env)
            a, at = self.infer(r.arg, env)
            res = self.meta()
            self.unify(ft, Arrow(at, res), r.pos)
            return App(f, a), res
        if r.name in self.sig.symbols:
            raise ParseError(f"bound variable {r.name!r} clashes with a symbol", r.pos)
        ty = r.annot if r.annot is not None else self.meta()
        self.binder_pos.append((r.name, ty, r.pos))
        body, bt = self.infer(r.body, {**env, r.name: ty})
        return ("lam", r.name, ty, body), Arrow(ty, bt)

    def build(self, pre):
        if isinstance(pre, tuple) and pre[0] == "var":
            return Var(pre[1], self._ground(pre[2], pre[1]))
        if isinstance(pre, tuple) and pre[0] == "lam":
            return Lam(Var(pre[1], self._ground(pre[2], pre[1])), self.build(pre[3]))
        if isinstance(pre, App):
            return App(self.build(pre.fun), self.build(pre.arg))
        return pre

    def _ground(self, ty, name):
        t = self.zonk(ty)
        if _has_meta(t):
            pos = self.free_pos.get(name)
            if pos is None:
                pos = next((p for n, _, p in self.binder_pos if n == name), None)
            raise TypeMismatch(f"cannot determine the type of {name!r}", pos)
        return t


def _has_meta(t):
    if isinstance(t, _Meta):
        return True
    return isinstance(t, Arrow) and (_has_meta(t.dom) or _has_meta(t.cod))


def _show(t):
    if isinstance(t, _Meta):
        return "?"
    if isinstance(t, Arrow):
        d = _show(t.dom)
        return f"({d}) -> {_show(t.cod)}" if isinstance(t.dom, Arrow) else f"{d} -> {_show(t.cod)}"
    return t.name


# ---------------------------------------------------------------------------
# public readers

def parse_type(text: str, base_types=None):
    s = _Stream(tokenize(text, statements=False))
    t = _parse_type(s, base_types)
    if s.tok.kind != "eof":
        raise ParseError(f"unexpected {describe(s.tok)}", s.tok.pos)
    return t


def parse_term(text: str, trs_or_sig, allow_free=True, expected=None, ctx=None):
    """Parse and typecheck a query term.

    ``ctx`` maps free variable names to types; other free variables get
    their types by inference.
    """
    sig = trs_or_sig.signature if isinstance(trs_or_sig, TRS) else trs_or_sig
    s = _Stream(tokenize(text, statements=False))
    raw = _parse_raw_term(s, sig.base_types)
    if s.tok.kind != "eof":
        raise ParseError(f"unexpected {describe(s.tok)}", s.tok.pos)
    inf = _Infer(sig, allow_free)
    for name, t in (ctx or {}).items():
        inf.free[name] = t
        inf.free_pos[name] = raw.pos
    pre, ty = inf.infer(raw, {})
    if expected is not None:
        inf.unify(ty, expected, raw.pos)
    return inf.build(pre)


def parse_trs(text: str) -> TRS:
    base: List[str] = []
    symbols: Dict[str, object] = {}
    kinds: Dict[str, str] = {}
    raw_rules = []
    for group in _statements(tokenize(text)):
        s = _Stream(group)
        kw = s.tok
        if kw.kind != "id" or kw.text not in ("type", "cons", "fun", "rule"):
            raise ParseError(f"expected 'type', 'cons', 'fun' or 'rule', found {describe(kw)}",
                             kw.pos)
        s.next()
        if kw.text == "type":
            while s.tok.kind != "eof":
                tok = s.name("a base type name")
                if tok.text in base:
                    raise DuplicateSymbol(f"base type {tok.text!r} declared twice", tok.pos)
                base.append(tok.text)
        elif kw.text in ("cons", "fun"):
            tok = s.name("a symbol name")
            if tok.text in symbols:
                raise DuplicateSymbol(f"symbol {tok.text!r} declared twice", tok.pos)
            s.expect(":")
            symbols[tok.text] = (_parse_type(s, None), tok.pos)
            kinds[tok.text] = kw.text
        else:
            lhs = _parse_raw_term(s, None)
            s.expect("=>")
            rhs = _parse_raw_term(s, None)
            raw_rules.append((lhs, rhs, kw.pos))
        s.end_statement()
    for name, (ty, pos) in symbols.items():
        try:
            Signature(tuple(base), {}).check_type(ty)
        except CbvtcError as e:
            raise e.at(pos)
    sig = Signature(tuple(base), {n: ty for n, (ty, _) in symbols.items()})
    rules = []
    for lhs, rhs, pos in raw_rules:
        inf = _Infer(sig, allow_free=True)
        pl, lt = inf.infer(lhs, {})
        pr, rt = inf.infer(rhs, {})
        inf.unify(lt, rt, pos)
        try:
            rules.append(Rule(inf.build(pl), inf.build(pr)))
        except CbvtcError as e:
            raise e.at(pos)
    defined = {r.head for r in rules if isinstance(spine(r.lhs)[0], Sym)}
    constructors = frozenset(sig.symbols) - defined
    for (lhs, rhs, pos), rule in zip(raw_rules, rules):
        try:
            check_rule(rule, sig, constructors)
        except CbvtcError as e:
            raise e.at(pos)
        if kinds.get(rule.head) == "cons":
            raise PatternError(f"symbol {rule.head!r} is declared 'cons' but heads a rule", pos)
    return TRS(sig, tuple(rules))


# ---------------------------------------------------------------------------
# cost-size expressions

def _parse_expr(s: _Stream):
    if s.at("\\", "λ"):
        s.next()
        while s.at("λ"):
            s.next()
        params = []
        while not s.at("."):
            tok = s.name("a parameter")
            if tok.text in ("u", "max") or tok.kind == "num":
                raise ParseError(f"{tok.text!r} cannot be a parameter", tok.pos)
            params.append(tok.text)
        if not params:
            raise ParseError("abstraction without parameters", s.tok.pos)
        s.expect(".")
        body = _parse_expr(s)
        for p in reversed(params):
            body = Fn(p, body)
        return body
    left = _parse_product(s)
    while s.at("+"):
        s.next()
        left = Add(left, _parse_product(s))
    return left


def _parse_product(s):
    left = _parse_call(s)
    while s.at("*"):
        s.next()
        left = Mul(left, _parse_call(s))
    return left


def _parse_call(s):
    f = _parse_postfix(s)
    while s.tok.kind in ("id", "num") or s.at("("):
        f = Call(f, _parse_postfix(s))
    return f


def _parse_postfix(s):
    e = _parse_expr_atom(s)
    while True:
        if s.at(".") and s.peek().kind == "num":
            s.next()
            idx = int(s.next().text)
            if idx < 1:
                raise ParseError("components are numbered from 1", s.toks[s.i - 1].pos)
            e = Proj(e, idx)
        elif s.at("^") and s.peek().kind == "id" and s.peek().text in ("c", "s"):
            s.next()
            e = Proj(e, 1 if s.next().text == "c" else 2)
        else:
            return e


def _parse_expr_atom(s):
    tok = s.tok
    if tok.kind == "num":
        s.next()
        return Const(int(tok.text))
    if tok.kind == "id":
        s.next()
        if tok.text == "u":
            return UnitLit()
        if tok.text == "max":
            s.expect("(")
            a = _parse_expr(s)
            s.expect(",")
            b = _parse_expr(s)
            s.expect(")")
            return Max(a, b)
        return Ref(tok.text)
    if s.at("("):
        s.next()
        items = [_parse_expr(s)]
        while s.at(","):
            s.next()
            items.append(_parse_expr(s))
        s.expect(")")
        return items[0] if len(items) == 1 else Tup(tuple(items))
    raise ParseError(f"expected an expression, found {describe(tok)}", tok.pos)


def parse_expr(text: str):
    s = _Stream(tokenize(text, statements=False))
    e = _parse_expr(s)
    if s.tok.kind != "eof":
        raise ParseError(f"unexpected {describe(s.tok)}", s.tok.pos)
    return e


def parse_interpretation(text: str, trs_or_sig) -> Interpretation:
    sig = trs_or_sig.signature if isinstance(trs_or_sig, TRS) else trs_or_sig
    key: Dict[str, int] = {}
    exprs: Dict[str, tuple] = {}
    where: Dict[str, tuple] = {}
    toks = tokenize(text)
    for group in _statements(toks):
        s = _Stream(group)
        kw = s.tok
        if kw.kind != "id" or kw.text not in ("key", "int"):
            raise ParseError(f"expected 'key' or 'int', found {describe(kw)}", kw.pos)
        s.next()
        tok = s.name("a base type" if kw.text == "key" else "a symbol")
        s.expect("=")
        if kw.text == "key":
            if tok.text not in sig.base_types:
                raise UnknownType(f"undeclared base type {tok.text!r}", tok.pos)
            if tok.text in key:
                raise DuplicateSymbol(f"key for {tok.text!r} given twice", tok.pos)
            n = s.tok
            if n.kind != "num":
                raise ParseError(f"expected a dimension, found {describe(n)}", n.pos)
            s.next()
            if int(n.text) < 1:
                raise MissingKey(f"dimension of {tok.text!r} must be at least 1", n.pos)
            key[tok.text] = int(n.text)
        else:
            if tok.text not in sig.symbols:
                raise UnknownSymbol(f"unknown symbol {tok.text!r}", tok.pos)
            if tok.text in exprs:
                raise DuplicateSymbol(f"symbol {tok.text!r} interpreted twice", tok.pos)
            if not s.at("<", "⟨"):
                raise ParseError(f"expected '<', found {describe(s.tok)}", s.tok.pos)
            close = ">" if s.next().text == "<" else "⟩"
            cost = _parse_expr(s)
            s.expect(",")
            size = _parse_expr(s)
            s.expect(close)
            exprs[tok.text] = (cost, size)
            where[tok.text] = tok.pos
        s.end_statement()
    end = toks[-1].pos
    try:
        return Interpretation(sig, key, exprs)
    except CbvtcError as e:
        raise e.at(where.get(getattr(e, "symbol", None), end))
