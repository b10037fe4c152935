import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from cbvtc.errors import MissingKey, ShapeError, UnboundVariable
from cbvtc.generate import TermGenerator
from cbvtc.parser import parse_expr, parse_interpretation, parse_type
from cbvtc.pretty import format_cstuple, format_expr
from cbvtc.semantics import (
    CSTuple, GridSpec, U, compare, eval_expr, interpret_term, make_zero_cost, readback,
    samples, sem_apply, type_interpretation,
)
from cbvtc.semantics.shapes import NAT as N, UNIT_S, FunS, ProdS, costf_shape, size_shape
from cbvtc.terms import App, Lam, Var, is_ground_constructor_term, substitute, subterms, typecheck

from helpers import LIST, NAT, NAT2, nat_list, numeral, random_redex

KEY = {"nat": 1, "list": 2}
SMALL = GridSpec(nats=(0, 1, 3), library=("zero", "id", "succ", "double"))


def show(v, st):
    return format_cstuple(v, st)


# -- type interpretation -------------------------------------------------------

def test_type_interpretation_examples():
    nat = type_interpretation(NAT, KEY)
    assert (nat.cost, nat.size) == (ProdS((N, UNIT_S)), N)
    assert type_interpretation(LIST, KEY).size == ProdS((N, N))
    arrow = type_interpretation(NAT2, KEY)
    assert arrow.costf == FunS(ProdS((UNIT_S, N)), ProdS((N, UNIT_S)))
    assert arrow.size == FunS(N, N)
    assert type_interpretation(NAT2, KEY) == arrow


def test_type_interpretation_needs_a_key():
    with pytest.raises(MissingKey):
        type_interpretation(LIST, {"nat": 1})


def test_higher_order_type_shapes():
    t = parse_type("(nat -> nat) -> list -> list", ["nat", "list"])
    st = type_interpretation(t, KEY)
    assert st.size == FunS(FunS(N, N), FunS(ProdS((N, N)), ProdS((N, N))))
    assert st.costf.dom == ProdS((costf_shape(NAT2, KEY), size_shape(NAT2, KEY)))


# -- semantic application ------------------------------------------------------

def test_sem_apply_add_partial(addmap):
    _, interp = addmap
    three = CSTuple((0, U), 3)
    out = sem_apply(interp.symbols["add"], three)
    assert show(out, interp.semtype(NAT2)) == "⟨(0, λλy.(y^s, u)), λλy.3 + y⟩"


def test_sem_apply_add_full(addmap, term):
    _, interp = addmap
    two, three = interpret_term(term("2"), interp), interpret_term(term("3"), interp)
    assert sem_apply(sem_apply(interp.symbols["add"], two), three) == CSTuple((4, U), 7)


def test_sem_apply_successor(addmap):
    _, interp = addmap
    assert sem_apply(interp.symbols["s"], CSTuple((0, U), 1)) == CSTuple((0, U), 2)


def test_sem_apply_adds_all_cost_numbers(addmap):
    _, interp = addmap
    f = CSTuple((5, interp.symbols["s"].costfn), interp.symbols["s"].size)
    assert sem_apply(f, CSTuple((2, U), 1)).number == 7


def test_sem_apply_needs_a_function():
    with pytest.raises(ShapeError):
        sem_apply(CSTuple((0, U), 3), CSTuple((0, U), 3))


# -- expressions ------------------------------------------------------------------

def test_eval_examples(addmap):
    assert eval_expr(parse_expr("\\x. x + 1"), {})(3) == 4
    assert eval_expr(parse_expr("max(q.1, 2)"), {"q": (1, 7)}) == 2
    assert eval_expr(parse_expr("max(q.2, 2)"), {"q": (1, 7)}) == 7
    cons_size = interpret_term_symbol(addmap, "cons").size
    assert cons_size(1)((0, 0)) == (0 + 1, max(1, 0))


def interpret_term_symbol(system, name):
    return system[1].symbols[name]


def test_cons_size_against_direct_arithmetic(addmap):
    cons_size = interpret_term_symbol(addmap, "cons").size
    for x, ql, qm in itertools.product(range(6), range(6), range(6)):
        assert cons_size(x)((ql, qm)) == (ql + 1, max(x, qm))


def test_eval_rejects_bad_shapes():
    with pytest.raises(ShapeError):
        eval_expr(parse_expr("q.3"), {"q": (1, 2)})
    with pytest.raises(ShapeError):
        eval_expr(parse_expr("x + u"), {"x": 1})


# -- zero cost ----------------------------------------------------------------------

def test_zero_cost_examples():
    assert make_zero_cost(NAT, KEY) is U
    z = make_zero_cost(NAT2, KEY)
    assert z((U, 5)) == (0, U)
    higher = parse_type("(nat -> nat) -> nat", ["nat"])
    shape = costf_shape(higher, KEY)
    assert format_expr(readback(make_zero_cost(higher, KEY), shape), "math") == "λλx.(0, u)"
    two = parse_type("nat -> nat -> nat", ["nat"])
    inner = make_zero_cost(two, KEY)((U, 1))
    assert inner[0] == 0 and inner[1]((U, 2)) == (0, U)


# -- term interpretation -----------------------------------------------------------

def test_interpret_examples(addmap, term):
    _, interp = addmap
    assert interpret_term(term("3"), interp) == CSTuple((0, U), 4)
    assert interpret_term(term("[1;7;9]"), interp) == CSTuple((0, U), (3, 10))
    v = interpret_term(term("add (add 2 3)"), interp)
    assert show(v, interp.semtype(NAT2)) == "⟨(4, λλy.(y^s, u)), λλy.7 + y⟩"
    assert interpret_term(term("add 0 (add 0 0)"), interp) == CSTuple((3, U), 3)


def test_interpret_lambda(addmap, term):
    _, interp = addmap
    v = interpret_term(term("\\x:nat. add x 2"), interp)
    assert show(v, interp.semtype(NAT2)) == "⟨(0, λλx.(4, u)), λλx.x + 3⟩"
    applied = interpret_term(term("(\\x:nat. add x 2) 5"), interp)
    assert applied == CSTuple((4, U), 9)  # size of 5 is 6


def test_interpret_with_valuation(addmap, term):
    _, interp = addmap
    x = Var("x", NAT)
    v = interpret_term(term("add x (s 0)"), interp, {x: CSTuple((0, U), 4)})
    assert v == CSTuple((2, U), 6)
    with pytest.raises(UnboundVariable):
        interpret_term(term("add x 0"), interp)


def test_interpretation_must_be_monotone_syntax(add_system):
    with pytest.raises(Exception):
        parse_interpretation("key nat = 1\nint 0 = < (0, u), 1 - 1 >\n", add_system[0])


@pytest.mark.parametrize("n", range(51))
def test_numeral_size_law(addmap, n):
    assert interpret_term(numeral(n), addmap[1]) == CSTuple((0, U), n + 1)


def _constructor_terms(rng, count):
    out = []
    for _ in range(count):
        if rng.random() < 0.5:
            out.append(numeral(rng.randrange(12)))
        else:
            out.append(nat_list([rng.randrange(9) for _ in range(rng.randrange(6))]))
    return out


def test_constructor_cost_neutrality(addmap):
    trs, interp = addmap
    for t in _constructor_terms(random.Random(3), 300):
        assert is_ground_constructor_term(t, trs)
        v = interpret_term(t, interp)
        assert v.number == 0 and v.costfn is U


def beta_law_holds(trs, interp, redex, x, body, value):
    assert interpret_term(value, interp).number == 0
    left = interpret_term(redex, interp).number
    right = interpret_term(substitute(body, {x: value}, trs.signature), interp).number
    return left == 1 + right


def test_beta_cost_law(addmap):
    trs, interp = addmap
    rng = random.Random(17)
    for _ in range(200):
        assert beta_law_holds(trs, interp, *random_redex(rng))


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_beta_cost_law_property(addmap, seed):
    trs, interp = addmap
    assert beta_law_holds(trs, interp, *random_redex(random.Random(seed), depth=4))


def _agree(a, b, shape):
    return compare(a, b, shape, "ge", SMALL).holds and compare(b, a, shape, "ge", SMALL).holds


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_compositionality(addmap, seed):
    trs, interp = addmap
    t = TermGenerator(trs, seed=seed).sample(12)
    for u in subterms(t):
        if isinstance(u, App) and not _has_binder_above(t, u):
            st_ = interp.semtype(typecheck(u, trs.signature))
            whole = interpret_term(u, interp)
            parts = sem_apply(interpret_term(u.fun, interp), interpret_term(u.arg, interp))
            assert whole.number == parts.number
            assert _agree(whole, parts, st_.shape)


def _has_binder_above(t, target):
    if t is target:
        return False
    if isinstance(t, Lam):
        return _contains(t.body, target)
    if isinstance(t, App):
        return _has_binder_above(t.fun, target) or _has_binder_above(t.arg, target)
    return False


def _contains(t, target):
    return any(u is target for u in subterms(t))


# -- comparison ----------------------------------------------------------------------

def test_compare_examples():
    assert compare((4, U), (3, U), ProdS((N, UNIT_S)), "ge").holds
    v = compare((3, 10), (3, 11), ProdS((N, N)), "ge")
    assert not v.holds and v.witness == ("2",)
    f = eval_expr(parse_expr("\\y. 7 + y"), {})
    g = eval_expr(parse_expr("\\y. y + 1"), {})
    grid = GridSpec(nats=tuple(range(9)))
    assert compare(f, g, FunS(N, N), "ge", grid).holds
    assert all(f(n) >= g(n) for n in range(9))
    assert not compare(g, f, FunS(N, N), "ge", grid).holds


def test_compare_strict_mode_is_strict_only_in_the_number():
    shape = ProdS((ProdS((N, UNIT_S)), N))
    assert compare(((4, U), 3), ((3, U), 3), shape, "gt").holds
    assert not compare(((3, U), 9), ((3, U), 3), shape, "gt").holds
    assert not compare(((4, U), 2), ((3, U), 3), shape, "gt").holds


def test_grid_spec_parsing():
    g = GridSpec.parse("nats=0,2;lib=zero,id;budget=10")
    assert g.nats == (0, 2) and g.library == ("zero", "id") and g.budget == 10
    assert GridSpec.parse(str(GridSpec())) == GridSpec()
    with pytest.raises(ValueError):
        GridSpec.parse("lib=triple")


# -- monotonicity sampling -----------------------------------------------------------

def _comparable_pairs(shape, rng, limit=60):
    pool = [v for v, _ in samples(shape, SMALL)]
    pairs = [(v, v) for v in pool[:10]]
    for _ in range(limit * 4):
        a, b = rng.choice(pool), rng.choice(pool)
        if compare(b, a, shape, "ge", SMALL).holds:
            pairs.append((a, b))
        if len(pairs) >= limit:
            break
    return pairs


def monotone(value, shape, rng, depth=2):
    if isinstance(shape, ProdS):
        return all(monotone(v, s, rng, depth) for v, s in zip(value, shape.items))
    if not isinstance(shape, FunS) or depth == 0:
        return True
    for lo, hi in _comparable_pairs(shape.dom, rng):
        if not compare(value(hi), value(lo), shape.cod, "ge", SMALL).holds:
            return False
    lo, _ = rng.choice(_comparable_pairs(shape.dom, rng))
    return monotone(value(lo), shape.cod, rng, depth - 1)


BUNDLED = ["add", "map", "addmap"]


@pytest.mark.parametrize("system", BUNDLED)
def test_bundled_expressions_are_monotone(system):
    from cbvtc.data import load

    trs, interp = load(system)
    rng = random.Random(0)
    for name, v in interp.symbols.items():
        st_ = interp.semtype(trs.signature.symbols[name])
        assert monotone(v.costfn, st_.costf, rng), name
        assert monotone(v.size, st_.size, rng), name


def test_monotonicity_checker_catches_a_decreasing_function():
    from cbvtc.semantics.monoexpr import PyClosure

    decreasing = PyClosure(lambda n: max(0, 10 - n))
    assert not monotone(decreasing, FunS(N, N), random.Random(0))
    assert monotone(eval_expr(parse_expr("\\x. x * x + 1"), {}), FunS(N, N), random.Random(0))
