import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from caratheodory import dsl
from caratheodory.completion import check_modulus, measure_completion
from caratheodory.dsl import (
    Atoms,
    Call,
    Complement,
    Diff,
    Intersect,
    IntervalLit,
    Name,
    Union,
    eval_element,
    eval_point,
    parse,
    to_text,
)
from caratheodory.errors import DomainError, ParseError, UsageError
from caratheodory.families import (
    BUILTINS,
    eval_family,
    fatcantor_stage,
    fatcantor_stage_measure,
)
from caratheodory.generators import random_expr
from caratheodory.set_algebra import FiniteWeighted, canonicalize, parse_config


def I(*pairs):
    return canonicalize((F(a), F(b)) for a, b in pairs)


def parts(s):
    return [(p.lo, p.hi) for p in s.parts]


def test_parse_examples():
    assert parse("[0,1/2) | [3/4,1)") == Union(IntervalLit(F(0), F(1, 2)), IntervalLit(F(3, 4), F(1)))
    e = parse("!([0,1/3) & [1/4,1))")
    assert isinstance(e, Complement) and isinstance(e.operand, Intersect)
    lit = parse("[1/2,1/4)")
    assert lit == IntervalLit(F(1, 2), F(1, 4))
    with pytest.raises(DomainError):
        eval_element(lit)


def test_precedence_and_associativity():
    a, b, c = (IntervalLit(F(0), F(k, 4)) for k in (1, 2, 3))
    t = "[0,1/4) | [0,1/2) & [0,3/4)"
    assert parse(t) == Union(a, Intersect(b, c))
    assert parse("[0,1/4) \\ [0,1/2) | [0,3/4)") == Union(Diff(a, b), c)
    assert parse("![0,1/4) & [0,1/2)") == Intersect(Complement(a), b)
    assert parse("[0,1/4) \\ ([0,1/2) \\ [0,3/4))") == Diff(a, Diff(b, c))


def test_names_calls_and_atoms():
    assert parse("fatcantor") == Name("fatcantor")
    assert parse("perturb(7) | dyadicblocks(2)") == Union(Call("perturb", (F(7),)), Call("dyadicblocks", (F(2),)))
    assert parse("{a0, a2}") == Atoms((0, 2)) and parse("{}") == Atoms(())
    assert parse(" \n [ 0 , 1 / 2 ) ") == IntervalLit(F(0), F(1, 2))


@pytest.mark.parametrize(
    "text, where",
    [("!", (1, 2)), ("[0,1/2", (1, 7)), ("[0,1/0)", (1, 6)), ("[0,1) $", (1, 7)), ("[0,1)\n|| x", (2, 2)),
     ("{b1}", (1, 2)), ("f(1,", (1, 5)), ("[0,1) [0,1)", (1, 7))],
)
def test_parse_errors_report_position(text, where):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert (info.value.line, info.value.column) == where
    assert str(info.value).startswith(f"{where[0]}:{where[1]}:")


def test_eval_examples():
    assert parts(eval_element("[0,1/2) | [1/2,3/4)")) == [(F(0), F(3, 4))]
    assert eval_element("![0,1)").is_empty()
    assert parts(eval_element("[0,1/3) \\ [1/4,1)")) == [(F(0), F(1, 4))]
    assert eval_element("universe & !empty") == I(("0", "1"))


def test_eval_errors():
    with pytest.raises(UsageError):
        eval_element("nothing")
    with pytest.raises(UsageError):
        eval_element("fatcantor")
    with pytest.raises(UsageError):
        eval_element("{a0}")
    cfg = FiniteWeighted((F(1, 2), F(1, 2)))
    with pytest.raises(UsageError):
        eval_element("[0,1)", cfg)
    with pytest.raises(DomainError):
        eval_element("{a5}", cfg)
    with pytest.raises(DomainError):
        eval_element("[0,2)")


def test_finite_eval():
    cfg = parse_config("finite:1/2,1/4,1/4")
    assert eval_element("{a0} | !{a0,a1}", cfg).atoms == (0, 2)


def test_families():
    assert parts(eval_family("fatcantor")(1)) == [(F(0), F(3, 8)), (F(5, 8), F(1))]
    assert parts(eval_family("increasing")(2)) == [(F(0), F(3, 4))]
    d = eval_family("dyadicblocks", (1,))
    assert all(parts(d(n)) == [(F(1, 2), F(3, 4))] for n in range(4))
    for bad in [("nope", ()), ("fatcantor", (1,)), ("perturb", ()), ("perturb", (F(1, 2),)), ("dyadicblocks", (-1,))]:
        with pytest.raises(UsageError):
            eval_family(*bad)
    with pytest.raises(UsageError):
        eval_family("fatcantor", (), FiniteWeighted((F(1),)))


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_builtins_pass_check_modulus(name):
    params = (3,) * BUILTINS[name][1]
    assert check_modulus(eval_family(name, params), 12)


def test_fatcantor_closed_form():
    for n in range(21):
        s = fatcantor_stage(n)
        assert s.measure() == fatcantor_stage_measure(n) == F(1, 2) + F(1, 2 ** (n + 1))
        if n <= 6:
            assert parts(s) == oracles.fatcantor_stage(n)


def test_eval_point():
    m = measure_completion(eval_point("fatcantor | [0,1/2)"), 16)
    assert m.contains(F(3, 4))
    m = measure_completion(eval_point("[0,1/3)"), 16)
    assert (m.lo, m.hi) == (F(1, 3), F(1, 3))
    m = measure_completion(eval_point("!increasing"), 12)
    assert m.contains(0)
    # the construction is symmetric about 1/2
    m = measure_completion(eval_point("fatcantor \\ [0,1/2)"), 16)
    assert m.contains(F(1, 4))


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32))
def test_round_trip(seed):
    e = random_expr(random.Random(seed), 5)
    text = to_text(e)
    assert parse(text) == e
    assert to_text(parse(text)) == text


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32))
def test_eval_invariant_under_reprint(seed):
    rng = random.Random(seed)
    e = random_expr(rng, 4)
    if dsl.is_family(e) or "Atoms" in repr(e) or "x1" in repr(e):
        return
    try:
        v = eval_element(e)
    except DomainError:
        return
    assert eval_element(parse(to_text(e))) == v
