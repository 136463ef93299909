from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from b2verma.errors import ParseError
from b2verma.expr import (
    XAB,
    Comm,
    Const,
    Frac,
    Gen,
    Neg,
    Prod,
    Sum,
    eval_condition,
    eval_int,
    eval_weight,
    free_names,
    parse,
    parse_equation,
    to_source,
)
from b2verma.verma import Weight

L = 5

exponents = st.sampled_from(["1", "(2)", "(l)", "(l-1)", "(2l-3)", "(l+1)", "3"])
letters = st.sampled_from(["f1", "f2", "f12", "f112", "f12'", "f112'"])
gens = st.builds(lambda a, e: f"{a}^{e}", letters, exponents) | letters
scalars = st.sampled_from(["2", "1/2", "3/4", "7"])


def _extend(inner):
    return st.one_of(
        st.builds(lambda a, b: f"{a} {b}", inner, inner),
        st.builds(lambda a, b: f"{a} + {b}", inner, inner),
        st.builds(lambda a, b: f"{a} - {b}", inner, inner),
        st.builds(lambda a: f"-{a}", inner),
        st.builds(lambda a, b: f"[{a}, {b}]", inner, inner),
        st.builds(lambda a: f"({a})", inner),
        st.builds(lambda s, a: f"{s} {a}", scalars, inner),
        st.builds(lambda a, b: f"frac({a}, {b})", inner, inner),
        st.builds(lambda a, b: f"x({a},{b})", st.integers(0, 4), st.sampled_from(["0", "l-1", "2"])),
    )


sources = st.recursive(gens, _extend, max_leaves=8)


def test_product_of_generators():
    assert parse("f1^(3) f2", L) == Prod((Gen("f1", 3), Gen("f2", 1)))


def test_commutator_product():
    tree = parse("[f2^(2),f1^(l)] f1^(3) f2", L)
    assert tree == Prod((Comm(Gen("f2", 2), Gen("f1", 5)), Gen("f1", 3), Gen("f2", 1)))


def test_scalars_frac_and_macro():
    tree = parse("1/2 [[f2^(l-1),f1^(l)],f1^(l)] f1^(l-3)", L)
    assert tree.factors[0] == Const(Fraction(1, 2))
    assert parse("frac(x(3,l-1), f2)", L) == Frac(XAB(3, 4), Gen("f2", 1))
    assert parse("f1 * f2", L) == parse("f1 f2", L)
    assert parse("-f1 + f2", L) == Sum((Neg(Gen("f1", 1)), Gen("f2", 1)))


def test_syntax_error_position():
    with pytest.raises(ParseError) as e:
        parse("f1^(", L)
    assert (e.value.line, e.value.column) == (1, 5)
    assert "column 5" in str(e.value)


@pytest.mark.parametrize("src", ["f1^(l-7)", "f3", "f1 +", "[f1, f2", "frac(f1)", "f1^(2", "x(1)", "f1 ) f2"])
def test_malformed_inputs(src):
    with pytest.raises(ParseError):
        parse(src, L)


def test_integer_names_from_environment():
    assert parse("f1^(a+2b)", L, {"a": 1, "b": 2}) == Gen("f1", 5)
    with pytest.raises(ParseError):
        parse("f1^(c)", L)


@settings(max_examples=300, deadline=None)
@given(sources)
def test_round_trip(src):
    tree = parse(src, L)
    assert parse(to_source(tree), L) == tree


@settings(max_examples=300, deadline=None)
@given(st.text(alphabet="f12'^()[],+-*/ xl0123456789ac", max_size=25))
def test_parsing_is_total(src):
    try:
        parse(src, L)
    except ParseError as e:
        assert e.line >= 1 and e.column >= 1


def test_equations():
    lhs, rhs = parse_equation("f1 f2 == f2", L)
    assert lhs == parse("f1 f2", L) and rhs == Gen("f2", 1)
    with pytest.raises(ParseError):
        parse_equation("f1 f2", L)


def test_integer_weight_and_condition_evaluation():
    env = {"l": 5, "a": 1, "b": 0}
    assert eval_int("2l-3", env) == 7
    assert eval_int("l*a+l-2", env) == 8
    assert eval_weight("(l*a, l*b-3)", env) == Weight(5, -3)
    assert eval_weight("L - 3A1 - (l+1)A2", dict(env, L=Weight(0, 0))) == Weight(6, -9)
    assert eval_weight("rho", env) == Weight(1, 1)
    assert eval_condition("a+b >= 1 and l == 5", env)
    assert not eval_condition("a != 1", env)
    with pytest.raises(ParseError):
        eval_weight("l + 1", env)


def test_free_names():
    assert free_names("f1^(i+2j) x(i, l) frac(f1, f2)") == {"i", "j", "l"}
