import pytest
from conftest import expressions
from hypothesis import given
from oracles import all_expressions, derivable_termination

from regproc.regex import (
    ONE,
    ZERO,
    Atom,
    BinStar,
    Prod,
    RegexSyntaxError,
    Star,
    Sum,
    classify,
    letters,
    parse,
    render,
    size,
    sum_of,
    terminates,
    word,
)

a, b, c = Atom("a"), Atom("b"), Atom("c")


@pytest.mark.parametrize(
    "text, expected",
    [
        ("0", ZERO),
        ("1", ONE),
        ("a . (b + c)", Prod(a, Sum(b, c))),
        ("a* . b", Prod(Star(a), b)),
        ("a + b + c", Sum(Sum(a, b), c)),
        ("a . b . c", Prod(Prod(a, b), c)),
        ("a**", Star(Star(a))),
        ("star2(a, b)", BinStar(a, b)),
        ("star2(a + b, c)*", Star(BinStar(Sum(a, b), c))),
        ("  a1.x_2 ", Prod(Atom("a1"), Atom("x_2"))),
    ],
)
def test_parse(text, expected):
    assert parse(text) == expected


@pytest.mark.parametrize(
    "e, text",
    [
        (ZERO, "0"),
        (Sum(a, a), "a + a"),
        (BinStar(a, b), "star2(a, b)"),
        (Prod(a, Prod(b, c)), "a . (b . c)"),
        (Sum(a, Sum(b, c)), "a + (b + c)"),
        (Star(Sum(a, b)), "(a + b)*"),
        (Prod(Sum(a, b), c), "(a + b) . c"),
    ],
)
def test_render(e, text):
    assert render(e) == text


@pytest.mark.parametrize("bad, pos", [("a +", 3), ("(a", 2), ("a b", 2), ("star2(a)", 7), ("A", 0), ("a . * b", 4), ("", 0)])
def test_parse_errors_carry_position(bad, pos):
    with pytest.raises(RegexSyntaxError) as info:
        parse(bad)
    assert info.value.position == pos


def test_reserved_letter():
    with pytest.raises(ValueError):
        Atom("star2")
    with pytest.raises(ValueError):
        Atom("B")


@given(expressions)
def test_render_parse_round_trip(e):
    assert parse(render(e)) == e


def test_terminates_examples():
    assert terminates(ONE)
    assert not terminates(ZERO)
    assert not terminates(Prod(Star(a), b))
    assert terminates(Star(ZERO))
    assert terminates(BinStar(a, ONE))
    assert not terminates(BinStar(ONE, a))


def test_terminates_agrees_with_rule_saturation():
    for n, es in all_expressions(8).items():
        for e in es:
            assert terminates(e) == derivable_termination(e), render(e)


def test_classify_examples():
    r = classify(BinStar(a, b))
    assert (r.is_one_free, r.is_under_star_one_free, r.uses_bin_star, r.letter_occurrences) == (True, True, True, 2)
    r = classify(Prod(Star(a), ZERO))
    assert (r.is_one_free, r.is_under_star_one_free, r.uses_bin_star, r.letter_occurrences) == (False, True, False, 1)
    assert not classify(Star(Prod(a, ONE))).is_under_star_one_free
    assert not classify(Star(Star(a))).is_under_star_one_free
    # the exit part of star2 is not under a star
    assert classify(BinStar(a, Prod(ONE, Star(b)))).is_under_star_one_free


@given(expressions)
def test_one_free_implies_under_star_one_free(e):
    r = classify(e)
    assert not r.is_one_free or r.is_under_star_one_free
    assert r.letter_occurrences <= size(e)


def test_helpers():
    assert word([]) == ONE
    assert word(["a", "b"]) == Prod(a, b)
    assert sum_of([]) == ZERO
    assert sum_of([a, b, c]) == Sum(Sum(a, b), c)
    assert letters(parse("a . (b + a)* . c1")) == {"a", "b", "c1"}
