from fractions import Fraction

import pytest

from confspace.errors import LevelMismatch, ParseError
from confspace.symbols import LinComb, Mix, Sq, T, W, WhWT, parse_comb, parse_symbol


@pytest.mark.parametrize(
    "text",
    ["W(1,2;s h1)", "T3(2;s;x1)", "Sq(1,3;s;s s)", "Mix(s;s^-1)", "WhWT(1,2;s;e;x1)", "T4(1;h1^-1;y1)"],
)
def test_symbol_text_round_trip(text, g1):
    sym = parse_symbol(text, g1)
    assert str(sym) == text
    assert parse_symbol(str(sym), g1) == sym


def test_parse_symbol_types(g1):
    assert parse_symbol("Mix(s;s^-1)", g1) == Mix(g1.s(1), g1.s(-1))
    assert parse_symbol("T3(2;s;x1)", g1) == T(3, 2, g1.s(1), "x1")
    assert isinstance(parse_symbol("WhWT(1,2;s;e;x1)", g1), WhWT)


@pytest.mark.parametrize("bad", ["W(2,1;s)", "Sq(1,2;s;e)", "W(1,2)", "Foo(s)", "T3(x;s;p)", "Mix(s;t)"])
def test_parse_symbol_rejects(bad, g1):
    with pytest.raises(ParseError):
        parse_symbol(bad, g1)


def test_parse_comb(g1):
    v = parse_comb("2*W(1,2;s) - 1/2*W(1,3;s^-1 h1) + W(1,2;s)", "pi3C3", g1)
    assert v.coeff(W(1, 2, g1.s(1))) == 3
    assert v.coeff(W(1, 3, g1.word("s^-1 h1"))) == Fraction(-1, 2)
    assert not parse_comb("0", "pi3C3", g1)
    assert parse_comb("-Mix(s;s)", "pi5C3", g1).coeff(Mix(g1.s(1), g1.s(1))) == -1


def test_lincomb_kind_guard(g0):
    a = LinComb.of("pi3C2", W(1, 2, g0.s(1)))
    b = LinComb.of("pi3C3", W(1, 2, g0.s(1)))
    with pytest.raises(LevelMismatch):
        a + b


def test_sq_requires_order(g0):
    with pytest.raises(ValueError):
        Sq(1, 2, g0.s(-1), g0.s(1))
