"""Grammar, machine-readable errors, and pretty-printer round trips."""

import pytest

from tatecalc.parser import (
    ArityError,
    Bin,
    Call,
    LexError,
    Neg,
    Num,
    ParseError,
    Pow,
    Sym,
    UnknownNameError,
    parse,
    render,
)


def test_function_application():
    assert parse("geom(cinv)") == Call("geom", (Sym("cinv"),))
    assert parse("adams(2, q + q^-1)") == Call(
        "adams", (Num(2), Bin("+", Sym("q"), Pow(Sym("q"), -1)))
    )
    assert parse("binomial_series()") == Call("binomial_series", ())


def test_signed_exponent_tree():
    t = parse("(1-q)^-1 * (1-q)")
    assert t == Bin(
        "*",
        Pow(Bin("-", Num(1), Sym("q")), -1),
        Bin("-", Num(1), Sym("q")),
    )


def test_precedence_and_associativity():
    assert parse("1 + 2 * 3") == Bin("+", Num(1), Bin("*", Num(2), Num(3)))
    assert parse("1 - 2 - 3") == Bin("-", Bin("-", Num(1), Num(2)), Num(3))
    assert parse("2 ^ 3") == Pow(Num(2), 3)
    assert parse("-q^2") == Neg(Pow(Sym("q"), 2))


def test_indexed_symbols():
    assert parse("b_3") == Sym("b_3")
    assert parse("beta_12") == Sym("beta_12")


def test_whitespace_insensitive():
    assert parse(" geom( cinv ) ") == parse("geom(cinv)")


class TestErrors:
    def test_unclosed_call_offset(self):
        with pytest.raises(ParseError) as err:
            parse("exp(")
        assert err.value.offset == 4
        assert err.value.code == "syntax"

    def test_missing_rparen(self):
        with pytest.raises(ParseError) as err:
            parse("geom(cinv")
        assert err.value.offset == 9
        assert "')'" in err.value.expected

    def test_unknown_symbol(self):
        with pytest.raises(UnknownNameError) as err:
            parse("zeta + 1")
        assert err.value.code == "unknown-name"
        assert err.value.offset == 0

    def test_unknown_function(self):
        with pytest.raises(UnknownNameError):
            parse("frobenius(q)")

    def test_arity(self):
        with pytest.raises(ArityError) as err:
            parse("adams(2)")
        assert err.value.code == "arity"
        with pytest.raises(ArityError):
            parse("exp(T, T)")

    def test_lex_error(self):
        with pytest.raises(LexError) as err:
            parse("q + $")
        assert err.value.code == "lex"
        assert err.value.offset == 4

    def test_trailing_input(self):
        with pytest.raises(ParseError):
            parse("q q")

    def test_non_integer_exponent(self):
        with pytest.raises(ParseError):
            parse("q^x")


ROUND_TRIP_CORPUS = [
    "geom(cinv)",
    "boundary(cinv^2)",
    "(1 - q)^-1 * (1 - q)",
    "adams(2, q + q^-1)",
    "exp(b * T)",
    "1 + 2 * 3 - 4",
    "q^-5 / (1 - q)",
    "-(q + 1)",
    "partial_fractions(q^-1 * (1 - q)^-1)",
    "expand(qinv, s)",
    "b_1 * b_2 + 3",
    "bernoulli(12)",
    "exp_bT()",
    "((1 + T)^2)^3",
]


@pytest.mark.parametrize("source", ROUND_TRIP_CORPUS)
def test_render_parse_round_trip(source):
    tree = parse(source)
    assert parse(render(tree)) == tree
