import pytest

from splicekit.regex import Alt, Cat, Eps, RegexSyntaxError, Star, Sym, parse


def test_precedence():
    assert parse("ab*") == Cat((Sym("a"), Star(Sym("b"))))
    assert parse("a+b") == Alt((Sym("a"), Sym("b")))
    assert parse("a|b") == parse("a+b")


def test_postfix_plus():
    # "+" with nothing after it means "one or more"
    assert parse("a+") == Cat((Sym("a"), Star(Sym("a"))))
    assert parse("(ab)+") == parse("(ab)(ab)*")


def test_empty_word_and_print_round_trip():
    assert parse("_") == Eps()
    for text in ["(ab+ba)*", "a(b|c)*d", "_+a", "((a))*"]:
        node = parse(text)
        assert parse(str(node)) == node


@pytest.mark.parametrize("bad", ["(", "a)", "*", "a||b", ""])
def test_errors(bad):
    with pytest.raises(RegexSyntaxError):
        parse(bad)
