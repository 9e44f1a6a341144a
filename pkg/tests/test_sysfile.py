from importlib import resources

import pytest

from splicekit.splicing import FlatRule, HeadTriple, Kind, LinearRule, PixtonRule
from splicekit.sysfile import SystemFileError, parse_rule, parse_system, parse_system_text, print_system
from splicekit.words import CircWord

CORPUS = sorted(p for p in (resources.files("splicekit") / "corpus").iterdir() if p.name.endswith(".sys"))


def test_sir_ex_file():
    s = parse_system_text("# a^n b^n\nkind: flat\nalphabet: a b\ninitial: ab\nrule: a | b $ a | b\n")
    assert s.kind is Kind.FLAT and s.rules == (FlatRule("a", "b", "a", "b"),)


def test_circular_file_is_closed_symmetrically():
    s = parse_system_text("kind: circular\nalphabet: a b c\ninitial: ^aac ^b\nrule: c # _ $ b # _\n")
    assert set(s.rules) == {LinearRule("c", "", "b", ""), LinearRule("b", "", "c", "")}
    assert s.initial == {CircWord.of("aac"), CircWord.of("b")}


def test_rule_syntax():
    assert parse_rule(Kind.LINEAR, "cg # cg $ cg # cg") == LinearRule("cg", "cg", "cg", "cg")
    assert parse_rule(Kind.HEAD, "a , b , a") == HeadTriple("a", "b", "a")
    assert parse_rule(Kind.PIXTON, "a , b ; a ; b") == PixtonRule("a", "b", "a", "b")
    assert parse_rule(Kind.FLAT, "_ | _ $ _ | _") == FlatRule("", "", "", "")


@pytest.mark.parametrize("text, line", [
    ("kind: flat\nalphabet: a b\ninitial: ac\nrule: a | b $ a | b\n", 3),
    ("kind: flat\nalphabet: a b\ninitial: ab\nrule: a | c $ a | b\n", 4),
    ("kind: flat\nalphabet: a b\ninitial: ab\ncolour: red\n", 4),
    ("kind: flat\nalphabet: a b\ninitial: ab\nrule: a # b $ a # b\n", 4),
    ("kind: linear\nalphabet: a b\ninitial: ^ab\n", 3),
    ("kind: wobbly\nalphabet: a\ninitial: a\n", 1),
    ("kind: flat\nalphabet: a b\ninitial: ab\noption: self-splicing\n", None),
    ("kind: flat\nalphabet: ab\ninitial: ab\n", 2),
    ("kind: flat\nalphabet: a #\ninitial: a\n", 2),
    ("alphabet: a\ninitial: a\n", None),
    ("kind: flat\nalphabet: a\nrule: a | a $ a | a\n", None),
])
def test_errors_report_lines(text, line):
    with pytest.raises(SystemFileError) as e:
        parse_system_text(text)
    assert e.value.line == line
    if line:
        assert str(e.value).startswith(f"line {line}:")


def test_bare_and_empty_words():
    s = parse_system_text("kind: circular\nalphabet: a b\ninitial: ab _ ^ba\nrule: _ # _ $ _ # _\n")
    assert s.initial == {CircWord.of("ab")}


def test_options():
    s = parse_system_text("kind: linear\nalphabet: a\ninitial: a\nrule: a # _ $ a # _\noption: one-splicing\n")
    assert s.one_splicing
    s = parse_system_text("kind: circular\nalphabet: a\ninitial: ^a\nrule: a # _ $ a # _\noption: self-splicing\n")
    assert s.self_splicing


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.name)
def test_corpus_round_trip(path):
    s = parse_system(path)
    again = parse_system_text(print_system(s))
    assert again == s
    assert print_system(again) == print_system(s)


def test_missing_file(tmp_path):
    with pytest.raises(SystemFileError):
        parse_system(tmp_path / "nothing.sys")
