import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import avoiders, is_constant_brute, rotations, words_upto
from splicekit import automata as fa
from splicekit.automata import Dfa


@st.composite
def dfas(draw, max_states=3, alphabet=("a", "b")):
    n = draw(st.integers(1, max_states))
    rows = tuple(tuple(draw(st.integers(0, n - 1)) for _ in alphabet) for _ in range(n))
    finals = frozenset(q for q in range(n) if draw(st.booleans()))
    return Dfa(tuple(alphabet), rows, 0, finals)


def lang(d, n):
    return {w for w in words_upto(d.alphabet, n) if d.accepts(w)}


def py_regex(expr):
    # our union is "+", python's is "|"; "+" before an operand means union
    out = []
    for i, c in enumerate(expr):
        if c == "+" and i + 1 < len(expr) and (expr[i + 1].isalpha() or expr[i + 1] in "(_"):
            out.append("|")
        elif c == "_":
            out.append("")
        else:
            out.append(c)
    return re.compile("".join(out))


@pytest.mark.parametrize("expr", ["(ab+ba)*", "a(a+b)*b", "(aa)*+b*", "a+b", "_", "(a+)b", "((ab)*a)*"])
def test_regex_against_python_re(expr):
    d = fa.regex_to_dfa(expr, "ab")
    p = py_regex(expr)
    for w in words_upto("ab", 7):
        assert d.accepts(w) == bool(p.fullmatch(w)), w


@settings(max_examples=60)
@given(dfas(4))
def test_minimize_keeps_language_and_is_minimal(d):
    m = d.minimize()
    assert lang(m, 6) == lang(d, 6)
    assert m.n_states <= d.n_states
    assert m.minimize().n_states == m.n_states


@settings(max_examples=60)
@given(dfas(), dfas())
def test_boolean_operations(x, y):
    lx, ly = lang(x, 5), lang(y, 5)
    assert lang(fa.union(x, y), 5) == lx | ly
    assert lang(fa.intersect(x, y), 5) == lx & ly
    assert lang(fa.difference(x, y), 5) == lx - ly
    assert lang(fa.symmetric_difference(x, y), 5) == lx ^ ly
    assert lang(fa.complement(x), 5) == set(words_upto("ab", 5)) - lx


@settings(max_examples=60)
@given(dfas(), dfas())
def test_counterexample_is_shortlex_least(x, y):
    w = fa.counterexample(x, y)
    diff = lang(x, 6) ^ lang(y, 6)
    if w is None:
        assert not diff
        assert fa.dfa_equal(x, y)
    else:
        assert w == min(diff, key=lambda v: (len(v), v))


@settings(max_examples=60)
@given(dfas())
def test_reverse(d):
    assert lang(fa.reverse_dfa(d), 5) == {w[::-1] for w in lang(d, 5)}


@settings(max_examples=60)
@given(dfas())
def test_cyclic_closure_matches_rotations(d):
    got = lang(fa.cyclic_closure(d).determinize(), 6)
    want = set()
    for w in lang(d, 6):
        want |= rotations(w)
    assert got == want


@settings(max_examples=40)
@given(dfas())
def test_substitute(d):
    images = {"a": "ab", "b": ""}
    got = fa.substitute(d, images, "ab").determinize()
    want = {"".join(images[c] for c in w) for w in lang(d, 6)}
    assert {w for w in want if len(w) <= 4} == {w for w in lang(got, 4)}


def test_words_are_shortlex():
    d = fa.regex_to_dfa("(a+b)*", "ab")
    ws = list(d.words(3))
    assert ws == sorted(ws, key=lambda w: (len(w), w))
    assert len(ws) == 15


def test_finite_and_size():
    d = fa.finite_dfa(["ab", "b", ""], "ab")
    assert fa.is_finite(d) and fa.language_size(d) == 3
    assert fa.language_size(fa.regex_to_dfa("a*", "a")) is None
    assert fa.shortest_word(fa.regex_to_dfa("aab+b", "ab")) == "b"


def test_with_alphabet_adds_sink():
    d = fa.regex_to_dfa("a*", "a").with_alphabet("ab")
    assert d.accepts("aa") and not d.accepts("ab")


def test_dot_is_stable():
    d = fa.regex_to_dfa("ab*", "ab")
    assert d.to_dot() == fa.regex_to_dfa("ab*", "ab").to_dot()
    assert d.to_dot().startswith("digraph dfa {")
    assert '[label="b"]' in d.to_dot()


# -- unavoidable sets

@pytest.mark.parametrize("Y, alphabet", [
    (["aa", "b"], "ab"), (["a", "b"], "ab"), (["ab", "ba"], "ab"),
    (["aa", "bb"], "ab"), (["aaa", "bb", "aba"], "ab"), (["ab"], "abc"),
])
def test_unavoidability_brute(Y, alphabet):
    u = fa.is_unavoidable(Y, alphabet)
    if u.unavoidable:
        av = avoiders(Y, alphabet, u.k0 + 1)
        assert max(len(w) for w in av) == u.k0
    else:
        for n in range(4):
            w = u.prefix + u.cycle * n
            assert not any(y in w for y in Y)


def test_unavoidable_example_k0():
    u = fa.is_unavoidable(["aa", "b"], "ab")
    assert u.unavoidable and u.k0 == 1
    assert u.certificate() == "k0=1"


@settings(max_examples=60)
@given(st.sets(st.text("ab", min_size=1, max_size=3), min_size=1, max_size=4))
def test_unavoidability_random(Y):
    u = fa.is_unavoidable(Y, "ab")
    if u.unavoidable:
        assert not [w for w in avoiders(Y, "ab", u.k0 + 1) if len(w) == u.k0 + 1]
        assert [w for w in avoiders(Y, "ab", u.k0) if len(w) == u.k0]
    else:
        assert not any(y in u.prefix + u.cycle * 5 for y in Y)


# -- constants

def test_constant_examples():
    aa = fa.regex_to_dfa("(aa)*", "a")
    assert fa.find_constant(aa) is None
    mixed = fa.regex_to_dfa("(aa)*+b*", "ab")
    assert fa.is_constant(mixed, "b")
    assert not fa.is_constant(mixed, "a")
    assert fa.constant_status(mixed, "ab") is fa.ConstantStatus.VACUOUS


@settings(max_examples=50, deadline=None)
@given(dfas(4), st.text("ab", max_size=2))
def test_is_constant_brute(d, w):
    # contexts up to length 4 decide it for automata with at most 4 states
    assert fa.is_constant(d, w) == is_constant_brute(d.accepts, w, "ab", 4)


def test_unary_spectrum():
    sp = fa.unary_spectrum(fa.regex_to_dfa("aaa(aa)*", "a"))
    assert [m for m in range(12) if m in sp] == [3, 5, 7, 9, 11]
    assert sp.period == 2
    assert sp.to_dfa().accepts("aaaaa")
    fin = fa.unary_spectrum(fa.finite_dfa(["a", "aaa"], "a"))
    assert fin.is_finite() and fin.members(10) == [1, 3]
