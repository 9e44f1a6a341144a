from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import canon, rotations
from splicekit.words import (
    CircWord,
    all_words,
    circ_factors,
    format_word,
    is_conjugate,
    least_rotation,
    lin,
    occurrences,
    shortlex,
)

small = st.text(alphabet="abc", max_size=12)


@given(small)
def test_least_rotation_is_minimum(w):
    assert least_rotation(w) == canon(w)


@settings(max_examples=300)
@given(small, st.integers(min_value=0, max_value=20))
def test_class_does_not_depend_on_rotation(w, k):
    k = k % max(len(w), 1)
    assert CircWord.of(w) == CircWord.of(w[k:] + w[:k])


def test_circword_basics():
    c = CircWord.of("bacabaca")
    assert c.rep == "abacabac"
    assert str(c) == "^abacabac"
    assert len(c) == 8
    assert set(c.linearizations()) == rotations("abacabac")
    assert len(c.linearizations()) == 4
    assert c.reverse() == CircWord.of("acabacab"[::-1])


def test_conjugacy():
    assert is_conjugate("abc", "cab")
    assert not is_conjugate("abc", "acb")
    assert not is_conjugate("ab", "abab")


def test_circular_factors_wrap_around():
    f = circ_factors("ab")
    assert "ba" in f and "aba" not in f
    assert circ_factors(CircWord.of("abc")) >= {"ca", "cab", "bca"}


def test_occurrences_overlapping():
    assert list(occurrences("aaaa", "aa")) == [0, 1, 2]
    assert list(occurrences("ab", "")) == [0, 1, 2]


def test_shortlex_and_enumeration():
    assert shortlex(["b", "ab", "a", "", "aa"]) == ["", "a", "b", "aa", "ab"]
    ws = list(all_words("ab", 2))
    assert ws == ["", "a", "b", "aa", "ab", "ba", "bb"]


def test_lin_and_format():
    assert lin({CircWord.of("ab")}) == {"ab", "ba"}
    assert format_word("") == "_"
    assert format_word(CircWord.of("ba")) == "^ab"
    assert format_word("ab") == "ab"
