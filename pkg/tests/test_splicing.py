import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as O
from splicekit.splicing import (
    CrossingMismatch,
    FlatRule,
    GenerationBudget,
    HeadTriple,
    Kind,
    LinearRule,
    NotNormalized,
    PixtonRule,
    SplicingSystem,
    SystemError_,
    circular_step,
    derives,
    flat_step,
    generate,
    head_circ_step,
    linear_step,
    normalize,
    pixton_circ_step,
    self_splice_step,
    symmetric_closure,
)
from splicekit.words import CircWord

C = CircWord.of
piece = st.text("ab", max_size=2)


def circ_set(ws):
    return {C(w) for w in ws}


# -- single steps

def test_excg_step():
    r = LinearRule("cg", "cg", "cg", "cg")
    out = linear_step(r, "aacgcgaacgcgaa", "ttcgcgtt")
    assert ("aacgcgtt", "ttcgcgaacgcgaa") in out
    assert ("aacgcgaacgcgtt", "ttcgcgaa") in out
    firsts = {a for a, _ in out} | {b for _, b in out}
    assert {"aacgcgtt", "aacgcgaacgcgtt"} <= firsts


def test_flat_step_examples():
    assert flat_step(FlatRule("ab", "c", "aa", "b"), "babcc", "aaccb") == {"babaaccbcc"}
    # the inserted word must carry both handles without overlap
    assert flat_step(FlatRule("b", "b", "a", "a"), "bb", "a") == set()
    assert flat_step(FlatRule("", "b", "a", "a"), "bbc", "aba") == {"ababbc", "bababc"}


@settings(max_examples=150)
@given(piece, piece, piece, piece, st.text("ab", max_size=6), st.text("ab", max_size=6))
def test_linear_step_brute(u1, u2, u3, u4, x, y):
    assert linear_step(LinearRule(u1, u2, u3, u4), x, y) == O.linear_step((u1, u2, u3, u4), x, y)


@settings(max_examples=150)
@given(piece, piece, piece, piece, st.text("ab", max_size=6), st.text("ab", max_size=6))
def test_flat_step_brute(a, b, g, d, u, v):
    assert flat_step(FlatRule(a, b, g, d), u, v) == O.flat_step((a, b, g, d), u, v)


@settings(max_examples=150)
@given(piece, piece, piece, piece, st.text("ab", min_size=1, max_size=6),
       st.text("ab", min_size=1, max_size=6))
def test_circular_step_brute(u1, u2, u3, u4, x, y):
    got = {w.rep for w in circular_step(LinearRule(u1, u2, u3, u4), C(x), C(y))}
    assert got == O.circular_step((u1, u2, u3, u4), x, y)


@settings(max_examples=150)
@given(piece, piece, piece, piece, st.text("ab", min_size=1, max_size=7))
def test_self_splice_brute(u1, u2, u3, u4, x):
    got = {(a.rep, b.rep) for a, b in self_splice_step(LinearRule(u1, u2, u3, u4), C(x))}
    assert got == O.self_splice((u1, u2, u3, u4), x)


def test_self_splice_example():
    out = self_splice_step(LinearRule("a", "", "b", ""), C("ab"))
    assert out == {(C("a"), C("b"))}


def test_head_step():
    t = HeadTriple("a", "b", "a")
    assert C("dabaeaba") in head_circ_step(t, t, C("daba"), C("eaba"))
    assert head_circ_step(t, t, C("dd"), C("eaba")) == set()
    with pytest.raises(CrossingMismatch):
        head_circ_step(t, HeadTriple("a", "c", "a"), C("daba"), C("eaca"))


def test_pixton_step():
    r = PixtonRule("a", "b", "a", "b")
    assert C("cadb") in pixton_circ_step(r, C("ac"), C("bd"))
    assert pixton_circ_step(r, C("cc"), C("bd")) == set()


def test_pixton_pumps_a_letter():
    # alpha = a, beta = xa: every match re-inserts the x in front of the a
    r = PixtonRule("xa", "xa", "xa", "xa")
    out = pixton_circ_step(r, C("cxae"), C("cxae"))
    assert out == {C("ecxaecxa")}


# -- normalization

def test_symmetric_closure():
    r = LinearRule("c", "", "b", "")
    assert set(symmetric_closure([r])) == {r, LinearRule("b", "", "c", "")}


def test_normalize_cssh():
    s = SplicingSystem(Kind.CIRCULAR, "abcd", circ_set(["aac", "b", "dd"]), [LinearRule("c", "", "b", "")])
    n = normalize(s)
    assert n.initial == circ_set(["aac", "b"])
    assert n.dropped_initial == circ_set(["dd"])
    assert len(n.rules) == 2
    assert normalize(n) is n


def test_normalize_drops_empty_word():
    s = SplicingSystem(Kind.CIRCULAR, "ab", circ_set(["", "aa"]), [LinearRule("", "", "", "aa")])
    assert C("") not in normalize(s).initial


def test_validation():
    with pytest.raises(SystemError_):
        SplicingSystem(Kind.LINEAR, "ab", {"ab"}, [FlatRule("a", "b", "a", "b")])
    with pytest.raises(SystemError_):
        SplicingSystem(Kind.LINEAR, "ab", {"ac"}, [])
    with pytest.raises(SystemError_):
        SplicingSystem(Kind.FLAT, "ab", {"ab"}, [], self_splicing=True)
    with pytest.raises(SystemError_):
        SplicingSystem(Kind.CIRCULAR, "ab", {"ab"}, [])
    with pytest.raises(SystemError_):
        SplicingSystem(Kind.LINEAR, "ab", set(), [])


def test_budget_validation():
    with pytest.raises(ValueError):
        GenerationBudget(max_rounds=0)
    with pytest.raises(ValueError):
        GenerationBudget(work_len=4, report_len=5)
    assert GenerationBudget(work_len=7).report_len == 7


def test_generate_needs_normalized():
    s = SplicingSystem(Kind.FLAT, "ab", {"ab"}, [FlatRule("a", "b", "a", "b")])
    with pytest.raises(NotNormalized):
        generate(s, GenerationBudget())


# -- generation against closures

def run(s, n, rounds=200):
    return generate(normalize(s), GenerationBudget(max_rounds=rounds, work_len=n))


def test_sir_ex():
    s = SplicingSystem(Kind.FLAT, "ab", {"ab"}, [FlatRule("a", "b", "a", "b")])
    res = run(s, 8)
    assert set(res.words) == {"ab", "aabb", "aaabbb", "aaaabbbb"}
    assert res.saturated and res.complete


def test_circular_dyck_classes():
    s = SplicingSystem(Kind.CIRCULAR, "ab", {C("ab")}, [LinearRule("", "", "", "")])
    assert set(run(s, 4).words) == circ_set(["ab", "aabb", "abab"])


def test_b_aa_star():
    s = SplicingSystem(Kind.LINEAR, "ab", {"b", "baa"}, [LinearRule("baa", "", "b", "a")])
    assert set(run(s, 9).words) == {"b" + "a" * k for k in range(0, 9, 2)}


def test_budget_exhaustion_is_reported():
    s = SplicingSystem(Kind.FLAT, "ab", {"ab"}, [FlatRule("a", "b", "a", "b")])
    res = run(s, 20, rounds=2)
    assert not res.saturated and not res.complete
    assert res.rounds_used == 2


rules4 = st.tuples(piece, piece, piece, piece)


@settings(max_examples=40, deadline=None)
@given(st.sets(st.text("ab", min_size=1, max_size=3), min_size=1, max_size=3),
       st.lists(rules4, min_size=1, max_size=2))
def test_flat_generation_brute(init, rules):
    s = SplicingSystem(Kind.FLAT, "ab", init, [FlatRule(*r) for r in rules])
    res = run(s, 7)
    assert res.complete
    assert set(res.words) == O.flat_closure(init, rules, 7)


@settings(max_examples=40, deadline=None)
@given(st.sets(st.text("ab", min_size=1, max_size=3), min_size=1, max_size=3),
       st.lists(rules4, min_size=1, max_size=2), st.booleans())
def test_circular_generation_brute(init, rules, self_spl):
    s = SplicingSystem(Kind.CIRCULAR, "ab", circ_set(init), [LinearRule(*r) for r in rules],
                       self_splicing=self_spl)
    res = run(s, 7)
    sym = set(rules) | {O.mirror(r) for r in rules}
    assert {w.rep for w in res.words} == O.circular_closure(init, sym, 7, self_spl)


@settings(max_examples=40, deadline=None)
@given(st.sets(st.text("ab", min_size=1, max_size=3), min_size=1, max_size=3),
       st.lists(rules4, min_size=1, max_size=2))
def test_linear_generation_brute(init, rules):
    # with a common length cap both sides compute the same bounded fixpoint
    s = SplicingSystem(Kind.LINEAR, "ab", init, [LinearRule(*r) for r in rules])
    res = run(s, 6)
    assert res.saturated
    assert set(res.words) == O.linear_closure(init, rules, 6)


def test_dropped_words_are_reported():
    s = SplicingSystem(Kind.CIRCULAR, "abd", circ_set(["ab", "dd"]), [LinearRule("a", "", "b", "")])
    res = run(s, 6)
    assert C("dd") in res.words
    assert res.dropped == (C("dd"),)


def test_extension_flag():
    s = SplicingSystem(Kind.HEAD, "ab", {C("ab")}, [HeadTriple("", "a", "")])
    assert run(s, 6).extension
    s = SplicingSystem(Kind.PIXTON, "ab", {C("ab")}, [PixtonRule("a", "a", "a", "a")])
    res = run(s, 6)
    assert res.extension and res.complete


# -- backward membership

@settings(max_examples=30, deadline=None)
@given(st.sets(st.text("ab", min_size=1, max_size=3), min_size=1, max_size=3),
       st.lists(rules4, min_size=1, max_size=2))
def test_derives_matches_generation_flat(init, rules):
    s = normalize(SplicingSystem(Kind.FLAT, "ab", init, [FlatRule(*r) for r in rules]))
    gen = set(generate(s, GenerationBudget(max_rounds=100, work_len=6)).words)
    for w in O.words_upto("ab", 6, 1):
        assert derives(s, w) == (w in gen), w


@settings(max_examples=30, deadline=None)
@given(st.sets(st.text("ab", min_size=1, max_size=3), min_size=1, max_size=3),
       st.lists(rules4, min_size=1, max_size=2))
def test_derives_matches_generation_circular(init, rules):
    s = normalize(SplicingSystem(Kind.CIRCULAR, "ab", circ_set(init), [LinearRule(*r) for r in rules]))
    gen = set(generate(s, GenerationBudget(max_rounds=100, work_len=6)).words)
    for w in O.words_upto("ab", 6, 1):
        assert derives(s, w) == (C(w) in gen), w


def test_derives_rejects_linear():
    s = normalize(SplicingSystem(Kind.LINEAR, "ab", {"ab"}, [LinearRule("a", "", "a", "")]))
    with pytest.raises(ValueError):
        derives(s, "ab")
