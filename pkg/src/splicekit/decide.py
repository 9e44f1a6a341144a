"""Regularity decisions, membership and language comparison.

Each entry point picks the strongest method available for the given system:
a characterized subclass with an exact automaton, a compiled grammar, exact
backward membership, and finally budgeted generation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import automata as fa
from .complete import CompleteError, CsshSystem, complete_check, complete_is_regular
from .grammar import (
    GrammarError,
    check_alphabetic,
    compile as compile_system,
    cssh_positions,
    cyk_member,
    grammar_enumerate,
)
from .marked import (
    MarkedError,
    MarkedSystem,
    is_marked,
    marked_automaton,
    marked_decompose,
    marked_diameters,
    marked_is_regular,
    reduce_any,
)
from .splicing import GenerationBudget, Kind, SplicingSystem, derives, generate, normalize
from .unary import FiniteUnary, UnaryForm, unary_closed_form
from .words import CircWord, shortlex

REGULAR = "REGULAR"
NOT_REGULAR = "NOT_REGULAR"
UNKNOWN = "UNKNOWN"

OPEN_NOTE = ("regularity of circular systems outside the marked, complete and unary "
             "classes is an open problem; use 'equal' for a bounded comparison")
OTHER_NOTE = ("no regularity characterization is implemented for {kind} systems; "
              "use 'equal' for a bounded comparison")


@dataclass
class Decision:
    verdict: str
    method: str
    certificate: dict = field(default_factory=dict)
    automaton: fa.Dfa | None = None
    graph: MarkedSystem | None = None

    def dot(self) -> str | None:
        if self.graph is not None:
            return self.graph.to_dot()
        if self.automaton is not None:
            return self.automaton.to_dot()
        return None


def _is_unary(s: SplicingSystem) -> bool:
    return s.kind is Kind.CIRCULAR and len(s.alphabet) == 1 and not s.self_splicing


def _unary_dfa(form, letter: str) -> fa.Dfa:
    if isinstance(form, FiniteUnary):
        return fa.finite_dfa([letter * m for m in form.exponents], [letter])
    return form.to_spectrum().to_dfa(letter)


def _complete_view(s: SplicingSystem) -> CsshSystem | None:
    if s.kind is not Kind.CIRCULAR or s.self_splicing or not s.is_cssh():
        return None
    try:
        c = CsshSystem.from_system(s)
    except (CompleteError, GrammarError):
        return None
    return c if complete_check(c)[0] else None


def _marked_certificate(m: MarkedSystem) -> dict:
    comps = []
    for c in marked_decompose(m):
        entry = {"letters": "".join(sorted(c.letters)), "transitive": c.is_transitive()}
        if c.is_transitive() and len(c.letters) <= 12:
            entry["diameter"], entry["local_diameter"] = marked_diameters(c)
        comps.append(entry)
    v = marked_is_regular(m)
    return {"text": v.certificate(), "p4": list(v.p4) if v.p4 else None, "components": comps}


def _rule_free(s: SplicingSystem) -> bool:
    # nothing can be spliced, so the language is the (finite) initial set
    return not s.rules and not s.self_splicing


def _initial_dfa(s: SplicingSystem) -> fa.Dfa:
    return fa.finite_dfa(_lin(s.initial | s.dropped_initial), s.alphabet)


def decide(s: SplicingSystem) -> Decision:
    s = normalize(s)
    if _rule_free(s) and not is_marked(s):
        return Decision(REGULAR, "finite", {"text": "no applicable rule: the language is the initial set"},
                        automaton=_initial_dfa(s))
    if _is_unary(s):
        form = unary_closed_form(s)
        cert = {"text": str(form)}
        if isinstance(form, UnaryForm):
            cert.update(L1=sorted(form.L1), n=form.n, p=form.p, r=form.r, G=sorted(form.G),
                        residues=list(form.residues))
        else:
            cert.update(finite=sorted(form.exponents))
        return Decision(REGULAR, "unary", cert, automaton=_unary_dfa(form, min(s.alphabet)))
    plain = s.replace(self_splicing=False) if s.kind is Kind.CIRCULAR else s
    if is_marked(plain):
        m = MarkedSystem.from_system(plain)
        if s.self_splicing:
            return Decision(REGULAR, "marked-self-splicing",
                            {"text": "marked systems with self-splicing always generate regular languages"},
                            graph=m)
        cert = _marked_certificate(m)
        verdict = REGULAR if cert["p4"] is None else NOT_REGULAR
        return Decision(verdict, "marked", cert, graph=m)
    if s.kind is Kind.CIRCULAR and not s.self_splicing and s.is_cssh():
        try:
            red, flipped = reduce_any(s)
        except (MarkedError, GrammarError):
            red = None
        if red is not None:
            cert = _marked_certificate(red.marked)
            cert["decoration"] = {c: d for c, d in red.decoration}
            cert["reversed"] = flipped
            verdict = REGULAR if cert["p4"] is None else NOT_REGULAR
            return Decision(verdict, "extended-marked", cert, graph=red.marked)
    c = _complete_view(s)
    if c is not None:
        u = complete_is_regular(c)
        cert = {"text": u.certificate(), "positions": list(c.positions)}
        if u.unavoidable:
            cert["k0"] = u.k0
        else:
            cert.update(prefix=u.prefix, cycle=u.cycle)
        return Decision(REGULAR if u.unavoidable else NOT_REGULAR, "complete", cert)
    note = OPEN_NOTE if s.kind is Kind.CIRCULAR else OTHER_NOTE.format(kind=s.kind.value)
    return Decision(UNKNOWN, "none", {"text": note})


def exact_automaton(s: SplicingSystem) -> fa.Dfa | None:
    """Automaton for ``L(s)`` (``Lin(L(s))`` if circular) when a characterization gives one."""
    s = normalize(s)
    if _is_unary(s):
        return _unary_dfa(unary_closed_form(s), min(s.alphabet))
    if _rule_free(s):
        return _initial_dfa(s)
    if s.kind is not Kind.CIRCULAR or s.self_splicing or not s.is_cssh():
        return None
    if is_marked(s):
        m = MarkedSystem.from_system(s)
        if marked_is_regular(m).regular:
            return marked_automaton(m).with_alphabet(s.alphabet)
        return None
    try:
        red, flipped = reduce_any(s)
    except (MarkedError, GrammarError):
        return None
    if not marked_is_regular(red.marked).regular:
        return None
    d = red.lift_dfa(marked_automaton(red.marked))
    return fa.reverse_dfa(d) if flipped else d


# -- bounded languages and membership ---------------------------------------------------

@dataclass
class Bounded:
    words: set[str]
    exact: bool
    method: str


def _compilable(s: SplicingSystem) -> bool:
    if s.kind is Kind.FLAT:
        return check_alphabetic(s)
    if s.kind is Kind.CIRCULAR and not s.self_splicing and s.is_cssh():
        return cssh_positions(s) in ((1, 3), (2, 4))
    return False


def _lin(words) -> set[str]:
    out: set[str] = set()
    for w in words:
        out.update(w.linearizations() if isinstance(w, CircWord) else [w])
    return out


def bounded_language(s: SplicingSystem, max_len: int, rounds: int = 10_000) -> Bounded:
    """Words of ``L(s)`` (linearized when circular) up to ``max_len``."""
    s = normalize(s)
    d = exact_automaton(s)
    if d is not None:
        return Bounded(set(d.words(max_len)), True, "automaton")
    if _compilable(s):
        return Bounded(grammar_enumerate(compile_system(s), max_len), True, "grammar")
    res = generate(s, GenerationBudget(max_rounds=rounds, work_len=max(max_len, 1), report_len=max(max_len, 1)))
    return Bounded(_lin(res.words), res.complete, "generation")


@dataclass
class Membership:
    member: bool | None
    method: str


def member(s: SplicingSystem, w: str, budget: GenerationBudget | None = None) -> Membership:
    """Is ``w`` in ``L(s)``?  For circular systems ``w`` is any linearization."""
    s = normalize(s)
    bad = set(w) - s.alphabet
    if bad:
        return Membership(False, "alphabet")
    d = exact_automaton(s)
    if d is not None:
        return Membership(d.accepts(w), "automaton")
    if _compilable(s):
        g = compile_system(s)
        return Membership(set(w) <= g.terminals and cyk_member(g, w), "grammar")
    if s.kind is Kind.FLAT or (s.kind is Kind.CIRCULAR and not s.self_splicing):
        target = CircWord.of(w) if s.circular else w
        return Membership(derives(s, target), "backward")
    if budget is None:
        budget = GenerationBudget(max_rounds=64, work_len=max(len(w), 1) * 2, report_len=max(len(w), 1) * 2)
    res = generate(s, budget)
    target = CircWord.of(w) if s.circular else w
    if target in res.words:
        return Membership(True, "generation")
    if res.complete and len(w) <= budget.report_len:
        return Membership(False, "generation")
    return Membership(None, "generation")


# -- comparison with a regular expression ------------------------------------------------

EQUAL_EXACT = "EQUAL_EXACT"
DIFFER = "DIFFER"
BOUNDED_AGREE = "BOUNDED_AGREE"


@dataclass
class Comparison:
    verdict: str
    witness: str | None
    differences: list[str]
    bound: int
    note: str = ""
    automaton: fa.Dfa | None = None


def equal(s: SplicingSystem, expr: str, max_len: int = 8) -> Comparison:
    """Compare ``L(s)`` (``Lin(L(s))`` if circular) with a regular expression."""
    s = normalize(s)
    r = fa.regex_to_dfa(expr, s.alphabet)
    alphabet = sorted(set(s.alphabet) | set(r.alphabet))
    r = r.with_alphabet(alphabet)
    d = exact_automaton(s)
    if d is not None:
        d = d.with_alphabet(alphabet)
        diff = fa.symmetric_difference(d, r)
        witness = fa.counterexample(d, r)
        if witness is None:
            return Comparison(EQUAL_EXACT, None, [], max_len, "compared minimal automata", d)
        return Comparison(DIFFER, witness, list(diff.words(max_len)), max_len,
                          "compared minimal automata", d)
    got = bounded_language(s, max_len)
    want = set(r.words(max_len))
    missing = want - got.words
    extra = got.words - want
    diffs = shortlex(missing | extra)
    if got.exact and diffs:
        return Comparison(DIFFER, diffs[0], diffs, max_len, f"exact up to length {max_len} ({got.method})")
    if extra:
        return Comparison(DIFFER, shortlex(extra)[0], shortlex(extra), max_len,
                          "generated words outside the expression")
    if diffs:
        return Comparison(UNKNOWN, None, diffs, max_len,
                          "generation is not exact for this system; missing words may appear later")
    dec = decide(s)
    if dec.verdict == NOT_REGULAR:
        return Comparison(DIFFER, None, [], max_len,
                          f"agree up to length {max_len} but the language is not regular ({dec.certificate['text']})")
    note = f"agree up to length {max_len} ({got.method}{'' if got.exact else ', not exact'})"
    return Comparison(BOUNDED_AGREE, None, [], max_len, note)
