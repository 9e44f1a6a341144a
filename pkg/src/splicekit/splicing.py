"""Splicing rules, systems, single-step operations and the iterated engine.

Five kinds of systems are supported:

``linear``
    Paun rules ``u1#u2$u3#u4`` on linear words (2-splicing by default).
``circular``
    Paun circular splicing; optional self-splicing.
``circular-head``
    Head's triples ``(p, x, q)``; two triples compose when their crossings
    ``x`` agree.
``circular-pixton``
    Pixton rules ``(alpha, alpha'; beta)`` paired with an explicit
    ``beta'`` for the mirrored rule.
``flat``
    Flat splicing: a whole word is inserted between two handles.

Languages are generated under a :class:`GenerationBudget`; the result says
whether the last round was a fixpoint and whether that fixpoint implies
completeness below the report length.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Union

from .words import (
    CircWord,
    circ_factors,
    count_in,
    distinct_rotations,
    format_word,
    occurrences,
    shortlex,
)


class Kind(str, Enum):
    LINEAR = "linear"
    CIRCULAR = "circular"
    HEAD = "circular-head"
    PIXTON = "circular-pixton"
    FLAT = "flat"

    @property
    def circular(self) -> bool:
        return self in (Kind.CIRCULAR, Kind.HEAD, Kind.PIXTON)


class SystemError_(ValueError):
    """Malformed splicing system."""


class CrossingMismatch(ValueError):
    pass


class NotNormalized(ValueError):
    pass


def _w(s: str) -> str:
    return s or "_"


@dataclass(frozen=True, order=True)
class LinearRule:
    """Paun rule ``u1#u2$u3#u4``; the sites are ``u1u2`` and ``u3u4``."""

    u1: str
    u2: str
    u3: str
    u4: str

    @property
    def sites(self) -> tuple[str, str]:
        return self.u1 + self.u2, self.u3 + self.u4

    def mirrored(self) -> "LinearRule":
        return LinearRule(self.u3, self.u4, self.u1, self.u2)

    def symbols(self) -> set[str]:
        return set(self.u1 + self.u2 + self.u3 + self.u4)

    def __str__(self):
        return f"{_w(self.u1)} # {_w(self.u2)} $ {_w(self.u3)} # {_w(self.u4)}"


@dataclass(frozen=True, order=True)
class FlatRule:
    """Flat rule with handles ``alpha, beta`` (host) and ``gamma, delta`` (guest)."""

    alpha: str
    beta: str
    gamma: str
    delta: str

    def is_alphabetic(self) -> bool:
        return all(len(h) <= 1 for h in (self.alpha, self.beta, self.gamma, self.delta))

    def symbols(self) -> set[str]:
        return set(self.alpha + self.beta + self.gamma + self.delta)

    def __str__(self):
        return f"{_w(self.alpha)} | {_w(self.beta)} $ {_w(self.gamma)} | {_w(self.delta)}"


@dataclass(frozen=True, order=True)
class HeadTriple:
    p: str
    x: str
    q: str

    def symbols(self) -> set[str]:
        return set(self.p + self.x + self.q)

    def __str__(self):
        return f"{_w(self.p)} , {_w(self.x)} , {_w(self.q)}"


@dataclass(frozen=True, order=True)
class PixtonRule:
    """Pixton rule ``(alpha, alpha'; beta)`` with the paired ``beta'``."""

    alpha: str
    alpha_prime: str
    beta: str
    beta_prime: str

    def symbols(self) -> set[str]:
        return set(self.alpha + self.alpha_prime + self.beta + self.beta_prime)

    def __str__(self):
        return (f"{_w(self.alpha)} , {_w(self.alpha_prime)} ; "
                f"{_w(self.beta)} ; {_w(self.beta_prime)}")


Rule = Union[LinearRule, FlatRule, HeadTriple, PixtonRule]

_RULE_TYPE = {
    Kind.LINEAR: LinearRule,
    Kind.CIRCULAR: LinearRule,
    Kind.HEAD: HeadTriple,
    Kind.PIXTON: PixtonRule,
    Kind.FLAT: FlatRule,
}


@dataclass(frozen=True)
class SplicingSystem:
    kind: Kind
    alphabet: frozenset[str]
    initial: frozenset
    rules: tuple
    self_splicing: bool = False
    one_splicing: bool = False
    normalized: bool = False
    # set by normalize(): initial words removed because they cannot take part
    # in any splicing (still members of the language)
    dropped_initial: frozenset = frozenset()
    dropped_rules: tuple = ()

    def __post_init__(self):
        kind = Kind(self.kind)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "rules", tuple(self.rules))
        if any(len(a) != 1 for a in self.alphabet):
            raise SystemError_("alphabet symbols must be single characters")
        if not self.initial and not self.normalized:
            raise SystemError_("the initial set must be nonempty")
        for w in self.initial | self.dropped_initial:
            if kind.circular != isinstance(w, CircWord):
                what = "circular" if kind.circular else "linear"
                raise SystemError_(f"initial word {format_word(w)} is not {what}")
            rep = w.rep if isinstance(w, CircWord) else w
            bad = set(rep) - self.alphabet
            if bad:
                raise SystemError_(f"initial word {format_word(w)} uses {sorted(bad)} outside the alphabet")
        rtype = _RULE_TYPE[kind]
        for r in self.rules:
            if not isinstance(r, rtype):
                raise SystemError_(f"rule {r} does not fit a {kind.value} system")
            bad = r.symbols() - self.alphabet
            if bad:
                raise SystemError_(f"rule {r} uses {sorted(bad)} outside the alphabet")
        if self.self_splicing and kind is not Kind.CIRCULAR:
            raise SystemError_("self-splicing only applies to circular Paun systems")
        if self.one_splicing and kind is not Kind.LINEAR:
            raise SystemError_("one-splicing only applies to linear systems")

    @property
    def circular(self) -> bool:
        return self.kind.circular

    def sites(self) -> set[str]:
        out = set()
        for r in self.rules:
            if isinstance(r, LinearRule):
                out.update(r.sites)
        return out

    def is_cssh(self) -> bool:
        """Circular Paun system whose sites are all single letters."""
        return (self.kind is Kind.CIRCULAR and bool(self.rules)
                and all(len(s) == 1 for r in self.rules for s in r.sites))

    def replace(self, **changes) -> "SplicingSystem":
        return dataclasses.replace(self, **changes)


# -- single steps ----------------------------------------------------------------

def linear_step(r: LinearRule, x: str, y: str) -> set[tuple[str, str]]:
    """All pairs ``(x1 u1 u4 y2, y1 u3 u2 x2)`` over the factorizations of x and y."""
    s1, s2 = r.sites
    out = set()
    for i in occurrences(x, s1):
        x1, x2 = x[:i], x[i + len(s1):]
        for j in occurrences(y, s2):
            y1, y2 = y[:j], y[j + len(s2):]
            out.add((x1 + r.u1 + r.u4 + y2, y1 + r.u3 + r.u2 + x2))
    return out


def flat_step(r: FlatRule, u: str, v: str) -> set[str]:
    """Insert ``v`` into ``u`` at every cut ``x alpha . beta y``."""
    if len(v) < len(r.gamma) + len(r.delta):
        return set()
    if not (v.startswith(r.gamma) and v.endswith(r.delta)):
        return set()
    out = set()
    for i in occurrences(u, r.alpha + r.beta):
        c = i + len(r.alpha)
        out.add(u[:c] + v + u[c:])
    return out


def _shaped(w: CircWord, head: str, tail: str) -> list[str]:
    """Rotations of ``w`` of the form ``head . x . tail`` (no overlap)."""
    need = len(head) + len(tail)
    return [r for r in distinct_rotations(w.rep)
            if len(r) >= need and r.startswith(head) and r.endswith(tail)]


def circular_step(r: LinearRule, w1: CircWord, w2: CircWord) -> set[CircWord]:
    """Paun circular splicing: ``~u2 x u1`` and ``~u4 y u3`` give ``~u2 x u1 u4 y u3``."""
    firsts = _shaped(w1, r.u2, r.u1)
    if not firsts:
        return set()
    seconds = _shaped(w2, r.u4, r.u3)
    return {CircWord.of(a + b) for a in firsts for b in seconds}


def self_splice_step(r: LinearRule, w: CircWord) -> set[tuple[CircWord, CircWord]]:
    """``~x u1 u2 y u3 u4`` splits into ``(~u4 x u1, ~u2 y u3)``."""
    s1, s2 = r.sites
    out = set()
    for rho in distinct_rotations(w.rep):
        if len(rho) < len(s2) or not rho.endswith(s2):
            continue
        body = rho[:len(rho) - len(s2)]
        for i in occurrences(body, s1):
            x, y = body[:i], body[i + len(s1):]
            out.add((CircWord.of(r.u4 + x + r.u1), CircWord.of(r.u2 + y + r.u3)))
    return out


def head_circ_step(t1: HeadTriple, t2: HeadTriple, w1: CircWord, w2: CircWord) -> set[CircWord]:
    """``~y p x q`` and ``~z u x v`` give ``~y p x v z u x q``."""
    if t1.x != t2.x:
        raise CrossingMismatch(f"crossings differ: {t1.x!r} vs {t2.x!r}")
    site1 = t1.p + t1.x + t1.q
    site2 = t2.p + t2.x + t2.q
    out = set()
    for r1 in _shaped(w1, site1, ""):
        y = r1[len(site1):]
        for r2 in _shaped(w2, site2, ""):
            z = r2[len(site2):]
            out.add(CircWord.of(t1.p + t1.x + t2.q + z + t2.p + t2.x + t1.q + y))
    return out


def pixton_circ_step(r: PixtonRule, w1: CircWord, w2: CircWord) -> set[CircWord]:
    """``~alpha eps`` and ``~alpha' eps'`` give ``~eps beta eps' beta'``."""
    out = set()
    for r1 in _shaped(w1, r.alpha, ""):
        eps = r1[len(r.alpha):]
        for r2 in _shaped(w2, r.alpha_prime, ""):
            eps2 = r2[len(r.alpha_prime):]
            out.add(CircWord.of(eps + r.beta + eps2 + r.beta_prime))
    return out


# -- normalization -----------------------------------------------------------------

def symmetric_closure(rules: Iterable[LinearRule]) -> tuple[LinearRule, ...]:
    out = set(rules)
    out |= {r.mirrored() for r in out}
    return tuple(sorted(out))


def _is_empty_word(w) -> bool:
    return len(w) == 0


def normalize(s: SplicingSystem) -> SplicingSystem:
    """Bring ``s`` into the form the engines expect.

    The empty word is removed from the initial set.  Circular Paun rules
    are closed under ``u1#u2$u3#u4 -> u3#u4$u1#u2``.  For systems whose
    sites are single letters, rules whose sites never occur in the initial
    words are dropped, and so are initial words containing no site letter;
    the latter are recorded in ``dropped_initial``.
    """
    if s.normalized:
        return s
    initial = {w for w in s.initial if not _is_empty_word(w)}
    rules = s.rules
    dropped_initial: set = set(s.dropped_initial)
    dropped_rules: list = list(s.dropped_rules)
    if s.kind is Kind.CIRCULAR:
        rules = symmetric_closure(rules)
        if s.is_cssh():
            facts = [circ_factors(w) for w in initial]
            useful = []
            for r in rules:
                a, b = r.sites
                if any(a in f for f in facts) and any(b in f for f in facts):
                    useful.append(r)
                else:
                    dropped_rules.append(r)
            rules = tuple(useful)
            site_letters = {x for r in rules for x in r.sites}
            keep = {w for w in initial if count_in(w.rep, site_letters) > 0}
            dropped_initial |= initial - keep
            initial = keep
    else:
        rules = tuple(sorted(set(rules)))
    return s.replace(initial=frozenset(initial), rules=rules, normalized=True,
                     dropped_initial=frozenset(dropped_initial),
                     dropped_rules=tuple(sorted(set(dropped_rules))))


# -- iterated generation ----------------------------------------------------------

@dataclass(frozen=True)
class GenerationBudget:
    max_rounds: int = 64
    work_len: int = 10
    report_len: int | None = None

    def __post_init__(self):
        if self.report_len is None:
            object.__setattr__(self, "report_len", self.work_len)
        if self.max_rounds <= 0 or self.work_len <= 0:
            raise ValueError("budget must allow at least one round and positive word length")
        if self.report_len > self.work_len:
            raise ValueError("report_len must not exceed work_len")


@dataclass(frozen=True)
class GenerationResult:
    words: tuple
    rounds_used: int
    saturated: bool
    # saturated and the system never shortens words: the report is exact
    complete: bool
    # iterated Head/Pixton languages are an extension of the step definitions
    extension: bool = False
    dropped: tuple = ()

    def linearized(self) -> set[str]:
        out: set[str] = set()
        for w in self.words:
            out.update(w.linearizations() if isinstance(w, CircWord) else [w])
        return out


def _length_additive(s: SplicingSystem) -> bool:
    """Every output is exactly as long as its two inputs together."""
    if s.kind in (Kind.FLAT, Kind.HEAD):
        return True
    return s.kind is Kind.CIRCULAR and not s.self_splicing


def _never_shrinks(s: SplicingSystem) -> bool:
    if _length_additive(s):
        return True
    if s.kind is Kind.PIXTON:
        return all(len(r.beta) + len(r.beta_prime) >= len(r.alpha) + len(r.alpha_prime)
                   for r in s.rules)
    return False


def _pair_outputs(s: SplicingSystem, x, y) -> set:
    out = set()
    if s.kind is Kind.LINEAR:
        for r in s.rules:
            for w1, w2 in linear_step(r, x, y):
                out.add(w1)
                if not s.one_splicing:
                    out.add(w2)
    elif s.kind is Kind.FLAT:
        for r in s.rules:
            out |= flat_step(r, x, y)
    elif s.kind is Kind.CIRCULAR:
        for r in s.rules:
            out |= circular_step(r, x, y)
    elif s.kind is Kind.HEAD:
        for t1 in s.rules:
            for t2 in s.rules:
                if t1.x == t2.x:
                    out |= head_circ_step(t1, t2, x, y)
    elif s.kind is Kind.PIXTON:
        for r in s.rules:
            out |= pixton_circ_step(r, x, y)
    return out


def _single_outputs(s: SplicingSystem, x) -> set:
    out = set()
    if s.self_splicing:
        for r in s.rules:
            for a, b in self_splice_step(r, x):
                out.add(a)
                out.add(b)
    return out


def generate(s: SplicingSystem, budget: GenerationBudget) -> GenerationResult:
    """Iterate ``sigma`` on the initial set, keeping words up to ``work_len``.

    Round ``i`` only combines pairs involving a word first obtained in round
    ``i - 1``; older pairs were already tried.
    """
    if not s.normalized:
        raise NotNormalized("normalize the system before generating")
    limit = budget.work_len
    additive = _length_additive(s)
    known = {w for w in s.initial if len(w) <= limit}
    by_len: dict[int, list] = {}
    for w in known:
        by_len.setdefault(len(w), []).append(w)

    def one_round(frontier) -> set:
        fresh = set()
        for x in frontier:
            room = limit - len(x)
            if additive:
                partners = [y for n in range(0, room + 1) for y in by_len.get(n, ())]
            else:
                partners = [y for ys in by_len.values() for y in ys]
            for y in partners:
                fresh |= _pair_outputs(s, x, y)
                if y != x:
                    fresh |= _pair_outputs(s, y, x)
            fresh |= _single_outputs(s, x)
        return {w for w in fresh if len(w) <= limit and w not in known}

    frontier = set(known)
    rounds = 0
    saturated = False
    while True:
        fresh = one_round(frontier)
        if not fresh:
            saturated = True
            break
        if rounds == budget.max_rounds:
            break
        rounds += 1
        known |= fresh
        for w in fresh:
            by_len.setdefault(len(w), []).append(w)
        frontier = fresh
    report = [w for w in known | s.dropped_initial if len(w) <= budget.report_len]
    return GenerationResult(
        words=tuple(shortlex(report)),
        rounds_used=rounds,
        saturated=saturated,
        complete=saturated and _never_shrinks(s),
        extension=s.kind in (Kind.HEAD, Kind.PIXTON),
        dropped=tuple(shortlex(s.dropped_initial)),
    )


# -- membership by backward search ---------------------------------------------------

def derives(s: SplicingSystem, w: str | CircWord) -> bool:
    """Exact membership for flat systems and circular Paun systems without
    self-splicing.

    Both operations are length additive, so ``w`` is generated iff it is
    initial or splits into two strictly shorter generated words.
    """
    if not s.normalized:
        raise NotNormalized("normalize the system before testing membership")
    if s.kind is Kind.FLAT:
        return _flat_member(s, w)
    if s.kind is Kind.CIRCULAR and not s.self_splicing:
        if not isinstance(w, CircWord):
            w = CircWord.of(w)
        return _paun_member(s, w)
    raise ValueError(f"backward membership is not available for {s.kind.value} systems")


def _flat_member(s: SplicingSystem, w: str) -> bool:
    initial = s.initial | s.dropped_initial
    rules = s.rules

    @lru_cache(maxsize=None)
    def member(w: str) -> bool:
        if w in initial:
            return True
        n = len(w)
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                v = w[i:j]
                u = w[:i] + w[j:]
                if not u:
                    continue
                for r in rules:
                    if len(v) < len(r.gamma) + len(r.delta):
                        continue
                    if not (v.startswith(r.gamma) and v.endswith(r.delta)):
                        continue
                    if not (u[:i].endswith(r.alpha) and u[i:].startswith(r.beta)):
                        continue
                    if member(v) and member(u):
                        return True
        return False

    return member(w)


def _paun_member(s: SplicingSystem, w: CircWord) -> bool:
    initial = s.initial | s.dropped_initial
    rules = s.rules

    @lru_cache(maxsize=None)
    def member(c: CircWord) -> bool:
        if c in initial:
            return True
        for rho in distinct_rotations(c.rep):
            for k in range(1, len(rho)):
                p1, p2 = rho[:k], rho[k:]
                for r in rules:
                    if (len(p1) >= len(r.u1) + len(r.u2) and p1.startswith(r.u2)
                            and p1.endswith(r.u1) and len(p2) >= len(r.u3) + len(r.u4)
                            and p2.startswith(r.u4) and p2.endswith(r.u3)
                            and member(CircWord.of(p1)) and member(CircWord.of(p2))):
                        return True
        return False

    return member(w)
