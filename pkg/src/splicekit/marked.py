"""Marked systems: initial words and sites are the letters themselves.

A marked system is an undirected graph on its letters, self-loops allowed;
an edge ``{a, b}`` stands for the rule ``a#1$b#1`` (and its mirror).
Regularity of the generated circular language is decided by looking for
an induced path on four vertices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable

from .automata import Dfa, cyclic_closure, dfa_from_function, finite_dfa, substitute, union
from .grammar import cssh_positions, reverse_system
from .splicing import Kind, LinearRule, SplicingSystem, normalize
from .words import CircWord, count_in


class MarkedError(ValueError):
    pass


class NotTransitive(MarkedError):
    pass


class NotRegular(MarkedError):
    pass


@dataclass(frozen=True)
class MarkedSystem:
    letters: frozenset[str]
    edges: frozenset[frozenset[str]]

    def __post_init__(self):
        object.__setattr__(self, "letters", frozenset(self.letters))
        object.__setattr__(self, "edges", frozenset(frozenset(e) for e in self.edges))
        for e in self.edges:
            if not 1 <= len(e) <= 2 or not e <= self.letters:
                raise MarkedError(f"bad edge {sorted(e)}")

    @classmethod
    def of(cls, letters: Iterable[str], pairs: Iterable[tuple[str, str]]) -> "MarkedSystem":
        return cls(frozenset(letters), frozenset(frozenset(p) for p in pairs))

    def adjacent(self, a: str, b: str) -> bool:
        return frozenset((a, b)) in self.edges

    def neighbours(self, a: str) -> set[str]:
        return {b for b in self.letters if b != a and self.adjacent(a, b)}

    def induced(self, subset: Iterable[str]) -> "MarkedSystem":
        j = frozenset(subset)
        return MarkedSystem(j, frozenset(e for e in self.edges if e <= j))

    def is_connected(self) -> bool:
        if not self.letters:
            return False
        first = min(self.letters)
        seen = {first}
        todo = [first]
        while todo:
            a = todo.pop()
            for b in self.neighbours(a):
                if b not in seen:
                    seen.add(b)
                    todo.append(b)
        return seen == set(self.letters)

    def is_transitive(self) -> bool:
        if not self.is_connected():
            return False
        if len(self.letters) > 1:
            return True
        (a,) = self.letters
        return self.adjacent(a, a)

    def to_system(self) -> SplicingSystem:
        rules = [LinearRule(min(e), "", max(e), "") for e in self.edges]
        return SplicingSystem(Kind.CIRCULAR, self.letters,
                              {CircWord(a) for a in self.letters}, rules)

    @classmethod
    def from_system(cls, s: SplicingSystem) -> "MarkedSystem":
        """Graph of a marked (1,3) or (2,4) circular system."""
        if s.kind is not Kind.CIRCULAR or s.self_splicing:
            raise MarkedError("a marked system is a circular system without self-splicing")
        words = {w for w in s.initial if len(w)}
        if {w.rep for w in words} != set(s.alphabet) or not all(len(w) == 1 for w in words):
            raise MarkedError("the initial set of a marked system is its alphabet")
        if not s.rules:
            return cls(frozenset(s.alphabet), frozenset())
        if not all(len(x) == 1 for r in s.rules for x in r.sites):
            raise MarkedError("marked systems have one-letter sites")
        if cssh_positions(s) not in ((1, 3), (2, 4)):
            raise MarkedError("marked systems use positions (1,3) or (2,4)")
        pairs = [(r.u1 + r.u2, r.u3 + r.u4) for r in s.rules]
        return cls.of(s.alphabet, pairs)

    def to_dot(self) -> str:
        lines = ["graph marked {"]
        for a in sorted(self.letters):
            lines.append(f'  "{a}";')
        for e in sorted(self.edges, key=lambda e: (min(e), max(e))):
            lines.append(f'  "{min(e)}" -- "{max(e)}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __str__(self):
        es = sorted((min(e), max(e)) for e in self.edges)
        return "{" + " ".join(sorted(self.letters)) + "} " + " ".join(f"{a}-{b}" for a, b in es)


def is_marked(s: SplicingSystem) -> bool:
    try:
        MarkedSystem.from_system(s)
    except (MarkedError, ValueError):
        return False
    return True


def marked_decompose(m: MarkedSystem) -> list[MarkedSystem]:
    """Connected components, in order of their least letter."""
    left = set(m.letters)
    out = []
    while left:
        a = min(left)
        comp = {a}
        todo = [a]
        while todo:
            x = todo.pop()
            for y in m.neighbours(x):
                if y not in comp:
                    comp.add(y)
                    todo.append(y)
        left -= comp
        out.append(m.induced(comp))
    return out


def _distances(m: MarkedSystem, a: str) -> dict[str, int]:
    # counts chain vertices: d(a, a) = 1, neighbours at 2
    dist = {a: 1}
    todo = deque([a])
    while todo:
        x = todo.popleft()
        for y in m.neighbours(x):
            if y not in dist:
                dist[y] = dist[x] + 1
                todo.append(y)
    return dist


def diameter(m: MarkedSystem) -> int:
    if not m.is_transitive():
        raise NotTransitive(f"{m} is not transitive")
    return max(max(_distances(m, a).values()) for a in m.letters)


def find_p4(m: MarkedSystem) -> tuple[str, str, str, str] | None:
    """An induced path a-b-c-d (loops ignored), least in sorted order."""
    for quad in combinations(sorted(m.letters), 4):
        for a, b, c, d in permutations(quad):
            if a > d:
                continue
            if (m.adjacent(a, b) and m.adjacent(b, c) and m.adjacent(c, d)
                    and not m.adjacent(a, c) and not m.adjacent(b, d) and not m.adjacent(a, d)):
                return a, b, c, d
    return None


def local_diameter_exhaustive(m: MarkedSystem) -> int:
    best = 0
    letters = sorted(m.letters)
    for k in range(1, len(letters) + 1):
        for j in combinations(letters, k):
            sub = m.induced(j)
            if sub.is_transitive():
                best = max(best, diameter(sub))
    return best


def marked_diameters(m: MarkedSystem) -> tuple[int, int]:
    """(global diameter, local diameter) of a transitive marked system."""
    if not m.is_transitive():
        raise NotTransitive(f"{m} is not transitive; decompose it first")
    delta = diameter(m)
    local = local_diameter_exhaustive(m)
    if (local >= 4) != (find_p4(m) is not None):
        raise AssertionError("local diameter and induced-path test disagree")
    return delta, local


@dataclass(frozen=True)
class MarkedVerdict:
    regular: bool
    p4: tuple[str, str, str, str] | None

    def certificate(self) -> str:
        return "-".join(self.p4) if self.p4 else "P4-free"


def marked_is_regular(m: MarkedSystem) -> MarkedVerdict:
    p4 = find_p4(m)
    return MarkedVerdict(p4 is None, p4)


def marked_automaton(m: MarkedSystem) -> Dfa:
    """Automaton for the full linearization of the generated language."""
    verdict = marked_is_regular(m)
    if not verdict.regular:
        raise NotRegular(f"induced path {verdict.certificate()}: the language is not regular")
    letters = sorted(m.letters)
    transitive = {}

    def ok(seen: frozenset) -> bool:
        if seen not in transitive:
            transitive[seen] = m.induced(seen).is_transitive()
        return transitive[seen]

    def step(state, a):
        seen, n = state
        return seen | {a}, min(n + 1, 2)

    def accept(state):
        seen, n = state
        return n == 1 or (n == 2 and ok(seen))

    return dfa_from_function(letters, (frozenset(), 0), step, accept)


# -- extended systems -----------------------------------------------------------------

@dataclass(frozen=True)
class ExtendedReduction:
    """Marked system over the site letters plus how to rebuild the original.

    ``decoration[c]`` is the initial word carrying ``c``, rotated to end
    with ``c``; ``extra`` holds initial words without any site letter.
    """

    marked: MarkedSystem
    decoration: tuple[tuple[str, str], ...]
    extra: frozenset[CircWord]
    alphabet: frozenset[str]

    def decorate(self, w: str) -> str:
        d = dict(self.decoration)
        return "".join(d[c] for c in w)

    def lift(self, words: Iterable[CircWord]) -> set[CircWord]:
        return {CircWord.of(self.decorate(w.rep)) for w in words} | set(self.extra)

    def lift_dfa(self, d: Dfa) -> Dfa:
        """Linearization automaton of the original system from the marked one."""
        alphabet = sorted(self.alphabet)
        image = substitute(d, dict(self.decoration), alphabet).determinize()
        out = cyclic_closure(image).determinize()
        if self.extra:
            lins = {r for w in self.extra for r in w.linearizations()}
            out = union(out, finite_dfa(lins, alphabet))
        return out


def extended_reduce(s: SplicingSystem) -> ExtendedReduction:
    """Reduce a (1,3) system whose initial words carry at most one site letter."""
    s = normalize(s)
    if not s.is_cssh() or cssh_positions(s) != (1, 3):
        raise MarkedError("extended reduction needs a (1,3) system with one-letter sites")
    sites = {x for r in s.rules for x in r.sites}
    deco: dict[str, str] = {}
    for w in sorted(s.initial):
        k = count_in(w.rep, sites)
        if k != 1:
            raise MarkedError(f"initial word {w} carries {k} site letters")
        c = next(x for x in w.rep if x in sites)
        if c in deco:
            raise MarkedError(f"site letter {c} occurs in two initial words; the reduction is ambiguous")
        i = w.rep.index(c)
        deco[c] = w.rep[i + 1:] + w.rep[:i + 1]
    pairs = [(r.u1, r.u3) for r in s.rules]
    marked = MarkedSystem.of(deco, pairs)
    return ExtendedReduction(marked, tuple(sorted(deco.items())), frozenset(s.dropped_initial),
                             frozenset(s.alphabet))


def is_extended_marked(s: SplicingSystem) -> bool:
    try:
        extended_reduce(s)
    except (MarkedError, ValueError):
        return False
    return True


def reduce_any(s: SplicingSystem) -> tuple[ExtendedReduction, bool]:
    """Extended reduction of a (1,3) or (2,4) system; flag tells whether it was reversed."""
    s = normalize(s)
    if s.is_cssh() and cssh_positions(s) == (2, 4):
        return extended_reduce(reverse_system(s)), True
    return extended_reduce(s), False
