"""Complete systems and pure unitary grammars.

A CSSH system (circular, every site a single letter) is described here by
the position type of its rules and the relation of letter pairs they
connect.  It is complete when that relation is all of ``A x A``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .automata import Unavoidability, is_unavoidable
from .grammar import cssh_positions
from .splicing import Kind, LinearRule, SplicingSystem, symmetric_closure
from .words import CircWord, lin, occurrences

POSITIONS = ((1, 3), (2, 4), (2, 3))


class CompleteError(ValueError):
    pass


def _rule(positions, a: str, b: str) -> LinearRule:
    if positions == (1, 3):
        return LinearRule(a, "", b, "")
    if positions == (2, 4):
        return LinearRule("", a, "", b)
    return LinearRule("", a, b, "")


@dataclass(frozen=True)
class CsshSystem:
    alphabet: frozenset[str]
    positions: tuple[int, int]
    pairs: frozenset[tuple[str, str]]
    initial: frozenset[CircWord]

    def __post_init__(self):
        if self.positions not in POSITIONS:
            raise CompleteError(f"positions must be one of {POSITIONS}")
        pairs = frozenset(self.pairs) | {(b, a) for a, b in self.pairs}
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "initial", frozenset(self.initial))
        for a, b in pairs:
            if a not in self.alphabet or b not in self.alphabet:
                raise CompleteError(f"pair ({a},{b}) leaves the alphabet")

    @classmethod
    def from_system(cls, s: SplicingSystem) -> "CsshSystem":
        if s.kind is not Kind.CIRCULAR or not s.is_cssh():
            raise CompleteError("not a circular system with one-letter sites")
        rules = symmetric_closure(s.rules)
        pos = cssh_positions(s.replace(rules=rules))
        pairs = set()
        for r in rules:
            if r.u1 and r.u4:
                # mirror of the (2,3) rule 1#u4$u1#1
                pairs.add((r.u4, r.u1))
            else:
                pairs.add((r.u1 + r.u2, r.u3 + r.u4))
        init = {w for w in s.initial | s.dropped_initial if len(w)}
        return cls(s.alphabet, pos, frozenset(pairs), frozenset(init))

    def to_system(self) -> SplicingSystem:
        rules = [_rule(self.positions, a, b) for a, b in sorted(self.pairs)]
        return SplicingSystem(Kind.CIRCULAR, self.alphabet, self.initial, rules)


def complete_check(s: CsshSystem) -> tuple[bool, tuple[int, int]]:
    full = all((a, b) in s.pairs for a in s.alphabet for b in s.alphabet)
    return full, s.positions


def cssh_reverse(s: CsshSystem) -> CsshSystem:
    """Reverse the initial words and swap positions (1,3) and (2,4)."""
    if s.positions == (2, 3):
        raise CompleteError("reversal maps (1,3) and (2,4) systems only")
    pos = (2, 4) if s.positions == (1, 3) else (1, 3)
    return CsshSystem(s.alphabet, pos, s.pairs, frozenset(w.reverse() for w in s.initial))


def as_13(s: CsshSystem) -> CsshSystem:
    """An equivalent (1,3) system.

    (2,4) goes through reversal.  A complete (2,3) system keeps its initial
    set: with every pair available, all three position types splice any
    rotation of one word onto any rotation of the other.
    """
    if s.positions == (1, 3):
        return s
    if s.positions == (2, 4):
        return cssh_reverse(s)
    if not complete_check(s)[0]:
        raise CompleteError("only complete (2,3) systems are converted")
    return CsshSystem(s.alphabet, (1, 3), s.pairs, s.initial)


def complete_is_regular(s: CsshSystem) -> Unavoidability:
    """Regular iff Lin(I) is unavoidable; the result carries k0 or a witness cycle."""
    if not complete_check(s)[0]:
        raise CompleteError("the system is not complete")
    t = as_13(s)
    return is_unavoidable(sorted(lin(t.initial)), sorted(t.alphabet))


# -- pure unitary grammars ---------------------------------------------------------

@dataclass(frozen=True)
class UnitaryGrammar:
    alphabet: frozenset[str]
    Y: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "Y", frozenset(self.Y))
        if any(not y for y in self.Y):
            raise CompleteError("the empty word cannot be a production")
        bad = set("".join(self.Y)) - self.alphabet
        if bad:
            raise CompleteError(f"letters {sorted(bad)} outside the alphabet")


def unitary_closure(u: UnitaryGrammar, maxlen: int) -> set[str]:
    """Iterated insertion closure of ``{1}``, cut at ``maxlen``."""
    seen = {""}
    frontier = [""]
    while frontier:
        nxt = []
        for w in frontier:
            for y in u.Y:
                if len(w) + len(y) > maxlen:
                    continue
                for i in range(len(w) + 1):
                    v = w[:i] + y + w[i:]
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
        frontier = nxt
    return seen


def unitary_member(u: UnitaryGrammar, w: str) -> bool:
    ys = sorted(u.Y)

    @lru_cache(maxsize=None)
    def member(w: str) -> bool:
        if not w:
            return True
        for y in ys:
            for i in occurrences(w, y):
                if member(w[:i] + w[i + len(y):]):
                    return True
        return False

    return member(w)


def unitary_of(words: Iterable[str], alphabet: Iterable[str]) -> UnitaryGrammar:
    return UnitaryGrammar(frozenset(alphabet), frozenset(words))
