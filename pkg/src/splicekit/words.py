"""Words, circular words and the small combinatorial helpers shared by the
rest of the package.

Linear words are plain ``str`` objects, one character per alphabet symbol,
with ``""`` as the empty word.  A circular word (a conjugacy class) is a
:class:`CircWord` holding the lexicographically least rotation of any
representative, so equality, hashing and ordering work directly on the
canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator

EMPTY = ""


def least_rotation_index(w: str) -> int:
    """Index ``k`` such that ``w[k:] + w[:k]`` is the least rotation of ``w``.

    Booth's algorithm, linear time.
    """
    n = len(w)
    if n == 0:
        return 0
    s = w + w
    fail = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        c = s[j]
        i = fail[j - k - 1]
        while i != -1 and c != s[k + i + 1]:
            if c < s[k + i + 1]:
                k = j - i - 1
            i = fail[i]
        if c != s[k + i + 1]:
            # here i == -1
            if c < s[k]:
                k = j
            fail[j - k] = -1
        else:
            fail[j - k] = i + 1
    return k


def least_rotation(w: str) -> str:
    k = least_rotation_index(w)
    return w[k:] + w[:k]


def rotations(w: str) -> list[str]:
    """All rotations of ``w`` in order of the cut position (duplicates kept)."""
    if not w:
        return [w]
    return [w[i:] + w[:i] for i in range(len(w))]


def distinct_rotations(w: str) -> list[str]:
    seen: dict[str, None] = {}
    for r in rotations(w):
        seen.setdefault(r, None)
    return list(seen)


@dataclass(frozen=True, order=True)
class CircWord:
    """Conjugacy class of a word, stored as its least rotation.

    Build instances with :func:`canonicalize` (or ``CircWord.of``); the
    constructor trusts ``rep`` to be canonical already.
    """

    rep: str

    @classmethod
    def of(cls, w: str) -> "CircWord":
        return cls(least_rotation(w))

    def __len__(self) -> int:
        return len(self.rep)

    def count(self, a: str) -> int:
        return self.rep.count(a)

    def alph(self) -> frozenset[str]:
        return frozenset(self.rep)

    def linearizations(self) -> list[str]:
        """The full linearization of this class (all distinct rotations)."""
        return distinct_rotations(self.rep)

    def reverse(self) -> "CircWord":
        return CircWord.of(self.rep[::-1])

    def __str__(self) -> str:
        return "^" + (self.rep or "_")


def canonicalize(w: str) -> CircWord:
    return CircWord.of(w)


def is_conjugate(x: str, y: str) -> bool:
    return len(x) == len(y) and (not x or y in x + x)


def factors(w: str) -> set[str]:
    """Nonempty factors of ``w``."""
    n = len(w)
    return {w[i:j] for i in range(n) for j in range(i + 1, n + 1)}


def circ_factors(w: str | CircWord) -> set[str]:
    """Nonempty factors of the rotations of ``w``.

    Every member has length at most ``len(w)``; a factor never wraps around
    the circle more than once.
    """
    if isinstance(w, CircWord):
        w = w.rep
    n = len(w)
    ww = w + w
    return {ww[i:i + k] for i in range(n) for k in range(1, n + 1)}


def reverse(w: str) -> str:
    return w[::-1]


def reverse_circ(c: CircWord) -> CircWord:
    return c.reverse()


def reverse_lang(words: Iterable[str]) -> set[str]:
    return {w[::-1] for w in words}


def alph(w: str) -> frozenset[str]:
    return frozenset(w)


def count_in(w: str, letters: Iterable[str]) -> int:
    """``|w|_X``: number of occurrences in ``w`` of letters from ``letters``."""
    letters = set(letters)
    return sum(1 for c in w if c in letters)


def occurrences(w: str, site: str) -> Iterator[int]:
    """Start positions of ``site`` in ``w`` (every position for the empty site)."""
    if not site:
        yield from range(len(w) + 1)
        return
    i = w.find(site)
    while i != -1:
        yield i
        i = w.find(site, i + 1)


def shortlex_key(w: str | CircWord) -> tuple[int, str]:
    rep = w.rep if isinstance(w, CircWord) else w
    return (len(rep), rep)


def shortlex(words: Iterable) -> list:
    return sorted(words, key=shortlex_key)


def all_words(alphabet: Iterable[str], max_len: int, min_len: int = 0) -> Iterator[str]:
    """Every word over ``alphabet`` with length in ``[min_len, max_len]``, shortlex order."""
    letters = sorted(set(alphabet))
    for n in range(min_len, max_len + 1):
        for t in product(letters, repeat=n):
            yield "".join(t)


def lin(circular: Iterable[CircWord]) -> set[str]:
    """Full linearization of a set of circular words."""
    out: set[str] = set()
    for c in circular:
        out.update(c.linearizations())
    return out


def circularize(words: Iterable[str]) -> set[CircWord]:
    return {CircWord.of(w) for w in words}


def format_word(w: str | CircWord) -> str:
    """Text form used in files and reports: ``_`` for empty, ``^`` for circular."""
    if isinstance(w, CircWord):
        return str(w)
    return w or "_"
