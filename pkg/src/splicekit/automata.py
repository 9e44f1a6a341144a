"""Finite automata over single-character alphabets.

Dfa objects are always complete (an explicit sink is added where needed)
and immutable.  Besides the usual regular-language algebra this module
holds the three decision engines used by the splicing characterizations:

* :func:`cyclic_closure` -- the rotation closure ``{yx : xy in L}``;
* :func:`is_unavoidable` -- whether a finite factor set is unavoidable;
* :func:`is_constant` / :func:`find_constant` -- Schutzenberger constants.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Hashable, Iterable, Iterator

from . import regex as rx

EPS = None  # epsilon label in Nfa transitions


class AlphabetMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Nfa:
    """Nondeterministic automaton with integer states ``0..n_states-1``.

    ``delta`` maps ``(state, symbol)`` to a frozenset of successors; the
    symbol ``None`` labels epsilon moves.
    """

    n_states: int
    alphabet: tuple[str, ...]
    delta: dict
    initials: frozenset[int]
    finals: frozenset[int]

    def __post_init__(self):
        for (q, a), succ in self.delta.items():
            if not (0 <= q < self.n_states) or any(not 0 <= p < self.n_states for p in succ):
                raise ValueError(f"transition endpoint outside the state set: {q} -> {succ}")
            if a is not None and a not in self.alphabet:
                raise ValueError(f"transition symbol {a!r} not in alphabet")

    def eclose(self, states: Iterable[int]) -> frozenset[int]:
        stack = list(states)
        seen = set(stack)
        while stack:
            q = stack.pop()
            for p in self.delta.get((q, EPS), ()):
                if p not in seen:
                    seen.add(p)
                    stack.append(p)
        return frozenset(seen)

    def accepts(self, w: str) -> bool:
        cur = self.eclose(self.initials)
        for a in w:
            if a not in self.alphabet:
                return False
            cur = self.eclose(p for q in cur for p in self.delta.get((q, a), ()))
        return bool(cur & self.finals)

    def determinize(self) -> "Dfa":
        """Subset construction followed by minimization."""
        start = self.eclose(self.initials)

        def step(s, a):
            return self.eclose(p for q in s for p in self.delta.get((q, a), ()))

        return dfa_from_function(self.alphabet, start, step, lambda s: bool(s & self.finals))

    def to_dot(self, name: str = "nfa") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;"]
        for q in range(self.n_states):
            shape = "doublecircle" if q in self.finals else "circle"
            lines.append(f'  q{q} [shape={shape}];')
        for q in sorted(self.initials):
            lines.append(f"  start{q} [shape=point]; start{q} -> q{q};")
        for (q, a) in sorted(self.delta, key=lambda k: (k[0], "" if k[1] is None else k[1])):
            for p in sorted(self.delta[(q, a)]):
                label = "_" if a is None else a
                lines.append(f'  q{q} -> q{p} [label="{label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Dfa:
    """Complete deterministic automaton.

    ``delta[q][i]`` is the successor of state ``q`` on ``alphabet[i]``.
    """

    alphabet: tuple[str, ...]
    delta: tuple[tuple[int, ...], ...]
    initial: int
    finals: frozenset[int]
    _index: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        n = len(self.delta)
        if list(self.alphabet) != sorted(set(self.alphabet)):
            raise ValueError("alphabet must be sorted and duplicate free")
        if not 0 <= self.initial < n:
            raise ValueError("initial state out of range")
        for row in self.delta:
            if len(row) != len(self.alphabet) or any(not 0 <= p < n for p in row):
                raise ValueError("transition table is not total")
        object.__setattr__(self, "_index", {a: i for i, a in enumerate(self.alphabet)})

    @property
    def n_states(self) -> int:
        return len(self.delta)

    def step(self, q: int, a: str) -> int:
        return self.delta[q][self._index[a]]

    def run(self, q: int, w: str) -> int:
        idx = self._index
        for a in w:
            q = self.delta[q][idx[a]]
        return q

    def accepts(self, w: str) -> bool:
        if any(a not in self._index for a in w):
            return False
        return self.run(self.initial, w) in self.finals

    def __contains__(self, w: str) -> bool:
        return self.accepts(w)

    def reachable(self) -> set[int]:
        seen = {self.initial}
        stack = [self.initial]
        while stack:
            q = stack.pop()
            for p in self.delta[q]:
                if p not in seen:
                    seen.add(p)
                    stack.append(p)
        return seen

    def coaccessible(self) -> set[int]:
        preds: dict[int, set[int]] = {q: set() for q in range(self.n_states)}
        for q, row in enumerate(self.delta):
            for p in row:
                preds[p].add(q)
        seen = set(self.finals)
        stack = list(seen)
        while stack:
            q = stack.pop()
            for p in preds[q]:
                if p not in seen:
                    seen.add(p)
                    stack.append(p)
        return seen

    def useful(self) -> set[int]:
        return self.reachable() & self.coaccessible()

    def minimize(self) -> "Dfa":
        """Minimal complete Dfa, states numbered in breadth-first order."""
        reach = sorted(self.reachable())
        # Moore refinement on the reachable part
        block = {q: int(q in self.finals) for q in reach}
        n_blocks = len(set(block.values()))
        while True:
            sigs = {}
            new_block = {}
            for q in reach:
                sig = (block[q],) + tuple(block[p] for p in self.delta[q])
                new_block[q] = sigs.setdefault(sig, len(sigs))
            if len(sigs) == n_blocks:
                break
            block, n_blocks = new_block, len(sigs)
        rows = {}
        for q in reach:
            rows.setdefault(block[q], tuple(block[p] for p in self.delta[q]))
        finals = {block[q] for q in reach if q in self.finals}
        return _renumber(self.alphabet, rows, block[self.initial], finals)

    def canonical_key(self) -> tuple:
        m = self.minimize()
        return (m.alphabet, m.delta, m.initial, tuple(sorted(m.finals)))

    def with_alphabet(self, alphabet: Iterable[str]) -> "Dfa":
        """Same language over a larger alphabet (new symbols lead to a sink)."""
        alphabet = tuple(sorted(set(alphabet)))
        if not set(self.alphabet) <= set(alphabet):
            raise AlphabetMismatch(f"{alphabet} does not contain {self.alphabet}")
        if alphabet == self.alphabet:
            return self
        sink = self.n_states
        rows = []
        for q in range(self.n_states + 1):
            if q == sink:
                rows.append(tuple(sink for _ in alphabet))
            else:
                rows.append(tuple(self.step(q, a) if a in self._index else sink for a in alphabet))
        return Dfa(alphabet, tuple(rows), self.initial, self.finals)

    def to_nfa(self) -> Nfa:
        delta = {}
        for q, row in enumerate(self.delta):
            for i, p in enumerate(row):
                delta[(q, self.alphabet[i])] = frozenset([p])
        return Nfa(self.n_states, self.alphabet, delta, frozenset([self.initial]), self.finals)

    def words(self, max_len: int, min_len: int = 0) -> Iterator[str]:
        """Accepted words up to ``max_len``, in shortlex order."""
        useful = self.coaccessible()
        level = [("", self.initial)] if self.initial in useful else []
        for n in range(max_len + 1):
            if n >= min_len:
                for w, q in level:
                    if q in self.finals:
                        yield w
            nxt = []
            for w, q in level:
                for i, a in enumerate(self.alphabet):
                    p = self.delta[q][i]
                    if p in useful:
                        nxt.append((w + a, p))
            level = nxt

    def to_dot(self, name: str = "dfa") -> str:
        useful = self.useful()
        lines = [f"digraph {name} {{", "  rankdir=LR;", "  start [shape=point];"]
        for q in range(self.n_states):
            if q in useful or q == self.initial:
                shape = "doublecircle" if q in self.finals else "circle"
                lines.append(f"  q{q} [shape={shape}];")
        lines.append(f"  start -> q{self.initial};")
        for q in range(self.n_states):
            if q not in useful:
                continue
            for i, p in enumerate(self.delta[q]):
                if p in useful:
                    lines.append(f'  q{q} -> q{p} [label="{self.alphabet[i]}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _renumber(alphabet, rows: dict, initial, finals) -> Dfa:
    order = {initial: 0}
    queue = deque([initial])
    while queue:
        q = queue.popleft()
        for p in rows[q]:
            if p not in order:
                order[p] = len(order)
                queue.append(p)
    delta = [None] * len(order)
    for q, k in order.items():
        delta[k] = tuple(order[p] for p in rows[q])
    return Dfa(tuple(alphabet), tuple(delta), 0, frozenset(order[q] for q in finals if q in order))


def dfa_from_function(
    alphabet: Iterable[str],
    start: Hashable,
    step: Callable[[Hashable, str], Hashable],
    accept: Callable[[Hashable], bool],
    minimize: bool = True,
) -> Dfa:
    """Explore the states reachable from ``start`` under ``step``."""
    alphabet = tuple(sorted(set(alphabet)))
    ids = {start: 0}
    keys = [start]
    rows = []
    i = 0
    while i < len(keys):
        s = keys[i]
        row = []
        for a in alphabet:
            t = step(s, a)
            if t not in ids:
                ids[t] = len(keys)
                keys.append(t)
            row.append(ids[t])
        rows.append(tuple(row))
        i += 1
    d = Dfa(alphabet, tuple(rows), 0, frozenset(ids[s] for s in keys if accept(s)))
    return d.minimize() if minimize else d


# -- construction ----------------------------------------------------------

def regex_to_nfa(node: rx.Node, alphabet: Iterable[str]) -> Nfa:
    """Thompson construction."""
    alphabet = tuple(sorted(set(alphabet)))
    delta: dict = {}
    count = 0

    def new():
        nonlocal count
        count += 1
        return count - 1

    def edge(q, a, p):
        delta.setdefault((q, a), set()).add(p)

    def build(n) -> tuple[int, int]:
        s, f = new(), new()
        if isinstance(n, rx.Eps):
            edge(s, EPS, f)
        elif isinstance(n, rx.Sym):
            edge(s, n.name, f)
        elif isinstance(n, rx.Cat):
            prev = s
            for item in n.items:
                a, b = build(item)
                edge(prev, EPS, a)
                prev = b
            edge(prev, EPS, f)
        elif isinstance(n, rx.Alt):
            for item in n.items:
                a, b = build(item)
                edge(s, EPS, a)
                edge(b, EPS, f)
        elif isinstance(n, rx.Star):
            a, b = build(n.item)
            edge(s, EPS, f)
            edge(s, EPS, a)
            edge(b, EPS, a)
            edge(b, EPS, f)
        else:
            raise TypeError(n)
        return s, f

    s, f = build(node)
    return Nfa(count, alphabet, {k: frozenset(v) for k, v in delta.items()},
               frozenset([s]), frozenset([f]))


def regex_to_dfa(expr: str | rx.Node, alphabet: Iterable[str] = ()) -> Dfa:
    """Minimal complete Dfa for ``expr``.

    The alphabet is the union of ``alphabet`` and the symbols of ``expr``.
    """
    node = rx.parse(expr) if isinstance(expr, str) else expr
    letters = set(alphabet) | node.symbols()
    return regex_to_nfa(node, letters).determinize()


def finite_dfa(words: Iterable[str], alphabet: Iterable[str] = ()) -> Dfa:
    words = set(words)
    letters = set(alphabet).union(*words) if words else set(alphabet)
    prefixes = {w[:i] for w in words for i in range(len(w) + 1)}
    sink = object()

    def step(s, a):
        if s is sink or s + a not in prefixes:
            return sink
        return s + a

    return dfa_from_function(letters, "", step, lambda s: s is not sink and s in words)


def universal_dfa(alphabet: Iterable[str], include_empty: bool = True) -> Dfa:
    letters = tuple(sorted(set(alphabet)))
    return dfa_from_function(letters, 0, lambda s, a: 1, lambda s: include_empty or s == 1)


# -- algebra ---------------------------------------------------------------

def _check_alphabets(a: Dfa, b: Dfa) -> None:
    if a.alphabet != b.alphabet:
        raise AlphabetMismatch(f"alphabets differ: {a.alphabet} vs {b.alphabet}")


def product(a: Dfa, b: Dfa, op: Callable[[bool, bool], bool]) -> Dfa:
    _check_alphabets(a, b)
    return dfa_from_function(
        a.alphabet,
        (a.initial, b.initial),
        lambda s, c: (a.step(s[0], c), b.step(s[1], c)),
        lambda s: op(s[0] in a.finals, s[1] in b.finals),
    )


def intersect(a: Dfa, b: Dfa) -> Dfa:
    return product(a, b, lambda x, y: x and y)


def union(a: Dfa, b: Dfa) -> Dfa:
    return product(a, b, lambda x, y: x or y)


def difference(a: Dfa, b: Dfa) -> Dfa:
    return product(a, b, lambda x, y: x and not y)


def symmetric_difference(a: Dfa, b: Dfa) -> Dfa:
    return product(a, b, lambda x, y: x != y)


def complement(a: Dfa) -> Dfa:
    return Dfa(a.alphabet, a.delta, a.initial,
               frozenset(q for q in range(a.n_states) if q not in a.finals)).minimize()


def is_empty(a: Dfa) -> bool:
    return not (a.reachable() & a.finals)


def is_finite(a: Dfa) -> bool:
    """True iff the trim part of ``a`` has no cycle."""
    useful = a.useful()
    color: dict[int, int] = {}

    def has_cycle(q) -> bool:
        color[q] = 1
        for p in a.delta[q]:
            if p not in useful:
                continue
            c = color.get(p, 0)
            if c == 1 or (c == 0 and has_cycle(p)):
                return True
        color[q] = 2
        return False

    return not any(q not in color and has_cycle(q) for q in useful)


def language_size(a: Dfa) -> int | None:
    """Number of accepted words, or ``None`` when the language is infinite."""
    if not is_finite(a):
        return None
    useful = a.useful()
    memo: dict[int, int] = {}

    def count(q):
        if q not in memo:
            memo[q] = int(q in a.finals) + sum(count(p) for p in a.delta[q] if p in useful)
        return memo[q]

    return count(a.initial) if a.initial in useful else 0


def shortest_word(a: Dfa) -> str | None:
    seen = {a.initial: ""}
    queue = deque([a.initial])
    while queue:
        q = queue.popleft()
        if q in a.finals:
            return seen[q]
        for i, p in enumerate(a.delta[q]):
            if p not in seen:
                seen[p] = seen[q] + a.alphabet[i]
                queue.append(p)
    return None


def dfa_equal(a: Dfa, b: Dfa) -> bool:
    _check_alphabets(a, b)
    return a.canonical_key() == b.canonical_key()


def counterexample(a: Dfa, b: Dfa) -> str | None:
    """Shortest (then least) word in exactly one of the two languages."""
    d = symmetric_difference(a, b)
    for w in d.words(d.n_states + 1):
        return w
    return None


def reverse_nfa(a: Dfa) -> Nfa:
    delta: dict = {}
    for q, row in enumerate(a.delta):
        for i, p in enumerate(row):
            delta.setdefault((p, a.alphabet[i]), set()).add(q)
    return Nfa(a.n_states, a.alphabet, {k: frozenset(v) for k, v in delta.items()},
               a.finals, frozenset([a.initial]))


def reverse_dfa(a: Dfa) -> Dfa:
    return reverse_nfa(a).determinize()


def substitute(a: Dfa, images: dict[str, str], alphabet: Iterable[str] = ()) -> Nfa:
    """Nfa for the image of L(a) under the morphism ``c -> images[c]``."""
    letters = set(alphabet).union(*images.values()) if images else set(alphabet)
    letters = tuple(sorted(letters))
    n = a.n_states
    delta: dict = {}
    count = n
    for q, row in enumerate(a.delta):
        for i, p in enumerate(row):
            img = images.get(a.alphabet[i])
            if img is None:
                continue
            if not img:
                delta.setdefault((q, EPS), set()).add(p)
                continue
            prev = q
            for j, c in enumerate(img):
                nxt = p if j == len(img) - 1 else count
                if nxt == count:
                    count += 1
                delta.setdefault((prev, c), set()).add(nxt)
                prev = nxt
    return Nfa(count, letters, {k: frozenset(v) for k, v in delta.items()},
               frozenset([a.initial]), a.finals)


# -- cyclic closure ----------------------------------------------------------

def cyclic_closure(d: Dfa) -> Nfa:
    """Nfa accepting ``{yx : xy in L(d)}``.

    For every state ``q`` the automaton reads a word of the right language
    of ``q`` and then, after an epsilon move, a word leading from the
    initial state to ``q``.
    """
    n = d.n_states
    useful = d.useful()
    delta: dict = {}

    def sid(q, phase, s):
        return (q * 2 + phase) * n + s

    initials = set()
    finals = set()
    for q in useful:
        initials.add(sid(q, 0, q))
        for s in range(n):
            for i, p in enumerate(d.delta[s]):
                a = d.alphabet[i]
                delta.setdefault((sid(q, 0, s), a), set()).add(sid(q, 0, p))
                delta.setdefault((sid(q, 1, s), a), set()).add(sid(q, 1, p))
            if s in d.finals:
                delta.setdefault((sid(q, 0, s), EPS), set()).add(sid(q, 1, d.initial))
        finals.add(sid(q, 1, q))
    return Nfa(2 * n * n, d.alphabet, {k: frozenset(v) for k, v in delta.items()},
               frozenset(initials), frozenset(finals))


def cyclic_closure_dfa(d: Dfa) -> Dfa:
    return cyclic_closure(d).determinize()


# -- unavoidable sets ----------------------------------------------------------

@dataclass(frozen=True)
class Unavoidability:
    """Outcome of :func:`is_unavoidable`.

    When ``unavoidable`` holds, ``k0`` is the length of the longest word
    avoiding the set.  Otherwise every word ``prefix + cycle * n`` avoids it.
    """

    unavoidable: bool
    k0: int | None = None
    prefix: str | None = None
    cycle: str | None = None

    def certificate(self) -> str:
        if self.unavoidable:
            return f"k0={self.k0}"
        return f"avoiding={self.prefix or '_'}({self.cycle})*"


def avoidance_automaton(patterns: Iterable[str], alphabet: Iterable[str]):
    """Aho-Corasick automaton restricted to the states that match nothing.

    Returns ``(states, goto)`` where ``states`` are trie prefixes and
    ``goto[s][a]`` is the next state, or ``None`` when a pattern would end
    there.  The root is ``""``.
    """
    pats = set(patterns)
    letters = sorted(set(alphabet))
    trie = {w[:i] for w in pats for i in range(len(w) + 1)}
    # breadth-first: failure links and "contains a pattern as suffix" flags
    fail: dict[str, str] = {"": ""}
    bad: dict[str, bool] = {"": False}
    goto: dict[str, dict[str, str]] = {}
    order = sorted(trie, key=len)
    for s in order:
        if s:
            if len(s) == 1:
                fail[s] = ""
            else:
                fail[s] = goto[fail[s[:-1]]][s[-1]]
            bad[s] = s in pats or bad[fail[s]]
        goto[s] = {}
        for a in letters:
            if s + a in trie:
                goto[s][a] = s + a
            else:
                goto[s][a] = goto[fail[s]][a] if s else ""
    states = [s for s in order if not bad[s]]
    table = {s: {a: (None if bad[goto[s][a]] else goto[s][a]) for a in letters} for s in states}
    return states, table


def is_unavoidable(patterns: Iterable[str], alphabet: Iterable[str]) -> Unavoidability:
    pats = set(patterns)
    if not pats:
        raise ValueError("the pattern set must be nonempty")
    if "" in pats:
        raise ValueError("the empty word cannot be a pattern")
    letters = sorted(set(alphabet))
    if not letters:
        return Unavoidability(True, 0)
    states, table = avoidance_automaton(pats, letters)
    # depth-first search from the root; a back edge yields a cycle
    color: dict[str, int] = {}
    parent: dict[str, tuple[str, str]] = {}
    longest: dict[str, int] = {}

    def path_to(s):
        out = []
        while s in parent:
            s, a = parent[s]
            out.append(a)
        return "".join(reversed(out))

    stack = [("", iter(letters))]
    color[""] = 1
    while stack:
        s, it = stack[-1]
        for a in it:
            t = table[s][a]
            if t is None:
                continue
            c = color.get(t, 0)
            if c == 1:
                # back edge s -a-> t closes a cycle through the stack
                pre = path_to(t)
                loop = path_to(s)[len(pre):] + a
                return Unavoidability(False, prefix=pre, cycle=loop)
            if c == 0:
                color[t] = 1
                parent[t] = (s, a)
                stack.append((t, iter(letters)))
                break
        else:
            color[s] = 2
            longest[s] = 1 + max((longest[table[s][a]] for a in letters if table[s][a] is not None),
                                 default=-1)
            stack.pop()
    return Unavoidability(True, k0=longest[""])


def avoids(w: str, patterns: Iterable[str]) -> bool:
    return not any(p in w for p in patterns)


# -- constants -----------------------------------------------------------------

class ConstantStatus(Enum):
    CONSTANT = "constant"
    VACUOUS = "vacuous"
    NOT_CONSTANT = "not-constant"


def _action_images(d: Dfa, action: tuple[int, ...], reach, coacc) -> set[int]:
    return {action[p] for p in reach if action[p] in coacc}


def constant_status(d: Dfa, w: str) -> ConstantStatus:
    """Classify ``w`` for the language of ``d`` (minimized internally)."""
    bad = [c for c in w if c not in d.alphabet]
    if bad:
        raise AlphabetMismatch(f"symbol {bad[0]!r} not in alphabet {d.alphabet}")
    m = d.minimize()
    coacc = m.coaccessible()
    images = {m.run(p, w) for p in range(m.n_states)} & coacc
    if not images:
        return ConstantStatus.VACUOUS
    return ConstantStatus.CONSTANT if len(images) == 1 else ConstantStatus.NOT_CONSTANT


def is_constant(d: Dfa, w: str) -> bool:
    """True iff the context set of ``w`` is a rectangle (possibly empty)."""
    return constant_status(d, w) is not ConstantStatus.NOT_CONSTANT


def find_constant(d: Dfa) -> str | None:
    """Shortest (then least) non-vacuous constant, or ``None``.

    Breadth-first over the transition monoid, so each transformation is
    reached first by a shortest word.
    """
    m = d.minimize()
    coacc = m.coaccessible()
    n = m.n_states
    ident = tuple(range(n))
    seen = {ident: ""}
    queue = deque([ident])
    while queue:
        f = queue.popleft()
        images = {f[p] for p in range(n)} & coacc
        if len(images) == 1:
            return seen[f]
        for i, a in enumerate(m.alphabet):
            g = tuple(m.delta[f[p]][i] for p in range(n))
            if g not in seen:
                seen[g] = seen[f] + a
                queue.append(g)
    return None


# -- unary languages -------------------------------------------------------------

@dataclass(frozen=True)
class UnarySpectrum:
    """Eventually periodic description of a set of naturals.

    ``n`` belongs to the set iff ``n in explicit`` (for ``n < threshold``) or
    ``n % period in residues`` (for ``n >= threshold``).
    """

    explicit: frozenset[int]
    threshold: int
    period: int
    residues: frozenset[int]

    def __contains__(self, n: int) -> bool:
        if n < self.threshold:
            return n in self.explicit
        return n % self.period in self.residues

    def is_finite(self) -> bool:
        return not self.residues

    def members(self, bound: int) -> list[int]:
        return [n for n in range(bound + 1) if n in self]

    def to_dfa(self, letter: str = "a") -> Dfa:
        t, p = self.threshold, self.period

        def step(s, a):
            return s + 1 if s + 1 < t + p else t

        return dfa_from_function([letter], 0, step, lambda s: s in self)


def unary_spectrum(d: Dfa) -> UnarySpectrum:
    if len(d.alphabet) != 1:
        raise AlphabetMismatch("unary_spectrum needs a one-letter alphabet")
    m = d.minimize()
    seen: dict[int, int] = {}
    q, k = m.initial, 0
    path = []
    while q not in seen:
        seen[q] = k
        path.append(q)
        q = m.delta[q][0]
        k += 1
    start = seen[q]
    period = k - start
    explicit = frozenset(i for i in range(start) if path[i] in m.finals)
    residues = frozenset(i % period for i in range(start, k) if path[i] in m.finals)
    return UnarySpectrum(explicit, start, period, residues)
