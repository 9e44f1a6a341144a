"""Context-free grammars for alphabetic flat systems.

The compiler works in two layers.  The first grammar (``K``) describes the
closure of the initial set under concatenations, i.e. insertions at a word
end.  The second one (``W``) places an insertion nonterminal ``I{x,y}``
between every pair of adjacent letters ``x y`` of a ``K`` derivation; each
``I{x,y}`` either vanishes or inserts a complete word of the language,
surrounded by two further insertion slots.

Naming scheme (also used in the text format):

``K{a,b}`` / ``W{a,b}``
    words of length at least 2 starting with ``a`` and ending with ``b``
``K{a}`` / ``W{a}``
    the one-letter word ``a``
``I{a,b}``
    whatever may be inserted between an ``a`` and a ``b``
``S``
    start symbol (``S0`` if ``S`` is a terminal)

Generalized grammars (:class:`GenCfg`) have regular expressions on their
right-hand sides; :func:`lower` turns them into Chomsky normal form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product as iproduct
from typing import Iterable

from .regex import Alt, Cat, Eps, Node, Star, Sym, alt, cat
from .splicing import FlatRule, Kind, LinearRule, SplicingSystem, normalize
from .words import lin, shortlex


class GrammarError(ValueError):
    pass


class NotAlphabetic(GrammarError):
    pass


class UnsupportedKind(GrammarError):
    pass


# -- generalized grammars -------------------------------------------------------

@dataclass(frozen=True)
class GenCfg:
    nonterminals: tuple[str, ...]
    terminals: frozenset[str]
    start: str
    productions: tuple[tuple[str, Node], ...]

    def __post_init__(self):
        names = set(self.nonterminals)
        if self.start not in names:
            raise GrammarError(f"start symbol {self.start} is not a nonterminal")
        if names & self.terminals:
            raise GrammarError(f"symbols used both ways: {sorted(names & self.terminals)}")
        for lhs, rhs in self.productions:
            if lhs not in names:
                raise GrammarError(f"undeclared nonterminal {lhs}")
            unknown = rhs.symbols() - names - self.terminals
            if unknown:
                raise GrammarError(f"undeclared symbols {sorted(unknown)} in {lhs}")

    def rhs(self, name: str) -> Node:
        for lhs, node in self.productions:
            if lhs == name:
                return node
        raise KeyError(name)

    def __str__(self) -> str:
        return "\n".join(f"{lhs} -> {render(rhs)}" for lhs, rhs in self.productions) + "\n"


def render(node: Node) -> str:
    """Text form of a right-hand side, ``@`` for the empty word."""
    if isinstance(node, Eps):
        return "@"
    if isinstance(node, Sym):
        return node.name
    if isinstance(node, Alt):
        return " | ".join(render(i) for i in node.items)
    if isinstance(node, Cat):
        return " ".join(f"( {render(i)} )" if isinstance(i, Alt) else render(i) for i in node.items)
    if isinstance(node, Star):
        inner = render(node.item)
        return (f"( {inner} )" if isinstance(node.item, (Alt, Cat)) else inner) + "*"
    raise TypeError(node)


def _start_name(alphabet) -> str:
    return "S" if "S" not in alphabet else "S0"


def _trim_gen(nts: list[str], prods: dict[str, list[tuple[str, ...]]], start: str,
              terminals: frozenset[str]) -> GenCfg:
    """Drop unproductive alternatives and unreachable nonterminals.

    ``prods`` maps each nonterminal to alternatives given as symbol tuples.
    """
    productive: set[str] = set()
    changed = True
    while changed:
        changed = False
        for n in nts:
            if n in productive:
                continue
            if any(all(x in terminals or x in productive for x in a) for a in prods.get(n, ())):
                productive.add(n)
                changed = True
    kept = {n: [a for a in prods.get(n, ()) if all(x in terminals or x in productive for x in a)]
            for n in nts if n in productive}
    reach = []
    if start in kept:
        todo = [start]
        seen = {start}
        while todo:
            n = todo.pop()
            for a in kept[n]:
                for x in a:
                    if x in kept and x not in seen:
                        seen.add(x)
                        todo.append(x)
        reach = [n for n in nts if n in seen]
    else:
        # empty language: keep a start symbol with no alternatives
        kept = {start: []}
        reach = [start]
    productions = []
    for n in reach:
        alts = [cat(*(Sym(x) for x in a)) for a in kept[n]]
        productions.append((n, alt(*alts) if alts else Alt(())))
    return GenCfg(tuple(reach), terminals, start, tuple(productions))


# -- alphabetic flat systems -----------------------------------------------------

def check_alphabetic(s: SplicingSystem) -> bool:
    if s.kind is Kind.FLAT:
        return all(r.is_alphabetic() for r in s.rules)
    if s.kind is Kind.CIRCULAR:
        return all(len(p) <= 1 for r in s.rules for p in (r.u1, r.u2, r.u3, r.u4))
    raise UnsupportedKind(f"alphabetic check is defined for flat and circular systems, not {s.kind.value}")


def _require_flat_alphabetic(s: SplicingSystem):
    if s.kind is not Kind.FLAT:
        raise UnsupportedKind(f"expected a flat system, got {s.kind.value}")
    if not check_alphabetic(s):
        bad = next(r for r in s.rules if not r.is_alphabetic())
        raise NotAlphabetic(f"rule {bad} has a handle longer than one letter")


# a class is ("a",) for the one-letter word a, or ("a", "b") for longer words
def _first(c):
    return c[0]


def _last(c):
    return c[-1]


def _name(prefix: str, c) -> str:
    return f"{prefix}{{{','.join(c)}}}"


def _guest_ok(r: FlatRule, c) -> bool:
    """Can a word of class ``c`` be the inserted word for ``r``?"""
    if r.gamma and r.gamma != _first(c):
        return False
    if r.delta and r.delta != _last(c):
        return False
    # a single letter cannot carry two nonempty handles
    return not (len(c) == 1 and r.gamma and r.delta)


def _classes(alphabet) -> list[tuple]:
    letters = sorted(alphabet)
    return [(a,) for a in letters] + [(a, b) for a in letters for b in letters]


def _concat_pairs(s: SplicingSystem) -> set[tuple[tuple, tuple, tuple]]:
    """(result, left, right) class triples for end-of-word insertions."""
    classes = _classes(s.alphabet)
    out = set()
    for r in s.rules:
        guests = [c for c in classes if _guest_ok(r, c)]
        if not r.beta:
            # host u, then inserted v at the end
            for host in classes:
                if r.alpha and r.alpha != _last(host):
                    continue
                for g in guests:
                    out.add(((_first(host), _last(g)), host, g))
        if not r.alpha:
            for host in classes:
                if r.beta and r.beta != _first(host):
                    continue
                for g in guests:
                    out.add(((_first(g), _last(host)), g, host))
    return out


def _word_class(w: str) -> tuple:
    return (w,) if len(w) == 1 else (w[0], w[-1])


def concat_grammar(s: SplicingSystem) -> GenCfg:
    """Grammar for the closure of the initial words under concatenations."""
    _require_flat_alphabetic(s)
    s = normalize(s)
    classes = _classes(s.alphabet)
    start = _start_name(s.alphabet)
    prods: dict[str, list[tuple[str, ...]]] = {start: [(_name("K", c),) for c in classes]}
    for c in classes:
        prods[_name("K", c)] = []
    for w in shortlex(s.initial | s.dropped_initial):
        prods[_name("K", _word_class(w))].append(tuple(w))
    for res, left, right in sorted(_concat_pairs(s)):
        prods[_name("K", res)].append((_name("K", left), _name("K", right)))
    nts = [start] + [_name("K", c) for c in classes]
    return _trim_gen(nts, prods, start, frozenset(s.alphabet))


def _insertion_alternatives(s: SplicingSystem, x: str, y: str, live: list[tuple]) -> list[tuple]:
    alts = set()
    for r in s.rules:
        if r.alpha and r.alpha != x:
            continue
        if r.beta and r.beta != y:
            continue
        for c in live:
            if _guest_ok(r, c):
                alts.add((_name("I", (x, _first(c))), _name("W", c), _name("I", (_last(c), y))))
    return sorted(alts)


def insert_grammar(k: GenCfg, s: SplicingSystem) -> GenCfg:
    """Grammar for the full language, built on top of ``concat_grammar(s)``."""
    _require_flat_alphabetic(s)
    if k != concat_grammar(s):
        raise GrammarError("the concatenation grammar does not belong to this system")
    s = normalize(s)
    terminals = frozenset(s.alphabet)
    start = k.start
    live = [c for c in _classes(s.alphabet) if _name("K", c) in k.nonterminals]
    prods: dict[str, list[tuple[str, ...]]] = {start: [(_name("W", c),) for c in live]}
    nts = [start]
    pending: list[tuple[str, str]] = []

    def slot(x, y):
        n = _name("I", (x, y))
        if n not in prods and (x, y) not in pending:
            pending.append((x, y))
        return n

    for c in live:
        w_alts = []
        node = k.rhs(_name("K", c))
        items = node.items if isinstance(node, Alt) else (node,)
        for a in items:
            syms = [i.name for i in (a.items if isinstance(a, Cat) else (a,))]
            if all(x in terminals for x in syms):
                seq = [syms[0]]
                for p, q in zip(syms, syms[1:]):
                    seq += [slot(p, q), q]
                w_alts.append(tuple(seq))
            else:
                left, right = syms
                lc = _class_of(left)
                rc = _class_of(right)
                w_alts.append((_name("W", lc), slot(_last(lc), _first(rc)), _name("W", rc)))
        prods[_name("W", c)] = w_alts
        nts.append(_name("W", c))
    i_names = []
    while pending:
        x, y = pending.pop(0)
        n = _name("I", (x, y))
        if n in prods:
            continue
        alts = []
        for a in _insertion_alternatives(s, x, y, live):
            slot(x, _first(_class_of(a[1])))
            slot(_last(_class_of(a[1])), y)
            alts.append(a)
        prods[n] = alts + [()]
        i_names.append(n)
    nts += sorted(i_names)
    return _trim_gen(nts, prods, start, terminals)


def _class_of(name: str) -> tuple:
    return tuple(name[2:-1].split(","))


# -- circular systems through the flat bridge ------------------------------------------

def cssh_positions(s: SplicingSystem) -> tuple[int, int]:
    """Position type of a CSSH system: (1,3), (2,4) or (2,3).

    Symmetric closure turns a (2,3) rule into a (1,4) rule, so both count
    as type (2,3).
    """
    if not s.is_cssh():
        raise UnsupportedKind("not a circular system with one-letter sites")
    kinds = set()
    for r in s.rules:
        i = 1 if r.u1 else 2
        j = 3 if r.u3 else 4
        kinds.add({(1, 3): (1, 3), (2, 4): (2, 4), (2, 3): (2, 3), (1, 4): (2, 3)}[(i, j)])
    if len(kinds) != 1:
        raise UnsupportedKind(f"rules mix position types {sorted(kinds)}")
    return kinds.pop()


def flat_bridge(s: SplicingSystem) -> SplicingSystem:
    """Flat system over Lin(I) with rules (a,1,1,b), for a (1,3)-CSSH system."""
    s = normalize(s)
    if cssh_positions(s) != (1, 3):
        raise UnsupportedKind("the flat bridge needs a (1,3) system")
    words = lin(s.initial | s.dropped_initial)
    rules = {FlatRule(r.u1, "", "", r.u3) for r in s.rules}
    return normalize(SplicingSystem(Kind.FLAT, s.alphabet, words, rules))


def reverse_system(s: SplicingSystem) -> SplicingSystem:
    """Reverse every initial word and mirror every rule (u1#u2$u3#u4 -> u2~#u1~$u4~#u3~)."""
    def rv(x):
        return x[::-1]
    if s.kind is Kind.CIRCULAR:
        rules = [LinearRule(rv(r.u2), rv(r.u1), rv(r.u4), rv(r.u3)) for r in s.rules]
        init = {w.reverse() for w in s.initial}
        dropped = {w.reverse() for w in s.dropped_initial}
    elif s.kind is Kind.FLAT:
        rules = [FlatRule(rv(r.beta), rv(r.alpha), rv(r.delta), rv(r.gamma)) for r in s.rules]
        init = {rv(w) for w in s.initial}
        dropped = {rv(w) for w in s.dropped_initial}
    else:
        raise UnsupportedKind(f"reversal is not implemented for {s.kind.value}")
    return s.replace(initial=frozenset(init), rules=tuple(sorted(rules)),
                     dropped_initial=frozenset(dropped))


def reverse_node(node: Node) -> Node:
    if isinstance(node, Cat):
        return Cat(tuple(reverse_node(i) for i in reversed(node.items)))
    if isinstance(node, Alt):
        return Alt(tuple(reverse_node(i) for i in node.items))
    if isinstance(node, Star):
        return Star(reverse_node(node.item))
    return node


_PAIR_NAME = re.compile(r"^([KWI])\{([^,{}]),([^,{}])\}$")


def flip_name(name: str) -> str:
    """``W{a,b}`` -> ``W{b,a}``: the name of the class after reversal."""
    m = _PAIR_NAME.match(name)
    return f"{m[1]}{{{m[3]},{m[2]}}}" if m else name


def _rename(node: Node, names: set[str]) -> Node:
    if isinstance(node, Sym):
        return Sym(flip_name(node.name)) if node.name in names else node
    if isinstance(node, Cat):
        return Cat(tuple(_rename(i, names) for i in node.items))
    if isinstance(node, Alt):
        return Alt(tuple(_rename(i, names) for i in node.items))
    if isinstance(node, Star):
        return Star(_rename(node.item, names))
    return node


def reverse_gencfg(g: GenCfg) -> GenCfg:
    names = set(g.nonterminals)
    return GenCfg(tuple(flip_name(n) for n in g.nonterminals), g.terminals, flip_name(g.start),
                  tuple((flip_name(n), _rename(reverse_node(rhs), names)) for n, rhs in g.productions))


def compile_gencfg(s: SplicingSystem) -> GenCfg:
    """Generalized grammar for ``L(s)`` (flat) or ``Lin(L(s))`` (circular CSSH)."""
    s = normalize(s)
    if s.kind is Kind.FLAT:
        return insert_grammar(concat_grammar(s), s)
    if s.kind is Kind.CIRCULAR:
        if s.self_splicing:
            raise UnsupportedKind("self-splicing systems are not compiled")
        if not s.rules:
            # every rule was useless: only the initial words are generated
            words = shortlex(lin(s.initial | s.dropped_initial))
            start = _start_name(s.alphabet)
            return _trim_gen([start], {start: [tuple(w) for w in words]}, start, frozenset(s.alphabet))
        if not s.is_cssh():
            raise UnsupportedKind("only circular systems with one-letter sites can be compiled")
        pos = cssh_positions(s)
        if pos == (1, 3):
            return compile_gencfg(flat_bridge(s))
        if pos == (2, 4):
            return reverse_gencfg(compile_gencfg(reverse_system(s)))
        raise UnsupportedKind("(2,3) systems are not compiled")
    raise UnsupportedKind(f"{s.kind.value} systems are not compiled")


def compile(s: SplicingSystem) -> "Cfg":
    """CNF grammar for ``L(s)`` (flat) or ``Lin(L(s))`` (circular CSSH)."""
    s = normalize(s)
    if s.kind is Kind.CIRCULAR and not s.self_splicing and s.is_cssh() and cssh_positions(s) == (2, 4):
        return compile(reverse_system(s)).reversed()
    return lower(compile_gencfg(s))


# -- plain grammars ---------------------------------------------------------------

@dataclass(frozen=True)
class Cfg:
    """Grammar in Chomsky normal form.

    Right-hand sides are one terminal or two nonterminals; the empty word is
    carried by ``accepts_empty`` instead of a production.
    """

    nonterminals: tuple[str, ...]
    terminals: frozenset[str]
    start: str
    productions: tuple[tuple[str, tuple[str, ...]], ...]
    accepts_empty: bool = False

    def __post_init__(self):
        names = set(self.nonterminals)
        for lhs, rhs in self.productions:
            if lhs not in names:
                raise GrammarError(f"undeclared nonterminal {lhs}")
            if len(rhs) == 1 and rhs[0] in self.terminals:
                continue
            if len(rhs) == 2 and all(x in names for x in rhs):
                continue
            raise GrammarError(f"production {lhs} -> {' '.join(rhs)} is not in normal form")

    def reversed(self) -> "Cfg":
        names = set(self.nonterminals)

        def f(x):
            return flip_name(x) if x in names else x

        prods = tuple(sorted((f(lhs), tuple(f(x) for x in rhs[::-1])) for lhs, rhs in self.productions))
        start = f(self.start)
        return Cfg(tuple(f(n) for n in self.nonterminals), self.terminals, start,
                   _order(prods, start), self.accepts_empty)

    def __str__(self) -> str:
        lines = []
        by: dict[str, list[str]] = {}
        for lhs, rhs in self.productions:
            by.setdefault(lhs, []).append(" ".join(rhs))
        if self.accepts_empty:
            by.setdefault(self.start, []).insert(0, "@")
        for n in self.nonterminals:
            if n in by:
                lines.append(f"{n} -> {' | '.join(by[n])}")
        return "\n".join(lines) + "\n"


def _order(prods, start):
    return tuple(sorted(prods, key=lambda p: (p[0] != start, p[0], p[1])))


class _Fresh:
    def __init__(self, taken: Iterable[str]):
        self.taken = set(taken)
        self.n = 0

    def __call__(self, hint: str = "") -> str:
        while True:
            self.n += 1
            name = f"<{hint}{self.n}>"
            if name not in self.taken:
                self.taken.add(name)
                return name


def _to_bnf(g: GenCfg, fresh: _Fresh) -> list[tuple[str, tuple[str, ...]]]:
    out: list[tuple[str, tuple[str, ...]]] = []

    def sequence(node: Node) -> list[tuple[str, ...]]:
        # alternatives of flat symbol sequences for node
        if isinstance(node, Eps):
            return [()]
        if isinstance(node, Sym):
            return [(node.name,)]
        if isinstance(node, Alt):
            return [seq for i in node.items for seq in sequence(i)]
        if isinstance(node, Cat):
            return [tuple(symbol(i) for i in node.items)]
        if isinstance(node, Star):
            return [(symbol(node),)]
        raise TypeError(node)

    def symbol(node: Node) -> str:
        if isinstance(node, Sym):
            return node.name
        n = fresh()
        if isinstance(node, Star):
            body = symbol(node.item)
            out.append((n, ()))
            out.append((n, (body, n)))
        else:
            for seq in sequence(node):
                out.append((n, seq))
        return n

    for lhs, rhs in g.productions:
        for seq in sequence(rhs):
            out.append((lhs, seq))
    return out


def lower(g: GenCfg) -> Cfg:
    """Chomsky normal form of a generalized grammar (same language)."""
    fresh = _Fresh(set(g.nonterminals) | g.terminals)
    prods = _to_bnf(g, fresh)
    terminals = g.terminals
    start = g.start

    # TERM: terminals inside long right sides get their own nonterminal
    term_nt: dict[str, str] = {}
    step = []
    for lhs, rhs in prods:
        if len(rhs) >= 2:
            new = []
            for x in rhs:
                if x in terminals:
                    if x not in term_nt:
                        term_nt[x] = fresh(f"{x}:")
                    x = term_nt[x]
                new.append(x)
            rhs = tuple(new)
        step.append((lhs, rhs))
    step += [(n, (t,)) for t, n in term_nt.items()]

    # BIN
    binary = []
    for lhs, rhs in step:
        while len(rhs) > 2:
            n = fresh()
            binary.append((lhs, (rhs[0], n)))
            lhs, rhs = n, rhs[1:]
        binary.append((lhs, rhs))

    # DEL
    nullable: set[str] = set()
    changed = True
    while changed:
        changed = False
        for lhs, rhs in binary:
            if lhs not in nullable and all(x in nullable for x in rhs):
                nullable.add(lhs)
                changed = True
    accepts_empty = start in nullable
    no_eps = set()
    for lhs, rhs in binary:
        options = [((x,), ()) if x in nullable else ((x,),) for x in rhs]
        for pick in iproduct(*options):
            seq = tuple(x for part in pick for x in part)
            if seq:
                no_eps.add((lhs, seq))

    # UNIT
    names = {lhs for lhs, _ in no_eps} | {start}
    units: dict[str, set[str]] = {n: {n} for n in names}
    changed = True
    while changed:
        changed = False
        for lhs, rhs in no_eps:
            if len(rhs) == 1 and rhs[0] not in terminals:
                for n in names:
                    if lhs in units[n] and rhs[0] not in units[n]:
                        units[n].add(rhs[0])
                        changed = True
    final = set()
    for n in names:
        for lhs, rhs in no_eps:
            if lhs in units[n] and not (len(rhs) == 1 and rhs[0] not in terminals):
                final.add((n, rhs))

    return _trim_cnf(final, start, terminals, accepts_empty, order=list(g.nonterminals))


def _trim_cnf(prods, start, terminals, accepts_empty, order=()) -> Cfg:
    productive: set[str] = set()
    changed = True
    while changed:
        changed = False
        for lhs, rhs in prods:
            if lhs not in productive and all(x in terminals or x in productive for x in rhs):
                productive.add(lhs)
                changed = True
    prods = {(l, r) for l, r in prods if l in productive and all(x in terminals or x in productive for x in r)}
    seen = {start}
    todo = [start]
    while todo:
        n = todo.pop()
        for lhs, rhs in prods:
            if lhs == n:
                for x in rhs:
                    if x not in terminals and x not in seen:
                        seen.add(x)
                        todo.append(x)
    prods = {(l, r) for l, r in prods if l in seen}
    rank = {n: i for i, n in enumerate(order)}
    nts = sorted(seen, key=lambda n: (n != start, rank.get(n, len(rank)), n))
    return Cfg(tuple(nts), frozenset(terminals), start, _order(prods, start), accepts_empty)


def cyk_member(g: Cfg, w: str) -> bool:
    bad = set(w) - g.terminals
    if bad:
        raise GrammarError(f"symbols {sorted(bad)} are not terminals of the grammar")
    n = len(w)
    if n == 0:
        return g.accepts_empty
    unit: dict[str, set[str]] = {}
    pairs = []
    for lhs, rhs in g.productions:
        if len(rhs) == 1:
            unit.setdefault(rhs[0], set()).add(lhs)
        else:
            pairs.append((lhs, rhs[0], rhs[1]))
    table = [[set() for _ in range(n + 1)] for _ in range(n)]
    for i, c in enumerate(w):
        table[i][1] = set(unit.get(c, ()))
    for length in range(2, n + 1):
        for i in range(0, n - length + 1):
            cell = table[i][length]
            for k in range(1, length):
                left = table[i][k]
                right = table[i + k][length - k]
                if not left or not right:
                    continue
                for lhs, b, c in pairs:
                    if b in left and c in right:
                        cell.add(lhs)
    return g.start in table[0][n]


def grammar_enumerate(g: Cfg, maxlen: int) -> set[str]:
    """Every word of the language with length at most ``maxlen``."""
    by_len: dict[str, list[set[str]]] = {n: [set() for _ in range(maxlen + 1)] for n in g.nonterminals}
    pairs = [(l, r) for l, r in g.productions if len(r) == 2]
    for lhs, rhs in g.productions:
        if len(rhs) == 1 and maxlen >= 1:
            by_len[lhs][1].add(rhs[0])
    for length in range(2, maxlen + 1):
        for lhs, (b, c) in pairs:
            target = by_len[lhs][length]
            for k in range(1, length):
                for u in by_len[b][k]:
                    for v in by_len[c][length - k]:
                        target.add(u + v)
    out = set().union(*by_len[g.start]) if g.start in by_len else set()
    if g.accepts_empty:
        out.add("")
    return out


def gen_enumerate(g: GenCfg, maxlen: int) -> set[str]:
    """Direct fixpoint evaluation of a generalized grammar, words up to ``maxlen``."""
    lang: dict[str, set[str]] = {n: set() for n in g.nonterminals}

    def ev(node: Node) -> set[str]:
        if isinstance(node, Eps):
            return {""}
        if isinstance(node, Sym):
            return set(lang[node.name]) if node.name in lang else {node.name}
        if isinstance(node, Alt):
            return set().union(*(ev(i) for i in node.items)) if node.items else set()
        if isinstance(node, Cat):
            acc = {""}
            for i in node.items:
                part = ev(i)
                acc = {u + v for u in acc for v in part if len(u) + len(v) <= maxlen}
            return acc
        if isinstance(node, Star):
            part = ev(node.item)
            acc = {""}
            frontier = {""}
            while frontier:
                frontier = {u + v for u in frontier for v in part if v and len(u) + len(v) <= maxlen} - acc
                acc |= frontier
            return acc
        raise TypeError(node)

    changed = True
    while changed:
        changed = False
        for lhs, rhs in g.productions:
            new = ev(rhs) - lang[lhs]
            if new:
                lang[lhs] |= new
                changed = True
    return lang[g.start]


# -- text format --------------------------------------------------------------------

_TOKEN = re.compile(r"\(|\)|\*|\||@|[^\s()|*]+")


def parse_cfg(text: str) -> Cfg:
    """Read a grammar in the ``N -> X Y | a`` format (first left side is the start).

    Symbols that never occur on a left side are terminals.  The grammar is
    lowered, so any context-free grammar in this format is accepted.
    """
    g = parse_gencfg(text)
    return lower(g)


def parse_gencfg(text: str) -> GenCfg:
    rows = []
    for no, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise GrammarError(f"line {no}: expected 'N -> ...'")
        lhs, rhs = line.split("->", 1)
        lhs = lhs.strip()
        if not lhs or " " in lhs:
            raise GrammarError(f"line {no}: bad left side {lhs!r}")
        rows.append((no, lhs, _TOKEN.findall(rhs)))
    if not rows:
        raise GrammarError("empty grammar")
    nts: list[str] = []
    for _, lhs, _ in rows:
        if lhs not in nts:
            nts.append(lhs)
    terminals = set()
    merged: dict[str, list[Node]] = {}
    for no, lhs, toks in rows:
        for t in toks:
            if t not in "()*|@" and t not in nts:
                if len(t) != 1:
                    raise GrammarError(f"line {no}: unknown nonterminal {t}")
                terminals.add(t)
        merged.setdefault(lhs, []).append(_parse_rhs(toks, no))
    prods = tuple((n, alt(*merged[n])) for n in nts)
    return GenCfg(tuple(nts), frozenset(terminals), nts[0], prods)


def _parse_rhs(toks: list[str], no: int) -> Node:
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def union():
        nonlocal pos
        items = [seq()]
        while peek() == "|":
            pos += 1
            items.append(seq())
        return alt(*items) if len(items) > 1 else items[0]

    def seq():
        nonlocal pos
        items = []
        while peek() not in (None, "|", ")"):
            t = peek()
            pos += 1
            if t == "(":
                node = union()
                if peek() != ")":
                    raise GrammarError(f"line {no}: missing ')'")
                pos += 1
            elif t == "@":
                node = Eps()
            elif t == "*":
                raise GrammarError(f"line {no}: misplaced '*'")
            else:
                node = Sym(t)
            while peek() == "*":
                pos += 1
                node = Star(node)
            items.append(node)
        return cat(*items)

    node = union()
    if pos != len(toks):
        raise GrammarError(f"line {no}: unexpected {peek()!r}")
    return node
