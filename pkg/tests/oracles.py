"""Brute force reference implementations used by the tests.

Nothing here imports splicekit.  Circular words are plain strings in their
least rotation.
"""

from itertools import combinations, permutations, product


def rotations(w):
    return {w[i:] + w[:i] for i in range(len(w))} or {""}


def canon(w):
    return min(rotations(w))


def words_upto(alphabet, n, start=0):
    for k in range(start, n + 1):
        for t in product(sorted(alphabet), repeat=k):
            yield "".join(t)


# -- steps, straight from the definitions -----------------------------------------

def linear_step(rule, x, y):
    u1, u2, u3, u4 = rule
    out = set()
    for i in range(len(x) + 1):
        if not (x[:i].endswith(u1) and x[i:].startswith(u2)):
            continue
        for j in range(len(y) + 1):
            if not (y[:j].endswith(u3) and y[j:].startswith(u4)):
                continue
            x1, x2 = x[:i - len(u1)], x[i + len(u2):]
            y1, y2 = y[:j - len(u3)], y[j + len(u4):]
            out.add((x1 + u1 + u4 + y2, y1 + u3 + u2 + x2))
    return out


def flat_step(rule, u, v):
    a, b, g, d = rule
    if len(v) < len(g) + len(d) or not v.startswith(g) or not v.endswith(d):
        return set()
    return {u[:i] + v + u[i:] for i in range(len(u) + 1)
            if u[:i].endswith(a) and u[i:].startswith(b)}


def circular_step(rule, w1, w2):
    u1, u2, u3, u4 = rule
    out = set()
    for r1 in rotations(w1):
        if len(r1) < len(u1) + len(u2) or not (r1.startswith(u2) and r1.endswith(u1)):
            continue
        for r2 in rotations(w2):
            if len(r2) < len(u3) + len(u4) or not (r2.startswith(u4) and r2.endswith(u3)):
                continue
            out.add(canon(r1 + r2))
    return out


def self_splice(rule, w):
    u1, u2, u3, u4 = rule
    out = set()
    for r in rotations(w):
        # r = x u1 u2 y u3 u4
        for i in range(len(r) + 1):
            for j in range(i, len(r) + 1):
                if (r[i:].startswith(u1 + u2) and r[j:] == u3 + u4
                        and i + len(u1 + u2) <= j):
                    x, y = r[:i], r[i + len(u1 + u2):j]
                    out.add((canon(u4 + x + u1), canon(u2 + y + u3)))
    return out


# -- closures -------------------------------------------------------------------

def closure(initial, pair_step, limit, single_step=None, rounds=10_000):
    """Naive fixpoint: every pair, every round, words up to ``limit``."""
    known = {w for w in initial if len(w) <= limit}
    for _ in range(rounds):
        new = set()
        for x in known:
            for y in known:
                new |= pair_step(x, y)
            if single_step:
                new |= single_step(x)
        new = {w for w in new if len(w) <= limit} - known
        if not new:
            return known
        known |= new
    raise RuntimeError("no fixpoint")


def flat_closure(initial, rules, limit):
    def step(x, y):
        out = set()
        for r in rules:
            out |= flat_step(r, x, y)
        return out
    return closure(initial, step, limit)


def circular_closure(initial, rules, limit, self_splicing=False):
    """Circular Paun closure; ``rules`` should already be symmetric."""
    initial = {canon(w) for w in initial if w}

    def step(x, y):
        out = set()
        for r in rules:
            out |= circular_step(r, x, y)
        return out

    def single(x):
        out = set()
        for r in rules:
            for a, b in self_splice(r, x):
                out |= {a, b}
        return out

    return closure(initial, step, limit, single if self_splicing else None)


def linear_closure(initial, rules, limit):
    def step(x, y):
        out = set()
        for r in rules:
            for a, b in linear_step(r, x, y):
                out |= {a, b}
        return out
    return closure(initial, step, limit)


def lin(circ):
    return {r for w in circ for r in rotations(w)}


def mirror(rule):
    u1, u2, u3, u4 = rule
    return (u3, u4, u1, u2)


# -- languages ------------------------------------------------------------------

def dyck(w, op="a", cl="b"):
    h = 0
    for c in w:
        h += 1 if c == op else -1
        if h < 0:
            return False
    return h == 0


def insertion_closure(Y, limit):
    seen = {""}
    todo = [""]
    while todo:
        w = todo.pop()
        for y in Y:
            for i in range(len(w) + 1):
                v = w[:i] + y + w[i:]
                if len(v) <= limit and v not in seen:
                    seen.add(v)
                    todo.append(v)
    return seen


def avoiders(Y, alphabet, limit):
    return {w for w in words_upto(alphabet, limit) if not any(y in w for y in Y)}


# -- graphs ---------------------------------------------------------------------

def adjacent(edges, a, b):
    return frozenset((a, b)) in edges


def has_induced_p4(letters, edges):
    for quad in combinations(sorted(letters), 4):
        for a, b, c, d in permutations(quad):
            if (adjacent(edges, a, b) and adjacent(edges, b, c) and adjacent(edges, c, d)
                    and not adjacent(edges, a, c) and not adjacent(edges, b, d)
                    and not adjacent(edges, a, d)):
                return True
    return False


def all_graphs(letters):
    """Every loop-allowed graph on ``letters``."""
    letters = sorted(letters)
    slots = [frozenset((a, b)) for i, a in enumerate(letters) for b in letters[i:]]
    for mask in range(1 << len(slots)):
        yield frozenset(e for k, e in enumerate(slots) if mask >> k & 1)


# -- constants --------------------------------------------------------------------

def contexts(member, w, alphabet, n):
    """Pairs (x, y) with x w y in the language, |x|, |y| <= n."""
    ws = list(words_upto(alphabet, n))
    return {(x, y) for x in ws for y in ws if member(x + w + y)}


def is_constant_brute(member, w, alphabet, n):
    c = contexts(member, w, alphabet, n)
    left = {x for x, _ in c}
    right = {y for _, y in c}
    return all((x, y) in c for x in left for y in right)
