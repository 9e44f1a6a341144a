"""Circular splicing over a one-letter alphabet.

Circular words over ``{a}`` are just lengths, and Paun splicing adds two
lengths ``m + k`` whenever ``m`` and ``k`` are long enough to carry the
sites of some rule.  Generated sets are described by a :class:`UnaryForm`
``(L1, n, p, r, G)``: the language is ``L1`` together with every sum of one
or more elements of ``G``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .automata import UnarySpectrum
from .splicing import Kind, LinearRule, SplicingSystem, normalize
from .words import CircWord


class UnaryError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteUnary:
    exponents: frozenset[int]

    def __contains__(self, m: int) -> bool:
        return m in self.exponents

    def __str__(self):
        return "finite {" + ", ".join(map(str, sorted(self.exponents))) + "}"


@dataclass(frozen=True)
class UnaryForm:
    L1: frozenset[int]
    n: int
    p: int
    r: int
    G: frozenset[int]

    def __post_init__(self):
        if self.n < 2 or self.n != self.p * self.r:
            raise UnaryError(f"need n = p*r >= 2, got n={self.n}, p={self.p}, r={self.r}")
        if not self.G or min(self.G) != self.n:
            raise UnaryError("min G must equal n")
        if self.L1 and max(self.L1) >= self.n:
            raise UnaryError("every element of L1 must be below n")
        if {g % self.n for g in self.G} != set(self.residues):
            raise UnaryError("G mod n must be the subgroup generated by p")

    @property
    def residues(self) -> tuple[int, ...]:
        return tuple(self.p * k for k in range(self.r))

    def __contains__(self, m: int) -> bool:
        if m < self.n:
            return m in self.L1
        return any(g <= m and (m - g) % self.n == 0 for g in self.G)

    def members(self, bound: int) -> list[int]:
        return [m for m in range(bound + 1) if m in self]

    def to_spectrum(self) -> UnarySpectrum:
        t = max(self.G)
        return UnarySpectrum(frozenset(m for m in range(t) if m in self), t, self.n,
                             frozenset(g % self.n for g in self.G))

    def realization(self, letter: str = "a") -> SplicingSystem:
        """One-rule system ``(L1 + G, a^n#1$1#a^n)`` generating this set."""
        init = {CircWord.of(letter * m) for m in self.L1 | self.G}
        rule = LinearRule(letter * self.n, "", "", letter * self.n)
        return SplicingSystem(Kind.CIRCULAR, {letter}, init, [rule])

    def __str__(self):
        fmt = lambda xs: "{" + ", ".join(map(str, sorted(xs))) + "}"
        return (f"L1={fmt(self.L1)} n={self.n} p={self.p} r={self.r} "
                f"G={fmt(self.G)} residues={fmt(self.residues)}")


@dataclass(frozen=True)
class Refutation:
    """No ``n`` works; for each candidate ``n`` a sum ``x + y`` that leaves the set."""

    failures: tuple[tuple[int, int, int], ...]

    def __str__(self):
        if not self.failures:
            return "no candidate n: the set has no element >= 2"
        return "; ".join(f"n={n}: {x}+{y} missing" for n, x, y in self.failures)


def _closure_failure(sp: UnarySpectrum, n: int) -> tuple[int, int] | None:
    """A pair ``x, y >= n`` in the set whose sum is not, or None."""
    top = max(sp.threshold, n) + sp.period
    xs = [x for x in range(n, top) if x in sp]
    for x in xs:
        for y in xs:
            if y < x:
                continue
            if x + y not in sp:
                return x, y
    return None


def form_from_spectrum(sp: UnarySpectrum) -> UnaryForm | FiniteUnary | Refutation:
    if sp.is_finite():
        return FiniteUnary(frozenset(sp.explicit))
    failures = []
    # a working n >= max(N0, 2) + period can be traded for the smallest
    # member of its residue class past max(N0, 2)
    for n in range(2, max(sp.threshold, 2) + sp.period):
        if n not in sp:
            continue
        bad = _closure_failure(sp, n)
        if bad:
            failures.append((n, *bad))
            continue
        top = max(sp.threshold, n) + n * sp.period
        G = {}
        for m in range(n, top + 1):
            if m in sp and m % n not in G:
                G[m % n] = m
        p = 0
        for res in G:
            p = gcd(p, res)
        p = p or n
        return UnaryForm(frozenset(m for m in range(n) if m in sp), n, p, n // p,
                         frozenset(G.values()))
    return Refutation(tuple(failures))


def unary_is_generated(sp: UnarySpectrum):
    """(True, form) when the set is Paun generated, else (False, refutation)."""
    out = form_from_spectrum(sp)
    return (not isinstance(out, Refutation)), out


def _site_lengths(s: SplicingSystem) -> list[tuple[int, int]]:
    return [(len(r.u1) + len(r.u2), len(r.u3) + len(r.u4)) for r in s.rules]


def _closure_prefix(init: set[int], sites, bound: int) -> list[bool]:
    inside = [False] * (bound + 1)
    for m in init:
        if m <= bound:
            inside[m] = True
    # sums only grow, so one increasing sweep reaches the fixpoint
    for total in range(1, bound + 1):
        if inside[total]:
            continue
        for x in range(1, total):
            y = total - x
            if inside[x] and inside[y] and any(x >= s1 and y >= s2 for s1, s2 in sites):
                inside[total] = True
                break
    return inside


def unary_exponents(s: SplicingSystem) -> UnarySpectrum:
    """Exact set of lengths generated by a unary circular Paun system."""
    if s.kind is not Kind.CIRCULAR or len(s.alphabet) != 1:
        raise UnaryError("expected a circular system over a one-letter alphabet")
    if s.self_splicing:
        raise UnaryError("self-splicing unary systems are not handled")
    s = normalize(s)
    init = {len(w) for w in s.initial | s.dropped_initial}
    sites = _site_lengths(s)
    if not sites:
        return UnarySpectrum(frozenset(init), max(init) + 1, 1, frozenset())
    # elements >= c combine freely through the rule realizing c
    c = min(max(a, b) for a, b in sites)
    bound = max(64, 4 * (max(init) + max(max(a, b) for a, b in sites)))
    while True:
        inside = _closure_prefix(init, sites, bound)
        big = [m for m in range(max(c, 1), bound + 1) if inside[m]]
        if not big:
            # no sum was ever formed
            members = frozenset(m for m in range(bound + 1) if inside[m])
            if members == frozenset(init):
                return UnarySpectrum(members, bound + 1, 1, frozenset())
            bound *= 2
            continue
        z = big[0]
        residues = frozenset(m % z for m in big)
        sp = UnarySpectrum(frozenset(m for m in range(bound + 1) if inside[m]),
                           bound + 1, z, residues)
        if _closed(sp, sites) and all(
                (m in sp) == inside[m] for m in range(bound + 1)):
            return _tighten(sp)
        bound *= 2
        if bound > 1 << 16:
            raise UnaryError("closure did not stabilize")


def _closed(sp: UnarySpectrum, sites) -> bool:
    top = sp.threshold + sp.period
    xs = [x for x in range(1, top) if x in sp]
    for x in xs:
        for y in xs:
            if x + y >= sp.threshold and any(x >= a and y >= b for a, b in sites):
                if x + y not in sp:
                    return False
    return True


def _tighten(sp: UnarySpectrum) -> UnarySpectrum:
    """Smallest threshold and period describing the same set."""
    t, p = sp.threshold, sp.period
    for q in range(1, p + 1):
        if p % q == 0 and all((m in sp) == (m + q in sp) for m in range(t, t + p)):
            p = q
            break
    while t > 0 and ((t - 1) in sp) == ((t - 1 + p) in sp):
        t -= 1
    return UnarySpectrum(frozenset(m for m in range(t) if m in sp), t, p,
                         frozenset(m % p for m in range(t, t + p) if m in sp))


def unary_closed_form(s: SplicingSystem) -> UnaryForm | FiniteUnary:
    sp = unary_exponents(s)
    out = form_from_spectrum(sp)
    if isinstance(out, Refutation):
        # cannot happen for a generated set; kept as a hard failure
        raise UnaryError(f"generated set has no normal form: {out}")
    if isinstance(out, UnaryForm):
        limit = 4 * out.n + max(out.G)
        direct = _closure_prefix({len(w) for w in normalize(s).initial}, _site_lengths(normalize(s)), limit)
        extra = {len(w) for w in normalize(s).dropped_initial}
        for m in range(1, limit + 1):
            if (m in out) != (direct[m] or m in extra):
                raise UnaryError(f"normal form disagrees with the closure at {m}")
    return out
