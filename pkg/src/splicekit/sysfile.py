"""Text format for splicing systems.

::

    # comment
    kind: flat
    alphabet: a b
    initial: ab
    rule: a | b $ a | b

Keys may repeat (``initial`` and ``rule`` lines accumulate).  ``_`` is the
empty word and ``^`` marks a circular word.  Rule syntax per kind:

=================  =============================================
linear, circular   ``u1 # u2 $ u3 # u4``
flat               ``alpha | beta $ gamma | delta``
circular-head      ``p , x , q``
circular-pixton    ``alpha , alpha' ; beta ; beta'``
=================  =============================================

Options: ``self-splicing`` (circular) and ``one-splicing`` (linear).
"""

from __future__ import annotations

from pathlib import Path

from .splicing import (
    FlatRule,
    HeadTriple,
    Kind,
    LinearRule,
    PixtonRule,
    SplicingSystem,
    SystemError_,
    normalize,
)
from .words import CircWord, format_word, shortlex

RESERVED = set("#$|,;_^@()*+")
KEYS = ("kind", "alphabet", "initial", "rule", "option")
OPTIONS = ("self-splicing", "one-splicing")


class SystemFileError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def _word(tok: str) -> str:
    return "" if tok == "_" else tok


def _parts(text: str, sep: str, count: int, line: int) -> list[str]:
    parts = [p.strip() for p in text.split(sep)]
    if len(parts) != count:
        raise SystemFileError(f"expected {count} parts separated by {sep!r} in {text.strip()!r}", line)
    for p in parts:
        if not p or " " in p:
            raise SystemFileError(f"bad rule component {p!r} (use _ for the empty word)", line)
    return [_word(p) for p in parts]


def parse_rule(kind: Kind, text: str, line: int = 0):
    if kind in (Kind.LINEAR, Kind.CIRCULAR):
        sides = _parts_raw(text, "$", 2, line)
        u1, u2 = _parts(sides[0], "#", 2, line)
        u3, u4 = _parts(sides[1], "#", 2, line)
        return LinearRule(u1, u2, u3, u4)
    if kind is Kind.FLAT:
        sides = _parts_raw(text, "$", 2, line)
        a, b = _parts(sides[0], "|", 2, line)
        c, d = _parts(sides[1], "|", 2, line)
        return FlatRule(a, b, c, d)
    if kind is Kind.HEAD:
        return HeadTriple(*_parts(text, ",", 3, line))
    if kind is Kind.PIXTON:
        head, beta, beta2 = _parts_raw(text, ";", 3, line)
        a, a2 = _parts(head, ",", 2, line)
        (b,) = _parts(beta, ";", 1, line)
        (b2,) = _parts(beta2, ";", 1, line)
        return PixtonRule(a, a2, b, b2)
    raise SystemFileError(f"unknown kind {kind}", line)


def _parts_raw(text: str, sep: str, count: int, line: int) -> list[str]:
    parts = text.split(sep)
    if len(parts) != count:
        raise SystemFileError(f"expected {count} parts separated by {sep!r} in {text.strip()!r}", line)
    return parts


def parse_system_text(text: str, normalized: bool = True) -> SplicingSystem:
    kind = None
    alphabet: list[str] | None = None
    initial: list[tuple[str, int]] = []
    rules: list[tuple[str, int]] = []
    options: set[str] = set()
    for no, raw in enumerate(text.splitlines(), 1):
        # '#' is rule syntax, so only whole lines can be comments
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        line = raw
        if ":" not in line:
            raise SystemFileError("expected 'key: value'", no)
        key, value = line.split(":", 1)
        key = key.strip()
        value = value.strip()
        if key not in KEYS:
            raise SystemFileError(f"unknown key {key!r}", no)
        if key == "kind":
            if kind is not None:
                raise SystemFileError("kind given twice", no)
            try:
                kind = Kind(value)
            except ValueError:
                raise SystemFileError(f"unknown kind {value!r}", no) from None
        elif key == "alphabet":
            if alphabet is not None:
                raise SystemFileError("alphabet given twice", no)
            alphabet = value.split()
            for a in alphabet:
                if len(a) != 1 or a in RESERVED:
                    raise SystemFileError(f"bad alphabet symbol {a!r}", no)
        elif key == "initial":
            initial += [(tok, no) for tok in value.split()]
        elif key == "rule":
            rules.append((value, no))
        else:
            if value not in OPTIONS:
                raise SystemFileError(f"unknown option {value!r}", no)
            options.add(value)
    if kind is None:
        raise SystemFileError("missing 'kind:' line")
    if alphabet is None:
        raise SystemFileError("missing 'alphabet:' line")
    letters = set(alphabet)
    words = set()
    for tok, no in initial:
        circ = tok.startswith("^")
        body = tok[1:] if circ else tok
        if circ and not kind.circular:
            raise SystemFileError(f"circular word {tok} in a {kind.value} system", no)
        w = _word(body)
        bad = set(w) - letters
        if bad or not body:
            raise SystemFileError(f"word {tok!r} uses symbols outside the alphabet", no)
        words.add(CircWord.of(w) if kind.circular else w)
    parsed = []
    for text_, no in rules:
        r = parse_rule(kind, text_, no)
        bad = r.symbols() - letters
        if bad:
            raise SystemFileError(f"rule uses {sorted(bad)} outside the alphabet", no)
        parsed.append(r)
    if not words:
        raise SystemFileError("missing 'initial:' words")
    try:
        s = SplicingSystem(kind, letters, words, parsed,
                           self_splicing="self-splicing" in options,
                           one_splicing="one-splicing" in options)
    except SystemError_ as e:
        raise SystemFileError(str(e)) from None
    return normalize(s) if normalized else s


def parse_system(path) -> SplicingSystem:
    """Read a system file; the result is normalized."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise SystemFileError(f"cannot read {path}: {e.strerror}") from None
    return parse_system_text(text)


def print_system(s: SplicingSystem) -> str:
    lines = [f"kind: {s.kind.value}", "alphabet: " + " ".join(sorted(s.alphabet))]
    words = shortlex(s.initial | s.dropped_initial)
    lines.append("initial: " + " ".join(format_word(w) for w in words))
    for r in sorted(set(s.rules) | set(s.dropped_rules)):
        lines.append(f"rule: {r}")
    if s.self_splicing:
        lines.append("option: self-splicing")
    if s.one_splicing:
        lines.append("option: one-splicing")
    return "\n".join(lines) + "\n"
