"""Command line interface.

    splicekit enumerate FILE [--rounds N] [--work-len N] [--report-len N] [--filter RE]
    splicekit decide FILE [--dot OUT]
    splicekit compile FILE [--out OUT] [--cnf]
    splicekit member FILE WORD
    splicekit equal FILE --regex RE [--max-len N] [--dot OUT]
    splicekit corpus

FILE is a system file, or the name of a bundled example (see ``corpus``).
``member`` also accepts a grammar file.  Every command takes ``--json`` for
a machine readable report with keys command, verdict, words, certificate,
saturated and rounds.

Grammar nonterminals are named after the first and last letter of the words
they derive: ``K{a,b}`` concatenations of initial words, ``W{a,b}`` full
words, ``I{a,b}`` material inserted between an ``a`` and a ``b``.  Names in
angle brackets come from normal form conversion.  ``@`` is the empty word.

Exit status: 0 success, 1 negative answer (member, equal), 2 usage or input
error, 3 unsupported system or undecided question.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from . import automata as fa
from .decide import BOUNDED_AGREE, DIFFER, EQUAL_EXACT, UNKNOWN, decide, equal, member
from .grammar import (
    GrammarError,
    UnsupportedKind,
    compile as compile_system,
    compile_gencfg,
    cyk_member,
    parse_cfg,
)
from .regex import RegexSyntaxError
from .splicing import CrossingMismatch, GenerationBudget, SystemError_, generate
from .sysfile import SystemFileError, parse_system_text
from .words import CircWord, format_word, shortlex

OK, NEGATIVE, USAGE, UNSUPPORTED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class Unsupported(Exception):
    pass


def corpus_names() -> list[str]:
    root = resources.files("splicekit") / "corpus"
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".sys"))


def _read_input(name: str) -> str:
    path = Path(name)
    if path.is_file():
        return path.read_text(encoding="utf-8")
    stem = name[:-4] if name.endswith(".sys") else name
    if stem in corpus_names():
        return (resources.files("splicekit") / "corpus" / f"{stem}.sys").read_text(encoding="utf-8")
    raise UsageError(f"{name}: no such file or bundled example")


def load_system(name: str):
    try:
        return parse_system_text(_read_input(name))
    except SystemFileError as e:
        raise UsageError(f"{name}: {e}") from None


def _looks_like_system(text: str) -> bool:
    return any(line.strip().startswith("kind:") for line in text.splitlines())


def _word_arg(w: str) -> str:
    return "" if w == "_" else w


def _write(path: str, text: str):
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot write {path}: {e.strerror}") from None


# -- commands ----------------------------------------------------------------------
# each returns (exit code, report dict, text lines)

def report(command, verdict, words=(), certificate=None, saturated=None, rounds=None) -> dict:
    return {"command": command, "verdict": verdict, "words": list(words),
            "certificate": certificate, "saturated": saturated, "rounds": rounds}


def cmd_enumerate(args):
    s = load_system(args.file)
    try:
        budget = GenerationBudget(max_rounds=args.rounds, work_len=args.work_len,
                                  report_len=args.report_len)
    except ValueError as e:
        raise UsageError(str(e)) from None
    keep = None
    if args.filter:
        d = _regex(args.filter, s.alphabet)
        keep = d.accepts
    try:
        res = generate(s, budget)
    except CrossingMismatch as e:
        raise Unsupported(str(e)) from None
    words = shortlex(res.words)
    if keep is not None:
        words = [w for w in words
                 if any(keep(x) for x in (w.linearizations() if isinstance(w, CircWord) else [w]))]
    shown = [format_word(w) for w in words]
    verdict = "COMPLETE" if res.complete else ("SATURATED" if res.saturated else "BUDGET_EXHAUSTED")
    cert = None
    if res.dropped:
        cert = {"dropped_initial": [format_word(w) for w in shortlex(res.dropped)]}
    rep = report("enumerate", verdict, shown, cert, res.saturated, res.rounds_used)
    text = [" ".join(shown) if shown else "(none)",
            f"# {verdict.lower()}, {res.rounds_used} rounds, {len(shown)} words"
            + (" (extension semantics)" if res.extension else "")]
    return OK, rep, text


def cmd_decide(args):
    s = load_system(args.file)
    d = decide(s)
    if args.dot:
        dot = d.dot()
        if dot is None:
            raise Unsupported("no graph or automaton to export for this system")
        _write(args.dot, dot)
    cert = dict(d.certificate)
    cert["method"] = d.method
    rep = report("decide", d.verdict, (), cert)
    text = [d.verdict, f"# {d.method}: {d.certificate.get('text', '')}"]
    for comp in d.certificate.get("components", []):
        extra = ""
        if "diameter" in comp:
            extra = f" diameter={comp['diameter']} local={comp['local_diameter']}"
        text.append(f"# component {comp['letters']} transitive={comp['transitive']}{extra}")
    return (UNSUPPORTED if d.verdict == UNKNOWN else OK), rep, text


def cmd_compile(args):
    s = load_system(args.file)
    try:
        g = compile_system(s) if args.cnf else compile_gencfg(s)
    except UnsupportedKind as e:
        raise Unsupported(str(e)) from None
    except GrammarError as e:
        raise Unsupported(str(e)) from None
    body = str(g)
    if args.out:
        _write(args.out, body if body.endswith("\n") else body + "\n")
    rep = report("compile", "CNF" if args.cnf else "GRAMMAR", (), {"grammar": body.splitlines()})
    return OK, rep, ([] if args.out else body.splitlines())


def cmd_member(args):
    text = _read_input(args.file)
    w = _word_arg(args.word)
    if _looks_like_system(text):
        try:
            s = parse_system_text(text)
        except SystemFileError as e:
            raise UsageError(f"{args.file}: {e}") from None
        m = member(s, w)
        answer, method = m.member, m.method
    else:
        try:
            g = parse_cfg(text)
        except GrammarError as e:
            raise UsageError(f"{args.file}: {e}") from None
        answer = set(w) <= set(g.terminals) and cyk_member(g, w)
        method = "grammar"
    verdict = {True: "TRUE", False: "FALSE", None: UNKNOWN}[answer]
    rep = report("member", verdict, [format_word(w)], {"method": method})
    code = {True: OK, False: NEGATIVE, None: UNSUPPORTED}[answer]
    return code, rep, [verdict.lower(), f"# {method}"]


def cmd_equal(args):
    s = load_system(args.file)
    if args.max_len < 0:
        raise UsageError("--max-len must be >= 0")
    try:
        c = equal(s, args.regex, args.max_len)
    except RegexSyntaxError as e:
        raise UsageError(f"regex: {e}") from None
    if args.dot:
        if c.automaton is None:
            raise Unsupported("no exact automaton for this system")
        _write(args.dot, c.automaton.to_dot())
    cert = {"note": c.note, "bound": c.bound}
    if c.witness is not None:
        cert["witness"] = format_word(c.witness)
    rep = report("equal", c.verdict, [format_word(w) for w in c.differences], cert)
    head = c.verdict
    if c.verdict == BOUNDED_AGREE:
        head = f"{BOUNDED_AGREE}({c.bound})"
    elif c.witness is not None:
        head = f"{DIFFER}({format_word(c.witness)})"
    text = [head, f"# {c.note}"]
    if c.differences:
        text.append("# differences: " + " ".join(format_word(w) for w in c.differences))
    code = {EQUAL_EXACT: OK, BOUNDED_AGREE: OK, DIFFER: NEGATIVE}.get(c.verdict, UNSUPPORTED)
    return code, rep, text


def cmd_corpus(args):
    names = corpus_names()
    return OK, report("corpus", "OK", names), names


def _regex(expr: str, alphabet) -> fa.Dfa:
    try:
        return fa.regex_to_dfa(expr, alphabet)
    except RegexSyntaxError as e:
        raise UsageError(f"regex: {e}") from None


# -- argument parsing --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="splicekit", description=__doc__.split("\n\n")[0],
                                epilog="\n\n".join(__doc__.split("\n\n")[1:]),
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    out = argparse.ArgumentParser(add_help=False)
    fmt = out.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="json", action="store_true", help="JSON report")
    fmt.add_argument("--text", dest="json", action="store_false", help="plain text (default)")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", parents=[out], help="generate words under a budget")
    e.add_argument("file")
    e.add_argument("--rounds", type=int, default=64)
    e.add_argument("--work-len", type=int, default=10)
    e.add_argument("--report-len", type=int, default=None)
    e.add_argument("--filter", metavar="REGEX", help="keep words matching REGEX (any rotation, if circular)")
    e.set_defaults(run=cmd_enumerate)

    d = sub.add_parser("decide", parents=[out], help="decide regularity")
    d.add_argument("file")
    d.add_argument("--dot", metavar="OUT", help="write the letter graph or automaton as DOT")
    d.set_defaults(run=cmd_decide)

    c = sub.add_parser("compile", parents=[out], help="context-free grammar of the language")
    c.add_argument("file")
    c.add_argument("--out", metavar="OUT")
    c.add_argument("--cnf", action="store_true", help="Chomsky normal form")
    c.set_defaults(run=cmd_compile)

    m = sub.add_parser("member", parents=[out], help="membership of a word (_ is the empty word)")
    m.add_argument("file", help="system file, bundled example or grammar file")
    m.add_argument("word")
    m.set_defaults(run=cmd_member)

    q = sub.add_parser("equal", parents=[out], help="compare with a regular expression")
    q.add_argument("file")
    q.add_argument("--regex", required=True)
    q.add_argument("--max-len", type=int, default=8)
    q.add_argument("--dot", metavar="OUT", help="write the exact automaton as DOT")
    q.set_defaults(run=cmd_equal)

    k = sub.add_parser("corpus", parents=[out], help="list bundled examples")
    k.set_defaults(run=cmd_corpus)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    try:
        code, rep, text = args.run(args)
    except UsageError as e:
        print(f"splicekit: {e}", file=sys.stderr)
        return USAGE
    except (SystemError_, ValueError) as e:
        print(f"splicekit: {e}", file=sys.stderr)
        return USAGE
    except Unsupported as e:
        print(f"splicekit: unsupported: {e}", file=sys.stderr)
        return UNSUPPORTED
    if args.json:
        print(json.dumps(rep, ensure_ascii=False))
    else:
        for line in text:
            print(line)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
