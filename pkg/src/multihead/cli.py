"""Command-line interface.

Exit codes: 0 accept/equal/consistent/yes, 1 reject/counterexample/no,
2 usage or parse error, 3 validation error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import constructions as cons
from . import core, pcfa, semilinear, variants
from .errors import ConformanceError, ObliviousnessViolation, ParseError, UsageError, ValidationError
from .formats import Document, parse_document, parse_semilinear, render_machine

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_INVALID = 0, 1, 2, 3
DEFAULT_MAX_STEPS = 10_000
EMPTY_WORD = core.LAMBDA


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _read(path):
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def load(path, kinds=None) -> Document:
    doc = parse_document(_read(path))
    if kinds and doc.kind not in kinds:
        raise UsageError(f"{path}: expected a {' or '.join(kinds)} file, got {doc.kind}")
    m = doc.machine
    if doc.kind == "mhfa":
        core.ensure_valid(m)
    elif doc.kind == "pcfa":
        pcfa.ensure_valid_system(m)
    else:
        cons.ensure_conforming(m)
    return doc


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _word_arg(text):
    return () if text in ("", EMPTY_WORD) else core.parse_word(text)


def _show(word):
    return core.format_word(word) if word else EMPTY_WORD


# --------------------------------------------------------------------------- #
# subcommands


def cmd_run(args):
    doc = load(args.file)
    m = doc.machine
    word = _word_arg(args.input)
    kind = doc.kind
    if kind == "tm":
        run = cons.tm_run(m, word, args.max_steps)
        if args.trace:
            for t, conf in enumerate(run.history):
                print(f"t={t} conf={''.join(conf)}")
        for v in run.violations:
            print(f"violation: {v}", file=sys.stderr)
        print(run.outcome.value)
        return EXIT_OK if run.outcome == cons.Outcome.ACCEPTED else EXIT_NO
    verdict = m.accepts(word)
    if args.trace:
        if kind == "mhfa" and core.is_deterministic(m):
            trace = core.run_deterministic(m, word, args.max_steps)
            for t, c in enumerate(trace.configurations):
                print(f"t={t} state={c.state} heads={','.join(map(str, c.positions))}")
            print(f"end={trace.termination.value}")
        elif kind == "pcfa" and pcfa.is_deterministic_system(m):
            configs, term = pcfa.pcfa_run_deterministic(m, word, args.max_steps)
            for t, c in enumerate(configs):
                print(f"t={t} states={','.join(c.states)} heads={','.join(map(str, c.positions))}")
            print(f"end={term.value}")
        else:
            print("trace unavailable: machine is nondeterministic", file=sys.stderr)
    print("accept" if verdict else "reject")
    return EXIT_OK if verdict else EXIT_NO


def _acceptor(path):
    return load(path, ("mhfa", "pcfa")).machine


def cmd_enumerate(args):
    m = _acceptor(args.file)
    alphabet = args.alphabet.split(",") if args.alphabet else None
    for w in core.enumerate_words(m, args.max_len, alphabet):
        print(_show(w))
    return EXIT_OK


def cmd_compare(args):
    m1, m2 = _acceptor(args.file1), _acceptor(args.file2)
    diff = core.equivalent_up_to(m1, m2, args.max_len)
    if diff is None:
        print("equal")
        return EXIT_OK
    print(_show(diff))
    return EXIT_NO


def cmd_check(args):
    doc = load(args.file, ("mhfa", "pcfa"))
    m = doc.machine
    prop = args.property
    if doc.kind == "pcfa":
        if prop != "deterministic":
            raise UsageError(f"property {prop} applies to mhfa files only")
        ok, why = pcfa.is_deterministic_system(m), "a component is nondeterministic"
    elif prop == "deterministic":
        ok, why = core.is_deterministic(m), "some transition has several images"
    elif prop == "one-way":
        ok, why = m.direction == core.ONE_WAY, f"direction is {m.direction}"
        if ok:
            bad = [k for k, imgs in m.transitions.items() if any(-1 in d for _, d in imgs)]
            ok, why = not bad, "a transition moves a head left"
    elif prop == "data-independent":
        if args.max_len is None:
            raise UsageError("--max-len is required for data-independent")
        steps = args.max_steps or variants.default_step_budget(m, args.max_len)
        v = variants.check_data_independent(m, args.max_len, steps)
        ok, why = v is None, str(v)
    else:
        head = args.designated_head or m.designated_head
        if head is None:
            raise UsageError("--designated-head is required")
        ok, why = variants.validate_partially_blind(m, head), f"heads other than {head} read input symbols"
    print("yes" if ok else f"no: {why}")
    return EXIT_OK if ok else EXIT_NO


def cmd_compile(args):
    doc = load(args.file, (args.source,))
    if (args.source, args.to) == ("tm", "valc-acceptor"):
        out = cons.build_valc_acceptor(doc.machine)
    elif (args.source, args.to) == ("pcfa", "mhfa"):
        out = pcfa.compile_pcfa_to_mhfa(doc.machine)
    else:
        raise UsageError(f"no compiler from {args.source} to {args.to}")
    _emit(render_machine(out, f"{doc.name}-{args.to}"), args.output)
    return EXIT_OK


def cmd_determinize(args):
    doc = load(args.file, ("mhfa",))
    out = variants.determinize_oblivious(doc.machine, args.max_len, args.max_steps)
    _emit(render_machine(out, f"{doc.name}-det"), args.output)
    return EXIT_OK


def cmd_witness(args):
    if args.language in ("ln", "lnm") and args.heads is None:
        raise UsageError(f"witness {args.language} needs --heads")
    if args.language == "ln":
        out, name = cons.build_ln_acceptor(args.heads), f"ln{args.heads}"
    elif args.language == "l2":
        out, name = cons.build_l2_acceptor(), "l2"
    else:
        if not args.tm:
            raise UsageError("witness lnm needs --tm")
        tm = load(args.tm, ("tm",))
        out, name = cons.build_lnm_acceptor(args.heads, tm.machine), f"lnm{args.heads}-{tm.name}"
    _emit(render_machine(out, name), args.output)
    return EXIT_OK


def cmd_parikh(args):
    m = load(args.file, ("mhfa",)).machine
    if args.semilinear:
        s = parse_semilinear(_read(args.semilinear))
        cx = semilinear.compare_semilinear(m, s, args.max_len)
        if cx is None:
            print("consistent")
            return EXIT_OK
        print(cx)
        return EXIT_NO
    for v in semilinear.parikh_image(m, args.max_len):
        print("(" + ",".join(map(str, v)) + ")")
    return EXIT_OK


# --------------------------------------------------------------------------- #


def _nonneg(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser():
    p = _Parser(prog="multihead", description="Multi-head finite automata toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("run", help="decide one word")
    s.add_argument("file")
    s.add_argument("--input", required=True, help=f"the word; '{EMPTY_WORD}' or '' for the empty word")
    s.add_argument("--trace", action="store_true")
    s.add_argument("--max-steps", type=_nonneg, default=DEFAULT_MAX_STEPS)
    s.set_defaults(func=cmd_run)

    s = sub.add_parser("enumerate", help="list accepted words in length-lex order")
    s.add_argument("file")
    s.add_argument("--max-len", type=_nonneg, required=True)
    s.add_argument("--alphabet", help="comma-separated subset of the input alphabet")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("compare", help="bounded language equivalence")
    s.add_argument("file1")
    s.add_argument("file2")
    s.add_argument("--max-len", type=_nonneg, required=True)
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("check", help="test a structural property")
    s.add_argument("file")
    s.add_argument(
        "--property", required=True, choices=("deterministic", "one-way", "data-independent", "partially-blind")
    )
    s.add_argument("--max-len", type=_nonneg)
    s.add_argument("--max-steps", type=_nonneg)
    s.add_argument("--designated-head", type=int)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("compile", help="tm -> valc-acceptor, pcfa -> mhfa")
    s.add_argument("--from", dest="source", required=True, choices=("tm", "pcfa"))
    s.add_argument("--to", required=True, choices=("valc-acceptor", "mhfa"))
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_compile)

    s = sub.add_parser("determinize", help="power-set construction for data-independent machines")
    s.add_argument("file")
    s.add_argument("--max-len", type=_nonneg, required=True)
    s.add_argument("--max-steps", type=_nonneg)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_determinize)

    s = sub.add_parser("witness", help="build a hierarchy witness acceptor")
    s.add_argument("language", choices=("ln", "l2", "lnm"))
    s.add_argument("--heads", type=int)
    s.add_argument("--tm")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("parikh", help="Parikh image, optionally against a semilinear set")
    s.add_argument("file")
    s.add_argument("--max-len", type=_nonneg, required=True)
    s.add_argument("--semilinear")
    s.set_defaults(func=cmd_parikh)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValidationError, ConformanceError, ObliviousnessViolation) as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
