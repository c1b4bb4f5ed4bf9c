"""Line-oriented text formats for machines and semilinear sets.

Every file starts with ``machine NAME`` and ``kind mhfa|pcfa|tm``.  One
declaration per line, tokens separated by whitespace, ``#`` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .constructions.turing import LEFT, RIGHT, STAY, TuringMachine
from .core import (
    LAMBDA,
    ONE_WAY,
    PARTIALLY_BLIND,
    PLAIN,
    RESERVED_TOKENS,
    RIGHT_END,
    SENSING,
    TWO_WAY,
    MultiHeadAutomaton,
)
from .errors import ParseError
from .pcfa import NON_RETURNING, RETURNING, PcfaComponent, PcfaSystem, query_state_names
from .semilinear import LinearSet, SemilinearSet

KINDS = ("mhfa", "pcfa", "tm")
TM_MOVES = {"L": LEFT, "N": STAY, "R": RIGHT}
TM_MOVE_NAMES = {v: k for k, v in TM_MOVES.items()}

Machine = Union[MultiHeadAutomaton, PcfaSystem, TuringMachine]


@dataclass(frozen=True)
class Document:
    name: str
    machine: object

    @property
    def kind(self):
        return kind_of(self.machine)


def kind_of(machine):
    if isinstance(machine, MultiHeadAutomaton):
        return "mhfa"
    if isinstance(machine, PcfaSystem):
        return "pcfa"
    if isinstance(machine, TuringMachine):
        return "tm"
    raise TypeError(f"not a machine: {machine!r}")


def _lines(text):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


class _Decls:
    """Collects single-occurrence declarations for one section."""

    def __init__(self, section):
        self.section = section
        self.values = {}
        self.lines = {}

    def set(self, no, key, value):
        if key in self.values:
            raise ParseError(f"duplicate declaration {key!r}{self.section}", no, key)
        self.values[key] = value
        self.lines[key] = no

    def need(self, key, no_default=None):
        if key not in self.values:
            raise ParseError(f"missing declaration {key!r}{self.section}", no_default)
        return self.values[key]

    def get(self, key, default=None):
        return self.values.get(key, default)


def _one(no, toks):
    if len(toks) != 2:
        raise ParseError(f"{toks[0]!r} takes exactly one value", no, toks[0])
    return toks[1]


def _int(no, tok, what):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{what} must be an integer", no, tok) from None


def _symbols(no, toks, reserved):
    for t in toks:
        if t in reserved:
            raise ParseError("reserved token declared as an input symbol", no, t)
    if len(set(toks)) != len(toks):
        raise ParseError("repeated symbol", no, next(t for t in toks if toks.count(t) > 1))
    return tuple(toks)


def parse_document(text: str) -> Document:
    lines = list(_lines(text))
    if len(lines) < 2:
        raise ParseError("expected 'machine NAME' and 'kind ...' header lines", lines[0][0] if lines else 1)
    (no1, h1), (no2, h2) = lines[0], lines[1]
    if h1[0] != "machine" or len(h1) != 2:
        raise ParseError("first line must be 'machine NAME'", no1, h1[0])
    if h2[0] != "kind" or len(h2) != 2 or h2[1] not in KINDS:
        raise ParseError("second line must be 'kind mhfa|pcfa|tm'", no2, " ".join(h2))
    body = lines[2:]
    parser = {"mhfa": _parse_mhfa, "pcfa": _parse_pcfa, "tm": _parse_tm}[h2[1]]
    return Document(h1[1], parser(body, no2))


def parse_machine_file(text: str) -> Machine:
    return parse_document(text).machine


# --------------------------------------------------------------------------- #
# mhfa


def _parse_partition(no, tok, k):
    if not (tok.startswith("{") and tok.endswith("}")):
        raise ParseError("partition must look like {1,2}{3}", no, tok)
    blocks = []
    for chunk in tok[1:-1].split("}{"):
        try:
            blocks.append(tuple(sorted(int(x) for x in chunk.split(","))))
        except ValueError:
            raise ParseError("partition blocks hold head numbers", no, tok) from None
    heads = sorted(h for b in blocks for h in b)
    if heads != list(range(1, k + 1)):
        raise ParseError(f"partition must cover heads 1..{k} exactly once", no, tok)
    return tuple(sorted(blocks))


def _parse_mhfa(body, header_no):
    d = _Decls("")
    trans = []
    for no, toks in body:
        key = toks[0]
        if key == "trans":
            trans.append((no, toks))
        elif key in ("direction", "heads", "flavor", "designated-head", "initial"):
            d.set(no, key, _one(no, toks))
        elif key in ("alphabet", "states", "accepting"):
            d.set(no, key, toks[1:])
        else:
            raise ParseError("unknown declaration", no, key)
    direction = d.need("direction", header_no)
    if direction not in (ONE_WAY, TWO_WAY):
        raise ParseError("direction must be one-way or two-way", d.lines["direction"], direction)
    k = _int(d.lines.get("heads"), d.need("heads", header_no), "heads")
    if k < 1:
        raise ParseError("heads must be at least 1", d.lines["heads"], str(k))
    flavor = d.get("flavor", PLAIN)
    if flavor not in (PLAIN, SENSING, PARTIALLY_BLIND):
        raise ParseError("flavor must be plain, sensing or partially-blind", d.lines["flavor"], flavor)
    designated = None
    if flavor == PARTIALLY_BLIND:
        designated = _int(d.lines.get("designated-head"), d.need("designated-head", header_no), "designated-head")
    elif "designated-head" in d.values:
        raise ParseError("designated-head requires flavor partially-blind", d.lines["designated-head"])
    alphabet = _symbols(d.lines.get("alphabet"), d.need("alphabet", header_no), RESERVED_TOKENS)
    states = tuple(d.need("states", header_no))
    initial = d.need("initial", header_no)
    accepting = tuple(d.get("accepting", ()))

    table = {}
    arity = 7 if flavor == SENSING else 6
    form = "trans STATE s1,..,sk " + ("{..}{..} " if flavor == SENSING else "") + "-> STATE d1,..,dk"
    for no, toks in trans:
        if len(toks) != arity or toks[-3] != "->":
            raise ParseError(f"expected '{form}'", no, " ".join(toks))
        src, syms, tgt, moves = toks[1], toks[2].split(","), toks[-2], toks[-1].split(",")
        if len(syms) != k:
            raise ParseError(f"{len(syms)} scanned symbols for {k} heads", no, toks[2])
        if len(moves) != k:
            raise ParseError(f"{len(moves)} moves for {k} heads", no, toks[-1])
        try:
            moves = tuple(int(x) for x in moves)
        except ValueError:
            raise ParseError("moves must be -1, 0 or 1", no, toks[-1]) from None
        if any(x not in (-1, 0, 1) for x in moves):
            raise ParseError("moves must be -1, 0 or 1", no, toks[-1])
        key = (src, tuple(syms))
        if flavor == SENSING:
            key = key + (_parse_partition(no, toks[3], k),)
        table.setdefault(key, set()).add((tgt, moves))
    return MultiHeadAutomaton(
        states=states,
        input_alphabet=alphabet,
        head_count=k,
        transitions=table,
        initial_state=initial,
        accepting_states=accepting,
        direction=direction,
        flavor=flavor,
        designated_head=designated,
    )


def _render_partition(part):
    return "".join("{" + ",".join(map(str, b)) + "}" for b in part)


def _symbol_rank(alphabet):
    order = {s: i for i, s in enumerate(("<",) + tuple(alphabet) + (RIGHT_END, LAMBDA))}
    return lambda s: (order.get(s, len(order)), s)


def _render_mhfa(m):
    srank = {s: i for i, s in enumerate(m.states)}
    yrank = _symbol_rank(m.input_alphabet)
    out = [
        f"direction {m.direction}",
        f"heads {m.head_count}",
    ]
    if m.flavor != PLAIN:
        out.append(f"flavor {m.flavor}")
    if m.flavor == PARTIALLY_BLIND:
        out.append(f"designated-head {m.designated_head}")
    out += [
        "alphabet " + " ".join(m.input_alphabet),
        "states " + " ".join(m.states),
        f"initial {m.initial_state}",
        "accepting " + " ".join(s for s in m.states if s in m.accepting_states),
    ]

    def key_order(key):
        return (srank.get(key[0], len(srank)), [yrank(s) for s in key[1]], key[2:])

    for key in sorted(m.transitions, key=key_order):
        lhs = f"trans {key[0]} {','.join(key[1])}"
        if m.flavor == SENSING:
            lhs += " " + _render_partition(key[2])
        for tgt, moves in sorted(m.transitions[key], key=lambda im: (srank.get(im[0], len(srank)), im[1])):
            out.append(f"{lhs} -> {tgt} {','.join(map(str, moves))}")
    return out


# --------------------------------------------------------------------------- #
# pcfa


def _parse_pcfa(body, header_no):
    top = _Decls("")
    comps = []
    cur = None
    for no, toks in body:
        key = toks[0]
        if key == "component":
            idx = _int(no, _one(no, toks), "component index")
            if idx != len(comps) + 1:
                raise ParseError(f"expected component {len(comps) + 1}", no, toks[1])
            cur = (_Decls(f" in component {idx}"), [], no)
            comps.append(cur)
        elif cur is None:
            if key in ("mode", "centralized", "components"):
                top.set(no, key, _one(no, toks))
            elif key == "alphabet":
                top.set(no, key, toks[1:])
            else:
                raise ParseError("unknown declaration", no, key)
        elif key == "trans":
            if len(toks) != 5 or toks[3] != "->":
                raise ParseError("expected 'trans STATE SYM -> STATE'", no, " ".join(toks))
            cur[1].append((no, toks))
        elif key in ("states", "accepting"):
            cur[0].set(no, key, toks[1:])
        elif key == "initial":
            cur[0].set(no, key, _one(no, toks))
        else:
            raise ParseError("unknown declaration", no, key)
    mode = top.need("mode", header_no)
    if mode not in (RETURNING, NON_RETURNING):
        raise ParseError("mode must be returning or non-returning", top.lines["mode"], mode)
    central = top.need("centralized", header_no)
    if central not in ("true", "false"):
        raise ParseError("centralized must be true or false", top.lines["centralized"], central)
    k = _int(top.lines.get("components"), top.need("components", header_no), "components")
    if k != len(comps):
        raise ParseError(f"declared {k} components but found {len(comps)}", top.lines["components"])
    reserved = set(RESERVED_TOKENS) | set(query_state_names(k))
    alphabet = _symbols(top.lines.get("alphabet"), top.need("alphabet", header_no), reserved)
    readable = set(alphabet) | {LAMBDA, RIGHT_END}
    components = []
    for decls, trans, cno in comps:
        table = {}
        for no, toks in trans:
            if toks[2] not in readable:
                raise ParseError("transition symbol must be an input symbol, @ or >", no, toks[2])
            table.setdefault((toks[1], toks[2]), set()).add(toks[4])
        components.append(
            PcfaComponent(
                states=tuple(decls.need("states", cno)),
                transitions=table,
                initial_state=decls.need("initial", cno),
                accepting_states=tuple(decls.get("accepting", ())),
            )
        )
    return PcfaSystem(input_alphabet=alphabet, components=components, mode=mode, centralized=central == "true")


def _render_pcfa(sys):
    out = [
        "alphabet " + " ".join(sys.input_alphabet),
        f"mode {sys.mode}",
        f"centralized {'true' if sys.centralized else 'false'}",
        f"components {sys.degree}",
    ]
    yrank = _symbol_rank(sys.input_alphabet)
    for i, comp in enumerate(sys.components, start=1):
        srank = {s: j for j, s in enumerate(comp.states)}
        out += [
            f"component {i}",
            "states " + " ".join(comp.states),
            f"initial {comp.initial_state}",
            "accepting " + " ".join(s for s in comp.states if s in comp.accepting_states),
        ]
        for key in sorted(comp.transitions, key=lambda k: (srank.get(k[0], len(srank)), yrank(k[1]))):
            for tgt in sorted(comp.transitions[key], key=lambda s: (srank.get(s, len(srank)), s)):
                out.append(f"trans {key[0]} {key[1]} -> {tgt}")
    return out


# --------------------------------------------------------------------------- #
# tm


def _parse_tm(body, header_no):
    d = _Decls("")
    trans = []
    for no, toks in body:
        key = toks[0]
        if key == "trans":
            if len(toks) != 7 or toks[3] != "->":
                raise ParseError("expected 'trans STATE READ -> STATE WRITE L|N|R'", no, " ".join(toks))
            if toks[6] not in TM_MOVES:
                raise ParseError("move must be L, N or R", no, toks[6])
            trans.append((no, toks))
        elif key in ("blank", "initial"):
            d.set(no, key, _one(no, toks))
        elif key in ("states", "tape-alphabet", "input-alphabet", "accepting"):
            d.set(no, key, toks[1:])
        else:
            raise ParseError("unknown declaration", no, key)
    table = {}
    for no, toks in trans:
        key = (toks[1], toks[2])
        if key in table:
            raise ParseError("Turing machines are deterministic; repeated left-hand side", no, f"{toks[1]} {toks[2]}")
        table[key] = (toks[4], toks[5], TM_MOVES[toks[6]])
    return TuringMachine(
        states=tuple(d.need("states", header_no)),
        tape_alphabet=tuple(d.need("tape-alphabet", header_no)),
        blank=d.need("blank", header_no),
        input_alphabet=tuple(d.need("input-alphabet", header_no)),
        transitions=table,
        initial_state=d.need("initial", header_no),
        accepting_states=tuple(d.get("accepting", ())),
    )


def _render_tm(tm):
    srank = {s: i for i, s in enumerate(tm.states)}
    trank = {s: i for i, s in enumerate(tm.tape_alphabet)}
    out = [
        "states " + " ".join(tm.states),
        "tape-alphabet " + " ".join(tm.tape_alphabet),
        f"blank {tm.blank}",
        "input-alphabet " + " ".join(tm.input_alphabet),
        f"initial {tm.initial_state}",
        "accepting " + " ".join(s for s in tm.states if s in tm.accepting_states),
    ]
    for key in sorted(tm.transitions, key=lambda k: (srank.get(k[0], len(srank)), trank.get(k[1], len(trank)))):
        tgt, write, move = tm.transitions[key]
        out.append(f"trans {key[0]} {key[1]} -> {tgt} {write} {TM_MOVE_NAMES[move]}")
    return out


def render_machine(machine, name="M") -> str:
    kind = kind_of(machine)
    body = {"mhfa": _render_mhfa, "pcfa": _render_pcfa, "tm": _render_tm}[kind](machine)
    return "\n".join(line.rstrip() for line in [f"machine {name}", f"kind {kind}"] + body) + "\n"


def render_document(doc: Document) -> str:
    return render_machine(doc.machine, doc.name)


# --------------------------------------------------------------------------- #
# semilinear sets


def parse_semilinear(text: str) -> SemilinearSet:
    """``dimension N`` (optional) and lines ``linear base v1 .. vn ; periods p1 .. pn | ...``."""
    dim = None
    comps = []
    for no, toks in _lines(text):
        if toks[0] == "dimension":
            if dim is not None or comps:
                raise ParseError("dimension must come first and only once", no, toks[0])
            dim = _int(no, _one(no, toks), "dimension")
            continue
        if toks[0] != "linear" or len(toks) < 2 or toks[1] != "base":
            raise ParseError("expected 'linear base ...'", no, toks[0])
        rest = toks[2:]
        if ";" in rest:
            cut = rest.index(";")
            base_toks, tail = rest[:cut], rest[cut + 1 :]
            if not tail or tail[0] != "periods":
                raise ParseError("expected 'periods' after ';'", no, tail[0] if tail else ";")
            groups = [[]]
            for t in tail[1:]:
                if t == "|":
                    groups.append([])
                else:
                    groups[-1].append(t)
        else:
            base_toks, groups = rest, []
        base = tuple(_nonneg(no, t) for t in base_toks)
        periods = [tuple(_nonneg(no, t) for t in g) for g in groups if g or len(groups) > 1]
        if dim is None:
            dim = len(base)
        for v in [base] + periods:
            if len(v) != dim:
                raise ParseError(f"vector of dimension {len(v)} in a {dim}-dimensional set", no)
        comps.append(LinearSet(base, tuple(periods)))
    if dim is None:
        raise ParseError("empty set file needs a 'dimension N' line", 1)
    return SemilinearSet(dim, tuple(comps))


def _nonneg(no, tok):
    v = _int(no, tok, "vector entries")
    if v < 0:
        raise ParseError("vector entries must be non-negative", no, tok)
    return v


def render_semilinear(s: SemilinearSet) -> str:
    out = [f"dimension {s.dimension}"]
    for c in s.components:
        line = "linear base " + " ".join(map(str, c.base))
        if c.periods:
            line += " ; periods " + " | ".join(" ".join(map(str, p)) for p in c.periods)
        out.append(line)
    return "\n".join(out) + "\n"
