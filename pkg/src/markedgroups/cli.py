"""Command-line front end.

Output is JSON (compact, sorted keys) unless a command says otherwise, so
identical invocations print identical bytes.  Exit codes: 0 Verified or
true, 1 Refuted or false, 2 Unknown, 3 malformed input.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Optional, Sequence

from . import clopen, machines, markov, metric, miller, properties
from .oracle import cyclic_sequence, limit, markings_sequence
from .oracle.group import SpecError, bit
from .parsing import format_word, parse_clopen, parse_group, parse_named_presentation, parse_word
from .verdict import Status, Verdict
from .words import MalformedInput, word_at

EXIT = {Status.VERIFIED: 0, Status.REFUTED: 1, Status.UNKNOWN: 2}
MALFORMED = 3


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _emit(obj) -> None:
    print(dumps(obj))


def _verdict(v: Verdict) -> int:
    _emit(v.to_dict())
    return EXIT[v.status]


def _answer(flag: bool, payload: dict) -> int:
    _emit(payload)
    return 0 if flag else 1


# -- commands -------------------------------------------------------------------------

def cmd_dist(args) -> int:
    d = metric.distance(parse_group(args.g), parse_group(args.h), args.bits)
    _emit(d.to_dict())
    return 0


def cmd_cdist(args) -> int:
    d = metric.cayley_distance(parse_group(args.g), parse_group(args.h), args.radius)
    _emit(d.to_dict())
    return 0


def cmd_ball(args) -> int:
    g = parse_group(args.group)
    b = metric.ball(g, args.radius)
    text = b.to_dot(g.name) if args.dot is not None else dumps(b.to_dict()) + "\n"
    target = args.dot if args.dot not in (None, "-") else None
    if target:
        with open(target, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_bit(args) -> int:
    g = parse_group(args.group)
    w = word_at(args.n, g.rank) if g.rank else ()
    value = bit(g, args.n)
    return _answer(bool(value), {"bit": value, "index": args.n, "word": format_word(w)})


def cmd_prop(args) -> int:
    g = parse_group(args.group)
    name = args.name
    if name == "nilpotent":
        return _verdict(properties.nilpotent_verdict(g, args.c))
    if name == "card":
        return _verdict(properties.card_verdict(g, args.n))
    if name == "rank":
        return _verdict(properties.rank_at_most_semidecide(g, args.j, args.fuel))
    if name == "hyperbolic":
        return _verdict(properties.not_delta_hyperbolic(g, args.delta, args.radius))
    if name == "abelian":
        return _verdict(properties.abelian_verdict(g))
    return _verdict(properties.PROPERTIES[name](g, args.fuel))


_SET = re.compile(r"\{[^{}]*\}")


def _sets(text: str, rank: Optional[int]) -> list[clopen.BasicClopenSet]:
    """One or more ``{R: ... | S: ...}`` blocks; a union when several."""
    blocks = _SET.findall(text)
    if not blocks or _SET.sub("", text).replace("+", "").strip():
        raise MalformedInput(f"expected clopen sets like '{{R: ab | S: ba}}', got {text!r}")
    parsed = [parse_clopen(b, rank) for b in blocks]
    if rank is None:
        rank = max((abs(x) for rels, irrels in parsed for w in rels + irrels for x in w), default=0)
    return [clopen.BasicClopenSet(rank, tuple(r), tuple(s)) for r, s in parsed]


def cmd_clopen(args) -> int:
    if args.action == "member":
        g = parse_group(args.first)
        (omega,) = _sets(args.second, g.rank)
        return _answer(clopen.member(g, omega), {"member": clopen.member(g, omega), "set": omega.to_dict()})
    if args.action == "incoherent":
        if args.second is not None:
            raise MalformedInput("incoherent takes one clopen set")
        (omega,) = _sets(args.first, args.rank)
        return _verdict(clopen.incoherent_semidecide(omega, args.fuel))
    if args.second is None:
        raise MalformedInput("subset takes two unions of clopen sets")
    u = _sets(args.first, args.rank)
    rank = args.rank if args.rank is not None else u[0].rank
    v = _sets(args.second, rank)
    if any(s.rank != rank for s in u):
        u = [clopen.BasicClopenSet(max(rank, v[0].rank), s.relations, s.irrelations) for s in u]
    return _verdict(clopen.inclusion_semidecide(u, v, args.fuel))


_SEQUENCES = {"cyclic": cyclic_sequence, "markings": markings_sequence}


def cmd_limit(args) -> int:
    seq = _SEQUENCES[args.sequence]()
    lim = limit(seq)
    bits = "".join(str(lim.bit(n)) for n in range(args.bits))
    expected = "".join(str(seq.declared_limit.bit(n)) for n in range(args.bits))
    return _answer(bits == expected, {"sequence": seq.name, "limit_bits": bits,
                                      "declared_limit": seq.declared_limit.name,
                                      "agrees": bits == expected})


def cmd_markov(args) -> int:
    seq = _SEQUENCES[args.sequence]()
    machine = markov.builtin_machine(args.machine)
    gamma = markov.diagonal_group(seq, machine)
    target = seq.declared_limit
    scanned = "".join(str(gamma.bit(n)) for n in range(args.scan_bits))
    agree = all(gamma.bit(n) == target.bit(n) for n in range(args.scan_bits))
    v = markov.distinguish_semidecide(gamma, target, args.fuel)
    _emit({"machine": str(machine), "sequence": seq.name, "limit": target.name,
           "bits": scanned, "agrees_with_limit": agree, "distinguish": v.to_dict()})
    return EXIT[v.status]


def _base(text: str) -> miller.Presentation:
    names, relators = parse_named_presentation(text)
    return miller.Presentation(len(names), tuple(relators), tuple(names))


def cmd_miller(args) -> int:
    if args.action == "gen":
        base = _base(args.base)
        out = miller.step3_presentation(base, parse_word(args.w, base.rank, base.names))
        if args.emit == "l3":
            print(out.l3)
        else:
            fmt = out.l3.format
            print("{R: " + ", ".join(map(fmt, out.pi.relations)) + " | S: "
                  + ", ".join(map(fmt, out.pi.irrelations)) + "}")
        return 0
    if args.action == "wp":
        g = parse_group(args.base)
        w = parse_word(args.w, g.rank)
        l3 = miller.l3_wp(g, w)
        q = parse_word(args.query, l3.rank)
        flag = l3.is_relation(q)
        return _answer(flag, {"query": format_word(q), "relation": flag})
    base = _base(args.base)
    w = parse_word(args.w, base.rank, base.names)
    out = miller.step3_presentation(base, w)
    extra = w if args.extra is None else parse_word(args.extra, out.l3.rank, out.l3.names)
    return _verdict(miller.trivializes(out, extra, args.fuel))


def cmd_machine(args) -> int:
    text = args.program
    program = machines.decode(int(text)) if text.isdigit() else machines.Program.parse(text)
    result = machines.run_bounded(program, args.input, args.steps)
    if isinstance(result, machines.Halted):
        _emit({"halted": True, "output": result.output, "steps": result.steps})
        return 0
    _emit({"halted": False, "steps": result.steps})
    return 2


# -- parser ---------------------------------------------------------------------------

def _natural(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("expected a nonnegative integer")
    return value


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(MALFORMED, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    fuel = _Parser(add_help=False)
    fuel.add_argument("--fuel", type=_natural, default=10 ** 5)
    fuel.add_argument("--json", action="store_true", help="JSON output (the default)")

    p = _Parser(prog="markedgroups", description="Marked groups as word-problem oracles.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("dist", help="bit-comparison distance")
    s.add_argument("g")
    s.add_argument("h")
    s.add_argument("--bits", type=_natural, default=64)
    s.set_defaults(run=cmd_dist)

    s = sub.add_parser("cdist", help="Cayley-ball distance")
    s.add_argument("g")
    s.add_argument("h")
    s.add_argument("--radius", type=_natural, default=8)
    s.set_defaults(run=cmd_cdist)

    s = sub.add_parser("ball", help="Cayley ball as JSON or DOT")
    s.add_argument("group")
    s.add_argument("radius", type=_natural)
    s.add_argument("--dot", nargs="?", const="-", default=None, metavar="FILE")
    s.add_argument("--json", action="store_true")
    s.set_defaults(run=cmd_ball)

    s = sub.add_parser("bit", help="one bit of the word-problem sequence")
    s.add_argument("group")
    s.add_argument("n", type=_natural)
    s.set_defaults(run=cmd_bit)

    names = sorted(properties.PROPERTIES) + ["card", "hyperbolic", "nilpotent", "rank"]
    s = sub.add_parser("prop", parents=[fuel], help="property verdict")
    s.add_argument("name", choices=names)
    s.add_argument("group")
    s.add_argument("--delta", type=_natural, default=1)
    s.add_argument("--radius", type=_natural, default=8)
    s.add_argument("--c", type=_natural, default=1, help="nilpotency class bound")
    s.add_argument("--n", type=_natural, default=1, help="cardinality bound")
    s.add_argument("--j", type=_natural, default=1, help="rank bound")
    s.set_defaults(run=cmd_prop)

    s = sub.add_parser("clopen", parents=[fuel], help="basic clopen sets")
    s.add_argument("action", choices=["member", "incoherent", "subset"])
    s.add_argument("first", help="group (member), clopen set, or union of sets")
    s.add_argument("second", nargs="?")
    s.add_argument("--rank", type=_natural)
    s.set_defaults(run=cmd_clopen)

    s = sub.add_parser("limit", help="limit oracle of a named sequence")
    s.add_argument("sequence", choices=sorted(_SEQUENCES))
    s.add_argument("--bits", type=_natural, default=64)
    s.set_defaults(run=cmd_limit)

    s = sub.add_parser("markov", parents=[fuel], help="diagonal groups")
    s.add_argument("action", choices=["demo"])
    s.add_argument("--sequence", choices=sorted(_SEQUENCES), default="cyclic")
    s.add_argument("--machine", default="builtin:loop")
    s.add_argument("--scan-bits", type=_natural, default=64)
    s.set_defaults(run=cmd_markov)

    s = sub.add_parser("miller", parents=[fuel], help="the collapsing gadget")
    s.add_argument("action", choices=["gen", "wp", "trivialize"])
    s.add_argument("--base", help="presentation (gen, trivialize) or group expression (wp)")
    s.add_argument("--w")
    s.add_argument("--emit", choices=["pi", "l3"], default="l3")
    s.add_argument("--query")
    s.add_argument("--extra", help="relator added before trivializing (default: w)")
    s.set_defaults(run=cmd_miller)

    s = sub.add_parser("machine", help="counter machines")
    s.add_argument("action", choices=["run"])
    s.add_argument("program", help="program text or index")
    s.add_argument("input", type=_natural)
    s.add_argument("--steps", type=_natural, default=10 ** 4)
    s.set_defaults(run=cmd_machine)
    return p


_MILLER_DEFAULTS = {"gen": ("<x | >", "x"), "wp": ("Z", "a"), "trivialize": ("<x | >", "x")}


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:  # usage errors exit 3, --help exits 0
        return int(e.code or 0)
    if args.command == "miller":
        base, w = _MILLER_DEFAULTS[args.action]
        args.base = args.base or base
        args.w = args.w or w
        if args.action == "wp" and args.query is None:
            print("markedgroups miller wp: --query is required", file=sys.stderr)
            return MALFORMED
    try:
        return args.run(args)
    except (MalformedInput, SpecError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return MALFORMED


if __name__ == "__main__":
    sys.exit(main())
