"""Diagonal marked groups from a regulated sequence and a machine.

``diagonal_group(seq, machine)`` agrees with the limit of ``seq`` for as
long as the machine runs on input 0.  If it halts at step ``p``, every bit
from ``p`` on is read from the member ``seq.at(seq.regulator(p))`` instead.
That member already agrees with the limit on bits ``0..p-1``, so the result
is exactly that member.  Telling the two outcomes apart is therefore as
hard as the halting problem, while each single bit is computable.
"""
from __future__ import annotations

from typing import Optional, Union

from .machines import Program, Execution, as_program, halt_at, looping_programs
from .oracle.group import GroupSequence, MarkedGroup, SpecError
from .oracle.limits import limit
from .verdict import Fuel, OutOfFuel, Verdict
from .words import MalformedInput, shortlex_index, word_at

__all__ = [
    "diagonal_group", "diagonal_sequence", "distinguish_semidecide", "builtin_machine",
    "BUILTIN_LOOPING", "BUILTIN_HALTING",
]

BUILTIN_LOOPING: list[Program] = looping_programs(10)
BUILTIN_HALTING: list[Program] = [halt_at(p) for p in range(1, 11)]


def builtin_machine(text: str) -> Union[int, Program]:
    """``"17"`` (an index), ``"builtin:loop"``, ``"builtin:loop@k"`` or ``"builtin:halt@p"``."""
    if text.isdigit():
        return int(text)
    name, _, arg = text.removeprefix("builtin:").partition("@")
    try:
        if name == "loop":
            return BUILTIN_LOOPING[int(arg) if arg else 0]
        if name == "halt":
            return halt_at(int(arg))
    except (ValueError, IndexError):
        pass
    raise MalformedInput(f"unknown machine {text!r}")


class _HaltWatch:
    """The machine's run on input 0, advanced only as far as queries need."""

    def __init__(self, machine: Union[int, Program]):
        self.run = Execution(as_program(machine), 0)

    def halting_step(self, steps: int) -> Optional[int]:
        """The halting step if it is at most ``steps``, else None."""
        if self.run.result is None and self.run.steps < steps:
            self.run.advance(steps - self.run.steps)
        if self.run.result is not None and self.run.steps <= steps:
            return self.run.steps
        return None


def diagonal_group(seq: GroupSequence, machine: Union[int, Program], name: Optional[str] = None) -> MarkedGroup:
    """Bit ``n``: the limit's while the machine runs ``n`` steps, else member ``regulator(p)``'s.

    Deciding bit ``n`` may simulate up to ``n`` machine steps (shared across
    queries).
    """
    target = seq.declared_limit or limit(seq)
    watch = _HaltWatch(machine)
    k = seq.rank

    def decide(w):
        p = watch.halting_step(shortlex_index(w, k))
        source = target if p is None else seq.at(seq.regulator(p))
        return source.is_relation(w)

    label = machine if isinstance(machine, int) else f"<{machine}>"
    return MarkedGroup(k, decide, name or f"Gamma[{seq.name}; {label}]")


def diagonal_sequence(seq: GroupSequence) -> GroupSequence:
    """``l -> diagonal_group(seq, l)``; no convergence is claimed, the regulator is the identity."""
    return GroupSequence(seq.rank, lambda l: diagonal_group(seq, l), lambda m: m, f"Gamma[{seq.name}]")


def distinguish_semidecide(g: MarkedGroup, h: MarkedGroup, fuel: Union[int, Fuel]) -> Verdict:
    """Scan bits in shortlex order for a disagreement; never Refuted.

    Bit ``n`` costs one unit per group plus the length of its word, so the
    scan's running time stays proportional to the fuel.
    """
    if g.rank != h.rank:
        raise SpecError(f"cannot compare rank {g.rank} with rank {h.rank}")
    fuel = fuel if isinstance(fuel, Fuel) else Fuel(fuel)
    n = 0
    try:
        while True:
            w = word_at(n, g.rank) if g.rank else ()
            fuel.spend(len(w))
            if fuel.query(g, w) != fuel.query(h, w):
                return Verdict.verified({"bit": n, "word": list(w)}, fuel.spent)
            if g.rank == 0:
                return fuel.exhausted()
            n += 1
    except OutOfFuel:
        return fuel.exhausted()
