"""Counter machines, their Gödel numbering, and the enumerations built from them.

A program is a list of ``INC r``, ``DECJZ r t`` and ``HALT`` instructions over
unbounded natural registers.  ``DECJZ r t`` jumps to ``t`` when register ``r``
is zero and otherwise decrements it and falls through.  Running past the last
instruction (a jump to ``len(program)`` included) halts like ``HALT``.
Register 0 holds the input and the output.

Every natural number decodes to a program; an index whose jumps leave the
program decodes to ``LOOP``, which never halts.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Sequence, Union

from .words import MalformedInput, cantor_pair, cantor_unpair

__all__ = [
    "Instruction", "Program", "Halted", "Running", "LOOP", "decode", "encode", "run_bounded",
    "halting_step", "Enumeration", "inseparable_pq", "pq_halting_family", "pq_nct_family",
    "constant_program", "halt_at", "looping_programs", "index_of", "Execution", "as_program",
]


@dataclass(frozen=True)
class Instruction:
    op: str
    register: int = 0
    target: int = 0

    def __str__(self) -> str:
        if self.op == "HALT":
            return "HALT"
        if self.op == "INC":
            return f"INC {self.register}"
        return f"DECJZ {self.register} {self.target}"

    @property
    def code(self) -> int:
        if self.op == "HALT":
            return 0
        if self.op == "INC":
            return 2 * self.register + 1
        return 2 * (cantor_pair(self.register, self.target) + 1)

    @classmethod
    def from_code(cls, code: int) -> "Instruction":
        if code == 0:
            return cls("HALT")
        if code % 2:
            return cls("INC", (code - 1) // 2)
        register, target = cantor_unpair(code // 2 - 1)
        return cls("DECJZ", register, target)


@dataclass(frozen=True)
class Program:
    instructions: tuple[Instruction, ...]

    def __len__(self) -> int:
        return len(self.instructions)

    @property
    def well_formed(self) -> bool:
        return all(i.op != "DECJZ" or i.target <= len(self) for i in self.instructions)

    def __str__(self) -> str:
        return " / ".join(map(str, self.instructions))

    @classmethod
    def parse(cls, text: str) -> "Program":
        """Parse ``INC 0 / DECJZ 0 3 / HALT`` (``/``, ``;`` or newlines separate)."""
        out = []
        for part in filter(None, (p.strip() for p in re.split(r"[/;\n]", text))):
            fields = part.split()
            op = fields[0].upper()
            try:
                args = [int(x) for x in fields[1:]]
            except ValueError:
                raise MalformedInput(f"bad instruction {part!r}") from None
            arity = {"HALT": 0, "INC": 1, "DECJZ": 2}.get(op)
            if arity is None or len(args) != arity or any(a < 0 for a in args):
                raise MalformedInput(f"bad instruction {part!r}")
            out.append(Instruction(op, *args))
        program = cls(tuple(out))
        if not program.well_formed:
            raise MalformedInput(f"jump target out of range in {text!r}")
        return program


LOOP = Program((Instruction("DECJZ", 1, 0),))


def _decode_list(index: int) -> list[int]:
    out = []
    while index:
        head, index = cantor_unpair(index - 1)
        out.append(head)
    return out


def _encode_list(values: Sequence[int]) -> int:
    index = 0
    for v in reversed(values):
        index = cantor_pair(v, index) + 1
    return index


def decode(index: int) -> Program:
    if index < 0:
        raise MalformedInput("machine indices are natural numbers")
    program = Program(tuple(Instruction.from_code(c) for c in _decode_list(index)))
    return program if program.well_formed else LOOP


def encode(program: Program) -> int:
    if not program.well_formed:
        raise MalformedInput("only well-formed programs have an index")
    return _encode_list([i.code for i in program.instructions])


def index_of(text: str) -> int:
    return encode(Program.parse(text))


@dataclass(frozen=True)
class Halted:
    output: int
    steps: int


@dataclass(frozen=True)
class Running:
    steps: int


class Execution:
    """A paused execution that can be advanced step by step.

    ``cycled`` becomes True once a configuration repeats (checked against
    snapshots taken at power-of-two step counts), which proves divergence.
    """

    __slots__ = ("code", "pc", "registers", "steps", "result", "cycled", "_snapshot", "_next_snapshot")

    def __init__(self, program: Program, value: int):
        self.code = [(i.op, i.register, i.target) for i in program.instructions]
        self.pc = 0
        self.registers = {0: value}
        self.steps = 0
        self.result: Optional[int] = None
        self.cycled = False
        self._snapshot = (0, {0: value})
        self._next_snapshot = 1

    def advance(self, steps: int) -> Optional[int]:
        """Run up to ``steps`` more instructions; the output once halted, else None."""
        code, regs = self.code, self.registers
        pc, done = self.pc, self.steps
        limit = done + steps
        snap_pc, snap_regs = self._snapshot
        while self.result is None and done < limit and not self.cycled:
            done += 1
            if pc >= len(code):
                self.result = regs.get(0, 0)
                break
            op, r, t = code[pc]
            if op == "INC":
                regs[r] = regs.get(r, 0) + 1
                pc += 1
            elif op == "DECJZ":
                if regs.get(r, 0):
                    regs[r] -= 1
                    pc += 1
                else:
                    pc = t
            else:
                self.result = regs.get(0, 0)
                break
            if pc == snap_pc and regs == snap_regs:
                self.cycled = True
            elif done == self._next_snapshot:
                snap_pc, snap_regs = pc, dict(regs)
                self._snapshot = (snap_pc, snap_regs)
                self._next_snapshot *= 2
        self.pc, self.steps = pc, done
        return self.result


def as_program(machine: Union[int, Program]) -> Program:
    return machine if isinstance(machine, Program) else decode(machine)


def run_bounded(machine: Union[int, Program], value: int, steps: int) -> Union[Halted, Running]:
    """Execute at most ``steps`` instructions; halting counts as one step."""
    run = Execution(as_program(machine), value)
    out = run.advance(steps)
    return Halted(out, run.steps) if out is not None else Running(steps)


def halting_step(machine: Union[int, Program], value: int, steps: int) -> Optional[int]:
    result = run_bounded(machine, value, steps)
    return result.steps if isinstance(result, Halted) else None


# -- sample programs ----------------------------------------------------------------

def constant_program(value: int) -> Program:
    """Clears register 0, then adds ``value``."""
    clear = [Instruction("DECJZ", 0, 2), Instruction("DECJZ", 1, 0)]
    return Program(tuple(clear + [Instruction("INC", 0)] * value))


def halt_at(step: int) -> Program:
    """Halts on every input after exactly ``step`` instructions, output = input."""
    if step < 1:
        raise MalformedInput("halting step must be >= 1")
    return Program(tuple([Instruction("INC", 1)] * (step - 1) + [Instruction("HALT")]))


def looping_programs(count: int = 10) -> list[Program]:
    """Never-halting programs of distinct lengths: increments, then a jump on an untouched register."""
    return [Program(tuple([Instruction("INC", k % 3)] * k + [Instruction("DECJZ", 9, 0)]))
            for k in range(count)]


# -- enumerations -------------------------------------------------------------------

class Enumeration:
    """A replayable stream of naturals; ``None`` items are stage ticks."""

    def __init__(self, factory: Callable[[], Iterator[Optional[int]]], name: str = "E"):
        self.factory = factory
        self.name = name

    def stream(self) -> Iterator[Optional[int]]:
        return self.factory()

    def __iter__(self) -> Iterator[int]:
        return (x for x in self.stream() if x is not None)

    def prefix(self, n: int, max_ticks: Optional[int] = None) -> list[int]:
        """First ``n`` elements, or fewer if the stream ends or ``max_ticks`` pass."""
        out: list[int] = []
        ticks = 0
        for x in self.stream():
            if len(out) >= n:
                break
            if x is None:
                ticks += 1
                if max_ticks is not None and ticks >= max_ticks:
                    break
            else:
                out.append(x)
        return out


class _SelfHalting:
    """Stage ``t`` runs indices ``0..t`` on themselves for ``t`` steps; stages are memoized."""

    def __init__(self):
        self.stages: list[list[tuple[int, int]]] = []
        self.live: dict[int, Execution] = {}

    def stage(self, t: int) -> list[tuple[int, int]]:
        """Indices newly found halting at stage ``t``, with their outputs."""
        while len(self.stages) <= t:
            now = len(self.stages)
            self.live[now] = Execution(decode(now), now)
            found = []
            for i, run in list(self.live.items()):
                out = run.advance(now - run.steps)
                if out is not None:
                    found.append((i, out))
                if out is not None or run.cycled:
                    del self.live[i]
            self.stages.append(found)
        return self.stages[t]


_SELF_HALTING = _SelfHalting()


def _self_halting() -> Iterator[list[tuple[int, int]]]:
    t = 0
    while True:
        yield _SELF_HALTING.stage(t)
        t += 1


def _outputs(value: int) -> Enumeration:
    def factory():
        for found in _self_halting():
            for i, out in found:
                if out == value:
                    yield i
            yield None

    return Enumeration(factory, f"{{n : M_n(n) = {value}}}")


def inseparable_pq() -> tuple[Enumeration, Enumeration]:
    """Indices sent to 0 (resp. 1) on their own index; stage ``t`` runs ``0..t`` for ``t`` steps."""
    return _outputs(0), _outputs(1)


def _gate(machine: Union[int, Program]) -> Iterator[bool]:
    """True for each step the gating machine (input 0) is still running after."""
    run = Execution(as_program(machine), 0)
    while run.advance(1) is None:
        yield True
    yield False


def _halting_gated(base: Enumeration, machine) -> Enumeration:
    def factory():
        gate = _gate(machine)
        for item in base.stream():
            if not next(gate):
                return
            yield item

    return Enumeration(factory, f"{base.name}|{machine}")


def pq_halting_family(machine: Union[int, Program], base: Optional[tuple[Enumeration, Enumeration]] = None
                      ) -> tuple[Enumeration, Enumeration]:
    """``base`` streams, one stage per step of ``machine``, cut when it halts."""
    p, q = base or inseparable_pq()
    return _halting_gated(p, machine), _halting_gated(q, machine)


def _increasing(items: Iterator[Optional[int]]) -> Iterator[Optional[int]]:
    """Elements exceeding all earlier ones, ticks kept."""
    best = -1
    for x in items:
        if x is None:
            yield None
        elif x > best:
            best = x
            yield x


def _nct_gated(base: Enumeration, machine) -> Enumeration:
    def factory():
        gate = _gate(machine)
        peaks = _increasing(base.stream())
        emitted = set()
        while True:
            bound = next(x for x in peaks if x is not None)
            if next(gate):
                emitted.add(bound)
                yield bound
                continue
            for x in base.stream():
                if x is None:
                    yield None
                elif x <= bound and x not in emitted:
                    emitted.add(x)
                    yield x
            return

    return Enumeration(factory, f"{base.name}|nct {machine}")


def pq_nct_family(machine: Union[int, Program], base: Optional[tuple[Enumeration, Enumeration]] = None
                  ) -> tuple[Enumeration, Enumeration]:
    """While ``machine`` runs, the increasing extraction of each base stream, one per step.

    If it halts at step ``s`` the stream continues with every base element up
    to the ``s``-th extracted value.  The tail after a halt never ends on an
    infinite base, since finitely many elements fall below the bound but the
    scan cannot know it has seen them all.
    """
    p, q = base or inseparable_pq()
    return _nct_gated(p, machine), _nct_gated(q, machine)
