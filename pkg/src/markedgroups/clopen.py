"""Basic clopen sets of marked groups and what can be semi-decided about them."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .consequences import ConsequenceEngine, consequences
from .oracle.group import MarkedGroup, SpecError
from .verdict import Fuel, OutOfFuel, Verdict
from .words import EMPTY, Word, inverse, mul, reduce, shortlex_key, word_at

__all__ = [
    "BasicClopenSet", "RecPresentation", "member", "consequences", "incoherent_semidecide",
    "atoms", "atom_decomposition", "inclusion_semidecide", "kuznetsov_wp", "quotient_recpres",
    "finite_from_recpres_semidecide",
]


def _dedupe(words: Iterable[Sequence[int]], rank: int) -> tuple[Word, ...]:
    out: list[Word] = []
    for w in words:
        r = reduce(w, rank)
        if r not in out:
            out.append(r)
    return tuple(out)


@dataclass(frozen=True)
class BasicClopenSet:
    """Marked groups of rank ``rank`` where every relation holds and no irrelation does."""

    rank: int
    relations: tuple[Word, ...] = ()
    irrelations: tuple[Word, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "relations", _dedupe(self.relations, self.rank))
        object.__setattr__(self, "irrelations", _dedupe(self.irrelations, self.rank))

    @property
    def support(self) -> tuple[Word, ...]:
        return self.relations + tuple(w for w in self.irrelations if w not in self.relations)

    def __str__(self) -> str:
        from .parsing import format_clopen
        return format_clopen(self.relations, self.irrelations)

    def to_dict(self) -> dict:
        from .parsing import format_word
        return {"rank": self.rank, "R": [format_word(w) for w in self.relations],
                "S": [format_word(w) for w in self.irrelations]}


class RecPresentation:
    """Generators ``1..rank`` and a replayable relator stream.

    ``factory()`` returns a fresh iterator; ``None`` items are ticks that
    carry no relator, so enumerations that may find nothing still progress.
    """

    def __init__(self, rank: int, factory: Callable[[], Iterator[Optional[Word]]], name: str = "pres"):
        self.rank = rank
        self.factory = factory
        self.name = name

    @classmethod
    def finite(cls, rank: int, relators: Iterable[Sequence[int]], name: str = "pres") -> "RecPresentation":
        rels = [reduce(r, rank) for r in relators]
        return cls(rank, lambda: iter(rels), name)

    def stream(self) -> Iterator[Optional[Word]]:
        return self.factory()

    def prefix(self, n: int) -> list[Word]:
        """First ``n`` streamed relators, ticks skipped (may block on sparse streams)."""
        out = []
        for item in self.stream():
            if len(out) >= n:
                break
            if item is not None:
                out.append(item)
        return out


def member(g: MarkedGroup, omega: BasicClopenSet) -> bool:
    if g.rank != omega.rank:
        raise SpecError(f"rank {g.rank} group against rank {omega.rank} clopen set")
    return all(g.is_relation(r) for r in omega.relations) and not any(
        g.is_relation(s) for s in omega.irrelations)


def _as_fuel(fuel: int | Fuel) -> Fuel:
    return fuel if isinstance(fuel, Fuel) else Fuel(fuel)


def _witness(engine: ConsequenceEngine, target: Word) -> dict:
    return {
        "irrelation": list(target),
        "relators": [list(r) for r in engine.relators],
        "certificate": [[list(g), i, s] for g, i, s in engine.target_certificate(target)],
    }


def _engine_for(omega: BasicClopenSet, fuel: Fuel) -> ConsequenceEngine:
    engine = ConsequenceEngine(omega.rank, fuel=fuel)
    for r in omega.relations:
        engine.add_relator(r)
    for s in omega.irrelations:
        engine.add_target(s)
    return engine


def _proven_target(engine: ConsequenceEngine) -> Optional[Word]:
    for w, node in engine.targets.items():
        if node is not None:
            return w
    return None


def incoherent_semidecide(omega: BasicClopenSet, fuel: int | Fuel) -> Verdict:
    """Verified when some irrelation is derived from the relations; never Refuted.

    The witness is a product of conjugates of relations equal to the
    irrelation after free reduction.
    """
    fuel = _as_fuel(fuel)
    try:
        engine = _engine_for(omega, fuel)
        engine.run(lambda: _proven_target(engine) is not None)
    except OutOfFuel:
        return fuel.exhausted()
    hit = _proven_target(engine)
    if hit is None:
        return fuel.exhausted()
    return Verdict.verified(_witness(engine, hit), fuel.spent)


# -- inclusion --------------------------------------------------------------------

def atoms(sets: Sequence[BasicClopenSet], support: Sequence[Word]) -> list[BasicClopenSet]:
    """Disjoint pieces of the union of ``sets``, one per polarity pattern of ``support``.

    A pattern is kept when it is compatible with at least one member; the
    kept atoms partition the union.
    """
    if not sets:
        return []
    rank = sets[0].rank
    out = []
    for signs in product((True, False), repeat=len(support)):
        rel = {w for w, s in zip(support, signs) if s}
        irr = {w for w, s in zip(support, signs) if not s}
        if any(set(o.relations) <= rel and set(o.irrelations) <= irr for o in sets):
            out.append(BasicClopenSet(rank, tuple(w for w in support if w in rel),
                                      tuple(w for w in support if w in irr)))
    return out


def total_support(sets: Iterable[BasicClopenSet]) -> tuple[Word, ...]:
    words = set()
    rank = None
    for o in sets:
        if rank is not None and o.rank != rank:
            raise SpecError("clopen sets of different ranks")
        rank = o.rank
        words.update(o.relations)
        words.update(o.irrelations)
    return tuple(sorted(words, key=lambda w: shortlex_key(w, rank or 1)))


def atom_decomposition(u: Sequence[BasicClopenSet], v: Sequence[BasicClopenSet]) -> dict:
    """Atoms of both unions over the common support and those of ``u`` missing from ``v``."""
    support = total_support([*u, *v])
    atoms_u, atoms_v = atoms(u, support), atoms(v, support)
    required = [a for a in atoms_u if a not in atoms_v]
    return {"support": support, "atoms_u": atoms_u, "atoms_v": atoms_v, "required": required}


def inclusion_semidecide(u: Sequence[BasicClopenSet], v: Sequence[BasicClopenSet], fuel: int | Fuel) -> Verdict:
    """Semi-decide ``union(u) ⊆ union(v)`` by proving every required atom empty.

    Atom searches share the budget and advance one step each in turn.
    """
    fuel = _as_fuel(fuel)
    decomposition = atom_decomposition(u, v)
    required = decomposition["required"]
    engines = []
    try:
        for a in required:
            engines.append(_engine_for(a, fuel))
        pending = [i for i, e in enumerate(engines) if _proven_target(e) is None]
        while pending:
            progressed = False
            for i in pending:
                progressed |= engines[i].step()
            pending = [i for i in pending if _proven_target(engines[i]) is None]
            if pending and not progressed:
                return fuel.exhausted()
    except OutOfFuel:
        return fuel.exhausted()
    witness = {
        "support": [list(w) for w in decomposition["support"]],
        "required_atoms": [a.to_dict() for a in required],
        "atom_certificates": [_witness(e, _proven_target(e)) for e in engines],
    }
    return Verdict.verified(witness, fuel.spent)


# -- recursive presentations ---------------------------------------------------------

def _next_or_done(it: Iterator) -> tuple[bool, object]:
    for item in it:
        return True, item
    return False, None


def kuznetsov_wp(pres: RecPresentation, disc: Callable[[], Iterator[Optional[Word]]],
                 name: str = "K", max_rounds: Optional[int] = None) -> MarkedGroup:
    """Word problem from a recursive presentation and a discriminating family.

    To decide ``w``, two searches alternate one step at a time: deriving
    ``w`` from the relators (answer: relation) and deriving some element of
    the discriminating family from the relators plus ``w`` (answer: not a
    relation).  On inputs that are not jointly lawful the search may not
    end; ``max_rounds`` turns that into a RuntimeError.
    """
    k = pres.rank

    def decide(w: Word) -> bool:
        prove = ConsequenceEngine(k)
        prove.add_target(w)
        refute = ConsequenceEngine(k)
        refute.add_relator(w)
        rel_a, rel_b, fam = pres.stream(), pres.stream(), disc()
        live = [True, True, True]
        rounds = 0
        while True:
            if live[0]:
                live[0], item = _next_or_done(rel_a)
                if item:
                    prove.add_relator(item)
            prove.step()
            if prove.targets[w] is not None:
                return True
            if live[1]:
                live[1], item = _next_or_done(rel_b)
                if item:
                    refute.add_relator(item)
            if live[2]:
                live[2], item = _next_or_done(fam)
                if item:
                    refute.add_target(item)
            refute.step()
            if _proven_target(refute) is not None:
                return False
            rounds += 1
            if max_rounds is not None and rounds >= max_rounds:
                raise RuntimeError(f"no answer for {w} after {rounds} rounds")

    return MarkedGroup(k, decide, name)


def quotient_recpres(g: MarkedGroup, normal_gens: Sequence[Sequence[int]]) -> RecPresentation:
    """Relations of ``g`` (by shortlex scan) interleaved with the extra relators."""
    extra = [reduce(w, g.rank) for w in normal_gens]

    def factory() -> Iterator[Optional[Word]]:
        n = 1
        i = 0
        while True:
            if i < len(extra):
                yield extra[i]
                i += 1
            w = word_at(n, g.rank) if g.rank else EMPTY
            if g.rank == 0:
                return
            yield w if g.is_relation(w) else None
            n += 1

    return RecPresentation(g.rank, factory, name=f"{g.name}/<<{len(extra)}>>")


def _words_up_to(rank: int, length: int) -> Iterator[Word]:
    n = 0
    while True:
        w = word_at(n, rank) if rank else EMPTY
        if len(w) > length or (rank == 0 and n > 0):
            return
        yield w
        n += 1


def finite_from_recpres_semidecide(pres: RecPresentation, fuel: int | Fuel) -> Verdict:
    """Verify finiteness with a multiplication-closed set of representatives.

    Stage ``n`` feeds ``n`` stream items and engine steps, then greedily
    picks up to ``n`` words of length at most ``n`` that are not provably
    equal and checks that each product with a generator is provably equal
    to a chosen word.  A closed set containing ε bounds the order.
    """
    fuel = _as_fuel(fuel)
    k = pres.rank
    engine = ConsequenceEngine(k, fuel=fuel)
    stream = pres.stream()
    live = True

    def equal(u: Word, v: Word) -> bool:
        fuel.spend()
        return engine.proven(mul(u, inverse(v)))

    try:
        n = 0
        while True:
            n += 1
            for _ in range(n):
                if live:
                    live, item = _next_or_done(stream)
                    fuel.spend()
                    if item:
                        engine.add_relator(item)
                engine.step()
            reps: list[Word] = []
            for w in _words_up_to(k, n):
                fuel.spend()
                if not any(equal(w, r) for r in reps):
                    reps.append(w)
                    if len(reps) == n:
                        break
            table = {}
            for i, t in enumerate(reps):
                for s in range(1, k + 1):
                    hit = next((j for j, r in enumerate(reps) if equal(mul(t, (s,)), r)), None)
                    if hit is None:
                        break
                    table[(i, s)] = hit
                else:
                    continue
                break
            else:
                witness = {"order_at_most": len(reps), "elements": [list(r) for r in reps],
                           "table": [[i, s, j] for (i, s), j in sorted(table.items())]}
                return Verdict.verified(witness, fuel.spent)
    except OutOfFuel:
        return fuel.exhausted()
