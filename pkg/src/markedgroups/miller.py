"""Miller's gadget: a finitely presented extension that collapses when ``w = 1``.

From a presentation ``<x_1..x_k | r_1..r_t>`` and a word ``w`` nontrivial
in it, ``step3_presentation`` adds generators ``a, b, c`` (letters
``k+1, k+2, k+3``) with four families of relations.  The result is the
amalgamated product of ``base * F(a, b)`` and ``F(b, c)`` along two free
subgroups of rank ``k + 4``; ``l3_wp`` solves its word problem from an
oracle for the base.  Adding ``w = 1`` kills everything, which
``trivializes`` re-derives with the consequence engine.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Union

from .clopen import BasicClopenSet, RecPresentation
from .consequences import ConsequenceEngine
from .machines import Enumeration
from .parsing import DEFAULT_ALPHABET, format_word
from .oracle.group import MarkedGroup, SpecError
from .verdict import Fuel, OutOfFuel, Verdict
from .words import Word, commutator, inverse, mul, power, reduce

__all__ = [
    "Presentation", "MillerOutput", "GadgetDegenerateError", "step1_relations", "step3_presentation",
    "FreeProductAmbient", "nielsen_membership", "l3_wp", "trivializes",
]


class GadgetDegenerateError(SpecError):
    """The distinguished word is trivial in the base, so the gadget is degenerate."""


@dataclass(frozen=True)
class Presentation:
    rank: int
    relators: tuple[Word, ...] = ()
    names: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "relators", tuple(reduce(r, self.rank) for r in self.relators))
        if not self.names:
            object.__setattr__(self, "names", tuple(DEFAULT_ALPHABET[:self.rank]))
        elif len(self.names) != self.rank:
            raise SpecError("one name per generator")

    def format(self, word: Sequence[int]) -> str:
        return format_word(word, self.names)

    def __str__(self) -> str:
        body = ", ".join(map(self.format, self.relators))
        return f"<{','.join(self.names)} | {body}>" if body else f"<{','.join(self.names)}>"


@dataclass(frozen=True)
class MillerOutput:
    base: Presentation
    w: Word
    l3: Presentation
    pi: BasicClopenSet

    @property
    def letters(self) -> dict[str, int]:
        k = self.base.rank
        return {"a": k + 1, "b": k + 2, "c": k + 3}


# -- step 1 ---------------------------------------------------------------------------

def step1_relations(p: Enumeration, q: Enumeration) -> RecPresentation:
    """Relators ``e_0 e_i^-1`` (``i`` in P) and ``e_1 e_j^-1`` (``j`` in Q); ``e_n`` is letter ``n+1``.

    P and Q are read alternately, one item each; identities ``e_0 = e_0``
    and ``e_1 = e_1`` emit nothing.  The rank is unbounded (``rank=None``).
    """

    def factory() -> Iterator[Optional[Word]]:
        streams = [(1, p.stream()), (2, q.stream())]
        while streams:
            for entry in list(streams):
                anchor, it = entry
                item = next(it, StopIteration)
                if item is StopIteration:
                    streams.remove(entry)
                elif item is None or item + 1 == anchor:
                    yield None
                else:
                    yield (anchor, -(item + 1))

    return RecPresentation(None, factory, name=f"L1[{p.name}; {q.name}]")


# -- step 3 ---------------------------------------------------------------------------

def _families(k: int, w: Word) -> tuple[list[Word], list[Word]]:
    """Left sides (in ``base * F(a, b)``) and right sides (in ``F(b, c)``), ``b`` first."""
    a, b, c = k + 1, k + 2, k + 3

    def conj(x: Word, letter: int, n: int) -> Word:
        return mul(power((letter,), -n), x, power((letter,), n))

    left = [(b,), conj((b,), a, 1), conj((-b, a, b), a, 2), conj(commutator(w, (b,)), a, 3)]
    right = [(b,), conj((-b, c, b), c, 1), conj((-b, c, b), c, 2), conj((b,), c, 3)]
    for i in range(1, k + 1):
        left.append(conj((i, b), a, 3 + i))
        right.append(conj((b,), c, 3 + i))
    return left, right


def _fresh_names(taken: Sequence[str]) -> tuple[str, ...]:
    """``a, b, c`` unless the base uses one of them, else the first three unused letters."""
    if not set("abc") & set(taken):
        return ("a", "b", "c")
    return tuple(x for x in DEFAULT_ALPHABET if x not in taken)[:3]


def step3_presentation(base: Presentation, w: Sequence[int]) -> MillerOutput:
    """Relations (1)-(3), then the ``k`` relations (4), then the base relators."""
    k = base.rank
    w = reduce(w, k)
    left, right = _families(k, w)
    relators = [mul(x, inverse(y)) for x, y in zip(left[1:], right[1:])]
    l3 = Presentation(k + 3, tuple(relators) + base.relators, base.names + _fresh_names(base.names))
    return MillerOutput(base, w, l3, BasicClopenSet(k + 3, l3.relators, (w,)))


# -- free products and Nielsen membership ---------------------------------------------

Token = Union[int, Word]


class FreeProductAmbient:
    """Normal forms in ``base * F``: free letters are ints, base syllables are word tuples.

    With ``base=None`` it is just the free group on the int letters.  A base
    syllable is kept only when nontrivial; equal syllables are recognized
    with the base oracle.
    """

    def __init__(self, base: Optional[MarkedGroup] = None):
        self.base = base

    def normal(self, tokens: Sequence[Token]) -> tuple[Token, ...]:
        out: list[Token] = []
        for t in tokens:
            if isinstance(t, int):
                if out and isinstance(out[-1], int) and out[-1] == -t:
                    out.pop()
                else:
                    out.append(t)
                continue
            if out and not isinstance(out[-1], int):
                t = reduce(out.pop() + t)
            if t and not self.base.is_relation(t):
                out.append(t)
        return tuple(out)

    def inverse(self, x: Sequence[Token]) -> tuple[Token, ...]:
        return tuple(-t if isinstance(t, int) else inverse(t) for t in reversed(x))

    def mul(self, *xs: Sequence[Token]) -> tuple[Token, ...]:
        return self.normal([t for x in xs for t in x])

    def same_token(self, s: Token, t: Token) -> bool:
        if isinstance(s, int) or isinstance(t, int):
            return s == t
        return self.base.is_relation(mul(s, inverse(t)))

    def equal(self, x: Sequence[Token], y: Sequence[Token]) -> bool:
        return len(x) == len(y) and all(self.same_token(s, t) for s, t in zip(x, y))

    def starts_with(self, x: Sequence[Token], prefix: Sequence[Token]) -> bool:
        return len(x) >= len(prefix) and all(self.same_token(s, t) for s, t in zip(x, prefix))


def nielsen_membership(u: Sequence[Token], family: Sequence[Sequence[Token]],
                       ambient: Optional[FreeProductAmbient] = None, bound: Optional[int] = None) -> Verdict:
    """Express ``u`` as a product of family elements and inverses.

    The family must be Nielsen reduced in the ambient free product: in a
    product of distinct non-inverse elements less than half of each factor
    cancels (merging two base syllables counts as cancelling both).  Then a
    reduced product of ``n`` factors has length at least ``n`` and begins
    with more than half of its first factor, so the search tries only
    factors whose first ``len // 2 + 1`` tokens match.  It also drops
    targets longer than the remaining factors could produce, and memoizes
    failed ``(target, factors left)`` states.

    Verified carries the factorization as ``[index, sign]`` pairs.  Refuted
    means every product of at most ``len(u)`` factors was excluded, which
    for a Nielsen-reduced family certifies non-membership; a smaller
    ``bound`` can only give Unknown.
    """
    amb = ambient or FreeProductAmbient()
    u = amb.normal(u)
    forms = []
    for j, g in enumerate(family):
        g = amb.normal(g)
        if not g:
            raise SpecError(f"family element {j} is trivial")
        forms.append(((j, 1), g))
        forms.append(((j, -1), amb.inverse(g)))
    longest = max((len(g) for _, g in forms), default=1)
    limit = len(u) if bound is None else min(bound, len(u))
    failed: set = set()

    def search(target: tuple, left: int, last) -> Optional[list]:
        if not target:
            return []
        if left == 0 or len(target) > left * longest:
            return None
        state = (target, left, last)
        if state in failed:
            return None
        for (j, e), g in forms:
            if last == (j, -e) or not amb.starts_with(target, g[:len(g) // 2 + 1]):
                continue
            rest = search(amb.mul(amb.inverse(g), target), left - 1, (j, e))
            if rest is not None:
                return [[j, e]] + rest
        failed.add(state)
        return None

    found = search(u, limit, None)
    if found is not None:
        return Verdict.verified({"factors": found}, len(failed))
    if bound is not None and bound < len(u):
        return Verdict.unknown(len(failed))
    return Verdict.refuted({"max_factors": len(u)}, len(failed))


# -- the word problem of the gadget ------------------------------------------------------

def _tokens(word: Sequence[int], k: int) -> list[Token]:
    """Letters ``1..k`` grouped into base syllables, ``a`` and ``b`` kept as ints."""
    out: list[Token] = []
    for x in word:
        if abs(x) <= k:
            if out and not isinstance(out[-1], int):
                out[-1] = out[-1] + (x,)
            else:
                out.append((x,))
        else:
            out.append(x)
    return out


def _syllables(word: Word, k: int) -> list[tuple[int, list[int]]]:
    """Maximal runs over ``{x_i, a, b}`` (side 1) and ``{c}`` (side 2)."""
    c = k + 3
    out: list[tuple[int, list[int]]] = []
    for x in word:
        side = 2 if abs(x) == c else 1
        if out and out[-1][0] == side:
            out[-1][1].append(x)
        else:
            out.append((side, [x]))
    return out


def l3_wp(base: MarkedGroup, w: Sequence[int], name: Optional[str] = None) -> MarkedGroup:
    """The gadget on ``base`` and ``w`` as a marked group of rank ``k + 3``.

    A word is split into alternating syllables of ``base * F(a, b)`` and
    ``F(b, c)``.  Any syllable lying in the amalgamated subgroup is moved to
    the other factor and merged with its neighbours; the word is trivial
    exactly when nothing is left.  Both generating families are Nielsen
    reduced, so ``nielsen_membership`` decides each membership question.
    """
    k = base.rank
    w = reduce(w, k)
    if base.is_relation(w):
        raise GadgetDegenerateError("w is trivial in the base group")
    left, right = _families(k, w)
    ambients = {1: FreeProductAmbient(base), 2: FreeProductAmbient()}
    families = {1: [ambients[1].normal(_tokens(g, k)) for g in left], 2: [tuple(g) for g in right]}

    def image(side: int, factors: list) -> tuple:
        other = 3 - side
        fam = families[other]
        amb = ambients[other]
        return amb.mul(*(fam[j] if e == 1 else amb.inverse(fam[j]) for j, e in factors))

    def decide(word: Word) -> bool:
        seq = [(side, ambients[side].normal(_tokens(s, k) if side == 1 else s))
               for side, s in _syllables(reduce(word, k + 3), k)]
        while True:
            merged: list[tuple[int, tuple]] = []
            for side, toks in seq:
                if merged and merged[-1][0] == side:
                    toks = ambients[side].mul(merged.pop()[1], toks)
                if toks:
                    merged.append((side, toks))
            seq = merged
            if len(seq) <= 1:
                return not seq
            for i, (side, toks) in enumerate(seq):
                found = nielsen_membership(toks, families[side], ambients[side])
                if found.is_verified:
                    seq[i] = (3 - side, image(side, found.witness["factors"]))
                    break
            else:
                return False

    return MarkedGroup(k + 3, decide, name or f"L3[{base.name}; w]")


def trivializes(out: MillerOutput, extra: Sequence[int], fuel: Union[int, Fuel]) -> Verdict:
    """Derive ``b, c, a`` and every ``x_i`` from the gadget relators plus ``extra``.

    Certificates index the relators in the order of ``witness["relators"]``,
    which starts with ``extra``.  Verified carries one certificate per generator, keyed by its name; never
    Refuted.
    """
    fuel = fuel if isinstance(fuel, Fuel) else Fuel(fuel)
    rank = out.l3.rank
    letters = out.letters
    goals = [(letters["b"],), (letters["c"],), (letters["a"],)] + [(i,) for i in range(1, out.base.rank + 1)]
    try:
        engine = ConsequenceEngine(rank, fuel=fuel)
        # extra first: the gadget relators are then normalized against it on arrival
        for r in (reduce(extra, rank),) + out.l3.relators:
            if r:
                engine.add_relator(r)
        for g in goals:
            engine.add_target(g)
        engine.run(lambda: not engine.open_targets())
    except OutOfFuel:
        return fuel.exhausted()
    if engine.open_targets():
        return fuel.exhausted()
    witness = {
        "relators": [list(r) for r in engine.relators],
        "certificates": {out.l3.format(g): [[list(h), i, s] for h, i, s in engine.target_certificate(g)] for g in goals},
    }
    return Verdict.verified(witness, fuel.spent)
