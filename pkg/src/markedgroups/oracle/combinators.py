"""Building marked groups from other marked groups."""
from __future__ import annotations

from typing import Iterator, Sequence

from ..verdict import Fuel, OutOfFuel, Verdict
from ..words import Word, inverse, mul, reduce, substitute, unpair_tuple, word_at
from .group import MarkedGroup, SpecError


def _split_letter(letter: int, k: int) -> tuple[int, int]:
    """(factor, local letter) for a letter of a rank-``k + l`` product."""
    if abs(letter) <= k:
        return 0, letter
    return 1, letter - k if letter > 0 else letter + k


def direct(g: MarkedGroup, h: MarkedGroup) -> MarkedGroup:
    k = g.rank

    def project(w: Word) -> tuple[Word, Word]:
        parts: tuple[list[int], list[int]] = ([], [])
        for x in w:
            f, y = _split_letter(x, k)
            parts[f].append(y)
        return reduce(parts[0]), reduce(parts[1])

    def decide(w: Word) -> bool:
        u, v = project(w)
        return g.is_relation(u) and h.is_relation(v)

    key = None
    if g.has_key and h.has_key:
        def key(w: Word):
            u, v = project(w)
            return g.element_key(u), h.element_key(v)

    key_step = None
    if g.key_step and h.key_step:
        def key_step(pair: tuple, x: int) -> tuple:
            f, y = _split_letter(x, k)
            if f == 0:
                return g.key_step(pair[0], y), pair[1]
            return pair[0], h.key_step(pair[1], y)

    return MarkedGroup(g.rank + h.rank, decide, f"{g.name}x{h.name}", key=key, key_step=key_step)


def free_syllables(w: Word, g: MarkedGroup, h: MarkedGroup) -> list[tuple[int, Word]]:
    """Free-product normal form: alternating nontrivial syllables ``(factor, word)``."""
    k = g.rank
    factors = (g, h)
    stack: list[tuple[int, Word]] = []
    i = 0
    while i < len(w):
        f, _ = _split_letter(w[i], k)
        j = i
        local = []
        while j < len(w) and _split_letter(w[j], k)[0] == f:
            local.append(_split_letter(w[j], k)[1])
            j += 1
        syl = reduce(local)
        if stack and stack[-1][0] == f:
            merged = mul(stack[-1][1], syl)
            stack.pop()
            if not factors[f].is_relation(merged):
                stack.append((f, merged))
        elif not factors[f].is_relation(syl):
            stack.append((f, syl))
        i = j
    return stack


def free_product(g: MarkedGroup, h: MarkedGroup) -> MarkedGroup:
    def decide(w: Word) -> bool:
        return not free_syllables(w, g, h)

    key = None
    if g.has_key and h.has_key:
        def key(w: Word):
            return tuple((f, (g, h)[f].element_key(s)) for f, s in free_syllables(w, g, h))

    return MarkedGroup(g.rank + h.rank, decide, f"{g.name}*{h.name}", key=key)


def combine(g: MarkedGroup, h: MarkedGroup, mode: str) -> MarkedGroup:
    if mode == "direct":
        return direct(g, h)
    if mode == "free":
        return free_product(g, h)
    raise SpecError(f"unknown combination mode {mode!r}")


def subgroup_marking(g: MarkedGroup, tuple_: Sequence[Sequence[int]], name: str | None = None) -> MarkedGroup:
    """The subgroup of ``g`` generated by ``tuple_``, marked by that tuple."""
    images = [reduce(w, g.rank) for w in tuple_]

    def decide(w: Word) -> bool:
        return g.is_relation(substitute(w, images))

    key = None
    if g.has_key:
        def key(w: Word):
            return g.element_key(substitute(w, images))

    key_step = None
    if g.key_step:
        def key_step(current, x: int):
            for y in (images[x - 1] if x > 0 else inverse(images[-x - 1])):
                current = g.key_step(current, y)
            return current

    if name is None:
        from ..parsing import format_word
        name = f"mark({g.name}; {', '.join(format_word(w) for w in images)})"
    return MarkedGroup(len(images), decide, name, key=key, key_step=key_step)


def generates_semidecide(g: MarkedGroup, tuple_: Sequence[Sequence[int]], fuel: int | Fuel) -> Verdict:
    """Semi-decide whether ``tuple_`` generates ``g``.

    Searches words over the tuple's letters in shortlex order; the witness
    maps each generator index of ``g`` to a word in tuple letters whose
    image equals that generator.  One fuel per oracle query.
    """
    fuel = fuel if isinstance(fuel, Fuel) else Fuel(fuel)
    images = [reduce(w, g.rank) for w in tuple_]
    j = len(images)
    todo = list(range(1, g.rank + 1))
    found: dict[int, Word] = {}
    try:
        index = 0
        while todo:
            if j == 0 and index > 0:
                raise OutOfFuel
            u = word_at(index, j)
            img = substitute(u, images)
            for i in list(todo):
                if fuel.query(g, mul(img, (-i,))):
                    found[i] = u
                    todo.remove(i)
            index += 1
    except OutOfFuel:
        return fuel.exhausted()
    return Verdict.verified(found, fuel.spent)


def tuple_at(index: int, j: int, rank: int) -> tuple[Word, ...]:
    """The ``index``-th ``j``-tuple of words (iterated Cantor pairing of shortlex indices)."""
    return tuple(word_at(n, rank) for n in unpair_tuple(index, j))


def enumerate_markings(g: MarkedGroup, j: int, max_stage: int | None = None) -> Iterator[tuple[tuple[Word, ...], MarkedGroup, Verdict]]:
    """Dovetail over ``j``-tuples, yielding each generating tuple once.

    Stage ``t`` gives tuples ``0..t`` a fresh budget of ``t`` queries.
    Yields ``(tuple, marking, generation verdict)``.
    """
    if j < 1:
        raise SpecError("enumerate_markings needs j >= 1")
    emitted: set[int] = set()
    stage = 0
    while max_stage is None or stage <= max_stage:
        for n in range(stage + 1):
            if n in emitted:
                continue
            tup = tuple_at(n, j, g.rank)
            verdict = generates_semidecide(g, tup, stage)
            if verdict.is_verified:
                emitted.add(n)
                yield tup, subgroup_marking(g, tup), verdict
        stage += 1


def check_generation_witness(g: MarkedGroup, tuple_: Sequence[Sequence[int]], witness: dict) -> bool:
    images = [reduce(w) for w in tuple_]
    return set(witness) == set(range(1, g.rank + 1)) and all(
        g.is_relation(mul(substitute(u, images), inverse((i,)))) for i, u in witness.items())
