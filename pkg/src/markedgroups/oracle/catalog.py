"""Ground-truth marked groups with exact, search-free word problem oracles."""
from __future__ import annotations

from fractions import Fraction
from functools import reduce as fold
from typing import Callable, Hashable, Optional, Sequence

from ..words import Word, exponent_sums
from .group import MarkedGroup, SpecError


def _stepped(rank: int, name: str, identity: Hashable,
             step: Callable[[Hashable, int], Hashable],
             key: Optional[Callable[[Word], Hashable]] = None) -> MarkedGroup:
    """Group whose element keys are computed letter by letter from ``identity``.

    ``key``, when given, must agree with the letter-by-letter fold.
    """
    if key is None:
        def key(w: Word):
            return fold(step, w, identity)

    return MarkedGroup(rank, lambda w: key(w) == identity, name, key=key, key_step=step)


def trivial(rank: int = 1) -> MarkedGroup:
    return _stepped(rank, f"1_{rank}", (), lambda k, x: ())


def free_abelian(rank: int) -> MarkedGroup:
    if rank < 1:
        raise SpecError("Z^k needs k >= 1")

    def step(k: tuple, x: int) -> tuple:
        i = abs(x) - 1
        return k[:i] + (k[i] + (1 if x > 0 else -1),) + k[i + 1:]

    return _stepped(rank, "Z" if rank == 1 else f"Z^{rank}", (0,) * rank, step,
                    key=lambda w: exponent_sums(w, rank))


def integers() -> MarkedGroup:
    return free_abelian(1)


def cyclic(n: int) -> MarkedGroup:
    if n < 1:
        raise SpecError("Z/n needs n >= 1")

    return _stepped(1, f"Z/{n}", 0, lambda k, x: (k + (1 if x > 0 else -1)) % n,
                    key=lambda w: (w.count(1) - w.count(-1)) % n)


def free(rank: int) -> MarkedGroup:
    if rank < 0:
        raise SpecError("F k needs k >= 0")
    # inputs arrive freely reduced, so the word is its own normal form
    def step(k: Word, x: int) -> Word:
        return k[:-1] if k and k[-1] == -x else k + (x,)

    return MarkedGroup(rank, lambda w: len(w) == 0, f"F{rank}", key=lambda w: w, key_step=step)


def baumslag_solitar(m: int) -> MarkedGroup:
    """BS(1,m) = <a, b | b a b^-1 = a^m> acting by affine maps x -> m^e x + q."""
    if m == 0:
        raise SpecError("BS(1,m) needs m != 0")

    def step(k: tuple, x: int) -> tuple:
        q, e = k
        if abs(x) == 1:
            return q + x * Fraction(m) ** e, e
        return q, e + (1 if x == 2 else -1)

    return _stepped(2, f"BS(1,{m})", (Fraction(0), 0), step)


def permutation_group(generators: Sequence[Sequence[int]], name: str) -> MarkedGroup:
    """Marked group generated by permutations given as image lists."""
    gens = [tuple(g) for g in generators]
    if not gens:
        raise SpecError("need at least one generator")
    n = len(gens[0])
    invs = []
    for g in gens:
        if sorted(g) != list(range(n)):
            raise SpecError(f"{g} is not a permutation of {n} points")
        inv = [0] * n
        for i, j in enumerate(g):
            inv[j] = i
        invs.append(tuple(inv))

    def step(p: tuple, x: int) -> tuple:
        g = gens[x - 1] if x > 0 else invs[-x - 1]
        return tuple(g[i] for i in p)

    return _stepped(len(gens), name, tuple(range(n)), step)


def _cycle(points: Sequence[int], n: int) -> tuple[int, ...]:
    img = list(range(n))
    for i, p in enumerate(points):
        img[p] = points[(i + 1) % len(points)]
    return tuple(img)


def dihedral(n: int) -> MarkedGroup:
    """Dihedral group of order ``2n``, marked by (rotation, reflection)."""
    if n < 3:
        raise SpecError("D n needs n >= 3")
    rotation = _cycle(list(range(n)), n)
    reflection = tuple((-i) % n for i in range(n))
    return permutation_group([rotation, reflection], f"D{n}")


def symmetric(n: int) -> MarkedGroup:
    """S_n marked by the transposition (0 1) and the n-cycle."""
    if n < 2:
        raise SpecError("S n needs n >= 2")
    return permutation_group([_cycle([0, 1], n), _cycle(list(range(n)), n)], f"S{n}")


def alternating(n: int) -> MarkedGroup:
    """A_n marked by (0 1 2) and an n-cycle (n odd) or (1 ... n-1) (n even)."""
    if n < 3:
        raise SpecError("A n needs n >= 3")
    second = list(range(n)) if n % 2 else list(range(1, n))
    return permutation_group([_cycle([0, 1, 2], n), _cycle(second, n)], f"A{n}")


def heisenberg() -> MarkedGroup:
    """Integer Heisenberg group in Mal'cev coordinates; center generated by [a,b]."""

    def step(k: tuple, letter: int) -> tuple:
        x, y, z = k
        d = 1 if letter > 0 else -1
        if abs(letter) == 1:
            return x + d, y, z
        return x, y + d, z + x * d

    return _stepped(2, "Heis", (0, 0, 0), step)


def lamplighter() -> MarkedGroup:
    """Z/2 wr Z marked by (lamp at 0, shift)."""

    def step(k: tuple, letter: int) -> tuple:
        lamps, pos = k
        if abs(letter) == 1:
            return lamps ^ {pos}, pos
        return lamps, pos + (1 if letter > 0 else -1)

    return _stepped(2, "Lamp", (frozenset(), 0), step)


def catalog(name: str, *params: int) -> MarkedGroup:
    """Look up a catalog entry by name, e.g. ``catalog("cyclic", 5)``."""
    table = {
        "trivial": trivial, "Z": lambda: integers(), "integers": lambda: integers(),
        "Z^k": free_abelian, "free_abelian": free_abelian, "cyclic": cyclic, "Z/n": cyclic,
        "free": free, "F": free, "bs": baumslag_solitar, "BS": baumslag_solitar,
        "dihedral": dihedral, "D": dihedral, "symmetric": symmetric, "S": symmetric,
        "alternating": alternating, "A": alternating, "heisenberg": heisenberg,
        "Heis": heisenberg, "lamplighter": lamplighter, "Lamp": lamplighter,
    }
    try:
        factory = table[name]
    except KeyError:
        raise SpecError(f"unknown catalog group {name!r}") from None
    try:
        return factory(*params)
    except TypeError as exc:
        raise SpecError(f"bad parameters {params} for {name}: {exc}") from None

