"""Marked groups as executable word-problem oracles."""
from __future__ import annotations

import random
import threading
from dataclasses import dataclass, field
from typing import Callable, Hashable, Optional, Sequence

from ..words import (EMPTY, MalformedInput, Word, inverse, mul, reduce, shortlex_index,
                     word_at)

_CACHE_LIMIT = 200_000


class SpecError(ValueError):
    """Bad group specification, parameter, or rank mismatch."""


class MarkedGroup:
    """A rank-``k`` marked group given by a total relation predicate.

    ``decide`` receives freely reduced words and answers whether they are
    trivial in the group.  ``key``, when present, maps a reduced word to a
    hashable canonical form of the element it represents; it must agree
    with ``decide`` (``key(u) == key(v)`` iff ``u v^-1`` is a relation) and
    is used only to speed up element bookkeeping.  ``key_step(key, letter)``,
    when present, gives the key of ``w·letter`` from the key of ``w``.
    """

    def __init__(self, rank: int, decide: Callable[[Word], bool], name: str = "G",
                 key: Optional[Callable[[Word], Hashable]] = None,
                 key_step: Optional[Callable[[Hashable, int], Hashable]] = None):
        if rank < 0:
            raise SpecError("rank must be nonnegative")
        self.rank = rank
        self.name = name
        self._decide = decide
        self._key = key
        self.key_step = key_step if key is not None else None
        self._cache: dict[Word, bool] = {}
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"MarkedGroup({self.name!r}, rank={self.rank})"

    def is_relation(self, word: Sequence[int]) -> bool:
        w = reduce(word)
        if not w:
            return True
        cached = self._cache.get(w)
        if cached is not None:
            return cached
        for letter in w:
            if abs(letter) > self.rank:
                raise MalformedInput(f"letter {letter} outside rank {self.rank} of {self.name}")
        answer = bool(self._decide(w))
        with self._lock:
            if len(self._cache) > _CACHE_LIMIT:
                self._cache.clear()
            self._cache[w] = answer
        return answer

    def equal(self, u: Sequence[int], v: Sequence[int]) -> bool:
        return self.is_relation(mul(u, inverse(v)))

    def bit(self, n: int) -> int:
        return int(self.is_relation(word_at(n, self.rank)))

    @property
    def has_key(self) -> bool:
        return self._key is not None

    def element_key(self, word: Sequence[int]) -> Hashable:
        if self._key is None:
            raise TypeError(f"{self.name} has no canonical element keys")
        return self._key(reduce(word))

    def generators(self) -> list[Word]:
        return [(i,) for i in range(1, self.rank + 1)]


def bit(group: MarkedGroup, n: int) -> int:
    """Bit ``n`` of the binary expansion: 1 iff the ``n``-th shortlex word is a relation."""
    return group.bit(n)


def from_bits(rank: int, bits: Callable[[int], int], name: str) -> MarkedGroup:
    """A marked group whose oracle reads its own binary expansion."""
    return MarkedGroup(rank, lambda w: bool(bits(shortlex_index(w, rank))), name)


@dataclass
class GroupSequence:
    """Indexed same-rank family with a regulator ``precision -> index``.

    For every ``n >= regulator(m)`` the ``n``-th member agrees with the
    limit on bits ``0..m-1``.
    """

    rank: int
    member: Callable[[int], MarkedGroup]
    regulator: Callable[[int], int]
    name: str = "seq"
    declared_limit: Optional[MarkedGroup] = None
    _members: dict = field(default_factory=dict, repr=False)

    def at(self, n: int) -> MarkedGroup:
        g = self._members.get(n)
        if g is None:
            g = self.member(n)
            if g.rank != self.rank:
                raise SpecError(f"member {n} has rank {g.rank}, expected {self.rank}")
            self._members[n] = g
        return g


# -- lawfulness sampling -------------------------------------------------------

def random_word(rng: random.Random, rank: int, max_len: int) -> Word:
    if rank == 0:
        return EMPTY
    n = rng.randint(0, max_len)
    letters = [rng.choice((1, -1)) * rng.randint(1, rank) for _ in range(n)]
    return reduce(letters)


def _relation_pool(group: MarkedGroup, scan: int) -> list[Word]:
    pool = [w for w in (word_at(i, group.rank) for i in range(1, scan)) if group.is_relation(w)]
    return pool or [EMPTY]


def check_lawful(group: MarkedGroup, pairs: int = 500, conjugators: int = 20,
                 seed: int = 0, max_len: int = 6, scan: int = 200) -> list[str]:
    """Sample the normal-subgroup axioms; return a list of violations."""
    rng = random.Random(seed)
    k = group.rank
    problems = []
    if not group.is_relation(EMPTY):
        problems.append("empty word is not a relation")
    if k == 0:
        return problems
    pool = _relation_pool(group, scan)

    def draw() -> Word:
        if rng.random() < 0.5:
            g = random_word(rng, k, 3)
            return mul(inverse(g), rng.choice(pool), g)
        return random_word(rng, k, max_len)

    for _ in range(pairs):
        u, v = draw(), draw()
        ru, rv = group.is_relation(u), group.is_relation(v)
        if ru != group.is_relation(inverse(u)):
            problems.append(f"inverse closure fails at {u}")
        if ru and rv and not group.is_relation(mul(u, v)):
            problems.append(f"product closure fails at {u}, {v}")
        if ru:
            for _ in range(conjugators):
                g = random_word(rng, k, max_len)
                if not group.is_relation(mul(g, u, inverse(g))):
                    problems.append(f"conjugation closure fails at {u} by {g}")
                    break
    return problems


# -- sphere-by-sphere normal forms ---------------------------------------------

class NormalFormTable:
    """Shortlex normal forms of group elements, built one sphere at a time.

    Candidates ``u·s`` for ``u`` on the outer sphere are produced in
    shortlex order, so the first candidate hitting a new element is its
    shortlex-least representative.  A candidate of length ``r+1`` lies at
    distance ``r-1``, ``r`` or ``r+1`` from the root, so it is compared
    only against those spheres.  ``charge`` receives each candidate's length
    (at least 1), the cost of one oracle comparison.
    """

    def __init__(self, group: MarkedGroup, charge: Callable[[int], None] = lambda n: None):
        self.group = group
        self.rank = group.rank
        self.charge = charge
        self.words: list[Word] = [EMPTY]
        self.depth: list[int] = [0]
        self.spheres: list[list[int]] = [[0]]
        self.edges: dict[tuple[int, int], int] = {}
        self.closed = False
        self._keys: dict = {}
        if group.has_key:
            self._keys[group.element_key(EMPTY)] = 0
        self._index: dict[Word, int] = {EMPTY: 0}

    @property
    def radius(self) -> int:
        return len(self.spheres) - 1

    def __len__(self) -> int:
        return len(self.words)

    def _find(self, word: Word, among: Sequence[int]) -> Optional[int]:
        self.charge(max(1, len(word)))
        if self.group.has_key:
            idx = self._keys.get(self.group.element_key(word))
            return idx
        for idx in among:
            if self.group.equal(word, self.words[idx]):
                return idx
        return None

    def grow(self) -> bool:
        """Compute the next sphere; return False (and set ``closed``) when empty."""
        if self.closed:
            return False
        r = self.radius
        inner = self.spheres[r - 1] if r >= 1 else []
        outer = self.spheres[r]
        new: list[int] = []
        for u in outer:
            uw = self.words[u]
            for pos in range(2 * self.rank):
                letter = pos + 1 if pos < self.rank else -(pos - self.rank + 1)
                if uw and uw[-1] == -letter:
                    self.edges[(u, letter)] = self._index[uw[:-1]]
                    continue
                cand = uw + (letter,)
                hit = self._find(cand, [*inner, *outer, *new])
                if hit is None:
                    hit = len(self.words)
                    self.words.append(cand)
                    self.depth.append(r + 1)
                    self._index[cand] = hit
                    if self.group.has_key:
                        self._keys[self.group.element_key(cand)] = hit
                    new.append(hit)
                self.edges[(u, letter)] = hit
        if not new:
            self.closed = True
            return False
        self.spheres.append(new)
        return True

    def grow_to(self, radius: int) -> None:
        while self.radius < radius and self.grow():
            pass

    def grow_until(self, size: int) -> None:
        """Grow until more than ``size`` elements are known or the group closes."""
        while len(self.words) <= size and self.grow():
            pass

    def boundary_edges(self, radius: int) -> tuple[dict[tuple[int, int], Optional[int]], bool]:
        """Edges out of sphere ``radius`` that stay within the ball, and closure.

        Does not create the next sphere.  Returns ``(edges, closed)``; an
        edge maps to None when it leaves the ball.
        """
        self.grow_to(radius)
        if radius < self.radius or self.closed:
            out = {}
            for u in self.spheres[radius] if radius < len(self.spheres) else []:
                for pos in range(2 * self.rank):
                    letter = pos + 1 if pos < self.rank else -(pos - self.rank + 1)
                    v = self.edges.get((u, letter))
                    out[(u, letter)] = v if v is not None and self.depth[v] <= radius else None
            return out, self.closed or all(v is not None for v in out.values())
        inner = self.spheres[radius - 1] if radius >= 1 else []
        outer = self.spheres[radius]
        out = {}
        for u in outer:
            uw = self.words[u]
            for pos in range(2 * self.rank):
                letter = pos + 1 if pos < self.rank else -(pos - self.rank + 1)
                if uw and uw[-1] == -letter:
                    out[(u, letter)] = self._index[uw[:-1]]
                    continue
                out[(u, letter)] = self._find(uw + (letter,), [*inner, *outer])
        closed = all(v is not None for v in out.values())
        return out, closed

    def index_of(self, word: Sequence[int]) -> int:
        """Index of the normal form equal to ``word`` (grows as needed)."""
        w = reduce(word)
        if w in self._index:
            return self._index[w]
        self.grow_to(len(w))
        if self.group.has_key:
            idx = self._keys.get(self.group.element_key(w))
            if idx is not None:
                return idx
        else:
            for idx in range(len(self.words)):
                if self.depth[idx] <= len(w) and self.group.equal(w, self.words[idx]):
                    return idx
        raise RuntimeError(f"element of {w} not found within radius {len(w)}; oracle is not lawful")
