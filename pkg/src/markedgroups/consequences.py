"""Enumeration of the normal closure of a set of relators, with certificates.

Accepted words are consequences of the base relators.  Each one records how
it was obtained (inverse, conjugate, product, or a normalization chain), so
any accepted word expands into a product of conjugates of base relators
that freely reduces to it.

Candidates are processed shortest first, ties broken by shortlex.  Besides
the plain moves (inverse, one-letter conjugates, pairwise products taken
one pair per step in a dovetailed order) every accepted word is normalized
by cyclic reduction and greedy rewriting with the cyclically reduced
relators known so far: a relator piece is replaced by the rest of the relator
when that is shorter, or equally long and earlier in shortlex order.
Rewriting only shortens the search, so words much longer than every
relator skip it (its cost is quadratic in the word length).
"""
from __future__ import annotations

import heapq
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .verdict import Fuel, OutOfFuel
from .words import EMPTY, Word, cyclic_reduce, inverse, letter_at, mul, reduce

SHORT_LIMIT = 8
# words longer than this many times the longest relator skip normalization
NORMALIZE_FACTOR = 4
_CERT_LIMIT = 500_000


class CertificateTooLarge(RuntimeError):
    pass


def canonical_cyclic(core: Word, rank: int) -> bytes:
    """Least rotation of ``core`` or its inverse, as a shortlex byte key."""
    size = len(core)
    if not size:
        return b""
    candidates = []
    for w in (core, inverse(core)):
        doubled = bytes(map(_positions(rank).__getitem__, w)) * 2
        candidates.extend(doubled[i:i + size] for i in range(size))
    return min(candidates)


@lru_cache(maxsize=None)
def _positions(rank: int) -> dict[int, int]:
    return {letter_at(p, rank): p for p in range(2 * rank)}


def expand_product(terms: Sequence[tuple[Word, int, int]], relators: Sequence[Word]) -> Word:
    """Freely reduced product of ``g r_i^s g^-1`` over the terms."""
    parts = []
    for g, i, s in terms:
        r = relators[i] if s > 0 else inverse(relators[i])
        parts.extend((g, r, inverse(g)))
    return mul(*parts)


def check_certificate(word: Sequence[int], terms, relators: Sequence[Sequence[int]]) -> bool:
    rels = [reduce(r) for r in relators]
    try:
        return expand_product([(tuple(g), i, s) for g, i, s in terms], rels) == reduce(word)
    except IndexError:
        return False


def _conj_letter(w: Word, x: int) -> Word:
    """``x w x^-1`` freely reduced, for reduced ``w``."""
    start, end = (1, len(w)) if w and w[0] == -x else (0, len(w))
    if end > start and w[end - 1] == x:
        end -= 1
        return ((x,) if start == 0 else ()) + w[start:end]
    return ((x,) if start == 0 else ()) + w[start:end] + (-x,)


class ConsequenceEngine:
    def __init__(self, rank: int, relators: Iterable[Sequence[int]] = (), fuel: Optional[Fuel] = None,
                 short_limit: int = SHORT_LIMIT):
        self.rank = rank
        self.fuel = fuel
        self.short_limit = short_limit
        self.normalize_limit = NORMALIZE_FACTOR * 2 * short_limit
        self._pos = _positions(rank)
        self._letters = [letter_at(p, rank) for p in range(2 * rank)]
        self.relators: list[Word] = []
        # node kinds: ("base", i) ("inv", n) ("conj", n, g) ("prod", a, b) ("empty",)
        self.nodes: list[tuple] = [("empty",)]
        self._inv_memo: dict[int, int] = {}
        self.words: dict[int, Word] = {0: EMPTY}
        self.accepted: list[int] = []
        self.accepted_words: set[Word] = set()
        self.cyclic: dict[bytes, int] = {}
        self.rules: dict[Word, tuple[int, int, Word]] = {}
        self._rule_lengths: list[int] = []
        self._short: set[bytes] = set()
        self._heap: list = []
        self._seen: set[bytes] = set()
        self._pair = (0, 0)
        self.targets: dict[Word, Optional[int]] = {}
        self._target_forms: dict[Word, tuple[bytes, Word, list]] = {}
        self._open_by_key: dict[bytes, set[Word]] = {}
        self.steps = 0
        for r in relators:
            self.add_relator(r)

    # -- bookkeeping --------------------------------------------------------

    def _spend(self) -> None:
        if self.fuel is not None:
            self.fuel.spend()

    def _node(self, kind: tuple, word: Optional[Word] = None) -> int:
        self.nodes.append(kind)
        n = len(self.nodes) - 1
        if word is not None:
            self.words[n] = word
        return n

    def _inv(self, n: int) -> int:
        if n == 0:
            return 0
        m = self._inv_memo.get(n)
        if m is None:
            m = self._node(("inv", n))
            self._inv_memo[n] = m
            self._inv_memo[m] = n
        return m

    def _conj(self, n: int, g: Word) -> int:
        return self._node(("conj", n, g)) if g else n

    def _prod(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        return self._node(("prod", a, b))

    def _key(self, w: Word) -> bytes:
        return bytes(map(self._pos.__getitem__, w))

    def _push(self, word: Word, recipe: tuple) -> None:
        if not word:
            return
        key = self._key(word)
        if key in self._seen:
            return
        self._spend()
        self._seen.add(key)
        heapq.heappush(self._heap, (len(word), key, recipe))

    # -- normalization ------------------------------------------------------

    def _add_rules(self, n: int, core: Word) -> None:
        for eps, x in ((1, core), (-1, inverse(core))):
            size = len(x)
            for i in range(size):
                alpha, beta = x[:i], x[i:]
                y = beta + alpha
                for j in range(size // 2 + 1):
                    v, u = y[:j], y[j:]
                    if u not in self.rules and (len(u) > len(v) or (
                            len(u) == len(v) and self._key(inverse(v)) < self._key(u))):
                        self.rules[u] = (n, eps, alpha, v)
        self._rule_lengths = sorted({len(u) for u in self.rules}, reverse=True)

    def _rewrite_once(self, w: Word):
        for i in range(len(w)):
            for size in self._rule_lengths:
                if i + size > len(w):
                    continue
                rule = self.rules.get(w[i:i + size])
                if rule is not None:
                    m, eps, alpha, v = rule
                    p = w[:i]
                    new = mul(p, inverse(v), w[i + size:])
                    g = mul(p, inverse(v), inverse(alpha))
                    return new, ("rw", g, m, eps)
        return None

    def normalize(self, word: Word) -> tuple[Word, list]:
        """Alternate cyclic reduction and rewriting; returns ``(form, ops)``."""
        w = reduce(word)
        ops: list = []
        while True:
            core, h = cyclic_reduce(w)
            if h:
                ops.append(("core", h))
                w = core
            step = self._rewrite_once(w) if self.rules else None
            if step is None:
                return w, ops
            w, op = step
            ops.append(op)

    def _forward(self, n: int, ops: list) -> int:
        """Node for the normalized form, given node ``n`` for the original word."""
        for op in ops:
            if op[0] == "core":
                n = self._conj(n, inverse(op[1]))
            else:
                _, g, m, eps = op
                x = self._inv(m) if eps == 1 else m
                n = self._prod(self._conj(x, g), n)
        return n

    def _backward(self, n: int, ops: list) -> int:
        """Node for the original word, given node ``n`` for its normalized form."""
        for op in reversed(ops):
            if op[0] == "core":
                n = self._conj(n, op[1])
            else:
                _, g, m, eps = op
                x = m if eps == 1 else self._inv(m)
                n = self._prod(self._conj(x, g), n)
        return n

    def _match(self, form: Word) -> Optional[int]:
        """Node for the cyclically reduced ``form`` if a rotation of it or its inverse is accepted."""
        if not form:
            return 0
        m = self.cyclic.get(canonical_cyclic(form, self.rank))
        if m is None:
            return None
        mw = self.words[m]
        for eps, x, node in ((1, mw, m), (-1, inverse(mw), None)):
            for i in range(len(x)):
                if x[i:] + x[:i] == form:
                    base = node if node is not None else self._inv(m)
                    return self._conj(base, inverse(x[:i]))
        raise AssertionError("canonical form mismatch")

    # -- public interface -----------------------------------------------------

    def add_relator(self, word: Sequence[int]) -> None:
        w = reduce(word)
        self.relators.append(w)
        self.normalize_limit = max(self.normalize_limit, NORMALIZE_FACTOR * len(w))
        n = self._node(("base", len(self.relators) - 1), w)
        self._spend()
        if w and w not in self.accepted_words:
            self._accept(n, w)

    def add_target(self, word: Sequence[int]) -> Optional[int]:
        w = reduce(word)
        if w not in self.targets:
            self.targets[w] = None
            self._check_target(w)
        return self.targets[w]

    def proven(self, word: Sequence[int]) -> bool:
        return self.add_target(word) is not None

    def _check_target(self, w: Word) -> None:
        form, ops = self.normalize(w)
        key = canonical_cyclic(form, self.rank)
        old = self._target_forms.get(w)
        if old is not None:
            self._open_by_key[old[0]].discard(w)
        self._target_forms[w] = (key, form, ops)
        m = self._match(form)
        if m is not None:
            self.targets[w] = self._backward(m, ops)
        else:
            self._open_by_key.setdefault(key, set()).add(w)

    def _refresh_targets(self, key: Optional[bytes] = None) -> None:
        """Recheck open targets: all of them, or only those whose form has cyclic key ``key``."""
        if key is None:
            for w in self.open_targets():
                self._check_target(w)
            return
        for w in self._open_by_key.pop(key, ()):
            _, form, ops = self._target_forms[w]
            self.targets[w] = self._backward(self._match(form), ops)

    def open_targets(self) -> list[Word]:
        return [w for w, n in self.targets.items() if n is None]

    def _accept(self, n: int, w: Word) -> None:
        self.words[n] = w
        self.accepted.append(n)
        self.accepted_words.add(w)
        core, h = cyclic_reduce(w)
        if h:
            self._push(core, ("conj", n, inverse(h)))
            return
        key = canonical_cyclic(w, self.rank)
        if key not in self.cyclic:
            self.cyclic[key] = n
            self._refresh_targets(key)
        if self.rules and len(w) <= self.normalize_limit:
            form, ops = self.normalize(w)
            if form != w:
                self._push(form, ("norm", n, ops))
                return
        base = self.nodes[n][0] == "base" and len(w) <= 3 * self.short_limit
        if (len(w) <= self.short_limit or base) and key not in self._short:
            self._short.add(key)
            self._add_rules(n, w)
            self._renormalize()
        self._push(inverse(w), ("inv", n))
        for i in range(1, self.rank + 1):
            for x in (i, -i):
                self._push(_conj_letter(w, x), ("conj", n, (x,)))

    def _renormalize(self) -> None:
        for m in list(self.accepted):
            w = self.words[m]
            if 1 < len(w) <= self.normalize_limit and w == cyclic_reduce(w)[0]:
                form, ops = self.normalize(w)
                if form != w:
                    self._push(form, ("norm", m, ops))
        self._refresh_targets()

    def _realize(self, recipe: tuple) -> int:
        kind = recipe[0]
        if kind == "inv":
            return self._inv(recipe[1])
        if kind == "conj":
            return self._conj(recipe[1], recipe[2])
        if kind == "prod":
            return self._prod(recipe[1], recipe[2])
        if kind == "norm":
            return self._forward(recipe[1], recipe[2])
        raise ValueError(kind)

    def _next_pair(self) -> Optional[tuple[int, int]]:
        """Pairs ordered by larger index, then smaller; one per call."""
        a, b = self._pair
        if a >= len(self.accepted):
            return None
        self._pair = (a, b + 1) if b < 2 * a else (a + 1, 0)
        # b in 0..2a encodes (a, j) for even b and (j, a) for odd b
        j = b // 2
        return (a, j) if b % 2 == 0 else (j, a)

    @property
    def saturated(self) -> bool:
        return not self._heap and self._pair[0] >= len(self.accepted)

    def step(self) -> bool:
        """One unit of work; False once nothing is left to do."""
        self.steps += 1
        progressed = False
        if self._heap:
            _, key, recipe = heapq.heappop(self._heap)
            w = tuple(map(self._letters.__getitem__, key))
            if w not in self.accepted_words:
                self._accept(self._realize(recipe), w)
            progressed = True
        pair = self._next_pair()
        if pair is not None:
            i, j = pair
            a, b = self.accepted[i], self.accepted[j]
            self._spend()
            self._push(mul(self.words[a], self.words[b]), ("prod", a, b))
            progressed = True
        return progressed

    def run(self, until=lambda: False) -> bool:
        """Step until ``until()`` holds (True), saturation or fuel exhaustion (False)."""
        try:
            while not until():
                if not self.step():
                    return until()
            return True
        except OutOfFuel:
            return until()

    # -- certificates ---------------------------------------------------------

    def certificate(self, n: int) -> list[tuple[Word, int, int]]:
        """Terms ``(g, i, s)`` meaning ``g r_i^s g^-1`` whose product is node ``n``'s word."""
        memo: dict[int, list] = {}
        size = [0]

        def terms(k: int) -> list:
            if k in memo:
                return memo[k]
            node = self.nodes[k]
            kind = node[0]
            if kind == "empty":
                out = []
            elif kind == "base":
                out = [(EMPTY, node[1], 1)]
            elif kind == "inv":
                out = [(g, i, -s) for g, i, s in reversed(terms(node[1]))]
            elif kind == "conj":
                h = node[2]
                out = [(mul(h, g), i, s) for g, i, s in terms(node[1])]
            else:
                out = terms(node[1]) + terms(node[2])
            size[0] += len(out)
            if size[0] > _CERT_LIMIT:
                raise CertificateTooLarge(f"certificate exceeds {_CERT_LIMIT} terms")
            memo[k] = out
            return out

        import sys
        limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(limit, 20_000))
        try:
            return terms(n)
        finally:
            sys.setrecursionlimit(limit)

    def target_certificate(self, word: Sequence[int]) -> list[tuple[Word, int, int]]:
        node = self.targets.get(reduce(word))
        if node is None:
            raise KeyError("target not proven")
        return self.certificate(node)


def consequences(relators: Iterable[Sequence[int]], fuel: int | Fuel, rank: Optional[int] = None) -> set[Word]:
    """Accepted consequences within ``fuel`` derived words (always contains ε)."""
    rels = [reduce(r) for r in relators]
    if rank is None:
        rank = max((abs(x) for r in rels for x in r), default=1)
    fuel = fuel if isinstance(fuel, Fuel) else Fuel(fuel)
    engine = ConsequenceEngine(rank, fuel=fuel)
    try:
        for r in rels:
            engine.add_relator(r)
    except OutOfFuel:
        return {EMPTY} | engine.accepted_words
    engine.run()
    return {EMPTY} | engine.accepted_words
