"""Group properties: exact checks for the clopen ones, fuel-bounded searches for the rest.

Every search walks shortlex words (and Cantor-paired tuples of them) in a
fixed order, so a verdict found at some fuel is found with the same
witness at any larger fuel.  ``validate`` re-checks a Verified witness with
oracle queries only.
"""
from __future__ import annotations

from itertools import product as cartesian
from typing import Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .clopen import finite_from_recpres_semidecide, quotient_recpres
from .metric import ball
from .oracle.catalog import trivial
from .oracle.combinators import generates_semidecide, subgroup_marking, tuple_at
from .oracle.group import MarkedGroup, NormalFormTable, SpecError
from .verdict import Fuel, OutOfFuel, Verdict
from .words import (EMPTY, Word, cantor_unpair, commutator, conjugate, inverse, left_normed, mul,
                    power, substitute, unpair_tuple, word_at)


def _fuel(fuel) -> Fuel:
    return fuel if isinstance(fuel, Fuel) else Fuel(fuel)


def _letters(g: MarkedGroup) -> list[int]:
    return [x for i in range(1, g.rank + 1) for x in (i, -i)]


# -- decidable -------------------------------------------------------------------

def abelian_verdict(g: MarkedGroup) -> Verdict:
    queries = 0
    for i in range(1, g.rank + 1):
        for j in range(i + 1, g.rank + 1):
            queries += 1
            c = commutator((i,), (j,))
            if not g.is_relation(c):
                return Verdict.refuted(list(c), queries)
    return Verdict.verified(None, queries)


def is_abelian(g: MarkedGroup) -> bool:
    return abelian_verdict(g).is_verified


def nilpotent_verdict(g: MarkedGroup, c: int) -> Verdict:
    """Class at most ``c`` iff all left-normed weight ``c+1`` generator commutators vanish."""
    if c < 1:
        raise SpecError("nilpotency class bound must be >= 1")
    queries = 0
    for seq in cartesian(range(1, g.rank + 1), repeat=c + 1):
        queries += 1
        w = left_normed([(i,) for i in seq])
        if not g.is_relation(w):
            return Verdict.refuted(list(w), queries)
    return Verdict.verified(None, queries)


def nilpotent_class_at_most(g: MarkedGroup, c: int) -> bool:
    return nilpotent_verdict(g, c).is_verified


def _key_orbit(g: MarkedGroup, limit: int) -> set:
    """Breadth-first element keys from the identity, stopping once ``limit`` are known."""
    start = g.element_key(())
    seen = {start}
    frontier = [start]
    letters = [x for s in range(1, g.rank + 1) for x in (s, -s)]
    while frontier and len(seen) < limit:
        nxt = []
        for k in frontier:
            for x in letters:
                k2 = g.key_step(k, x)
                if k2 not in seen:
                    seen.add(k2)
                    nxt.append(k2)
        frontier = nxt
    return seen


def card_verdict(g: MarkedGroup, n: int) -> Verdict:
    if n < 1:
        raise SpecError("cardinality bound must be >= 1")
    if g.key_step is not None:
        seen = _key_orbit(g, n + 1)
        if len(seen) > n:
            return Verdict.refuted({"distinct": len(seen)}, len(seen))
        return Verdict.verified({"order": len(seen)}, len(seen))
    table = NormalFormTable(g)
    table.grow_until(n)
    if len(table) > n:
        return Verdict.refuted({"distinct": len(table)}, len(table))
    return Verdict.verified({"order": len(table)}, len(table))


def card_at_most(g: MarkedGroup, n: int) -> bool:
    return card_verdict(g, n).is_verified


# -- semi-decidable ----------------------------------------------------------------

def is_finite_semidecide(g: MarkedGroup, fuel) -> Verdict:
    fuel = _fuel(fuel)
    table = NormalFormTable(g, charge=fuel.spend)
    try:
        while table.grow():
            pass
    except OutOfFuel:
        return fuel.exhausted()
    return Verdict.verified({"order": len(table), "elements": [list(w) for w in table.words]}, fuel.spent)


def torsion_semidecide(g: MarkedGroup, fuel) -> Verdict:
    """Search pairs ``(w, m)`` with ``w != 1``, ``w^m = 1``, ``m >= 2`` in Cantor order."""
    fuel = _fuel(fuel)
    nontrivial: dict[int, bool] = {}
    if g.rank == 0:
        return Verdict.unknown(fuel.budget)
    try:
        z = 0
        while True:
            i, m = cantor_unpair(z)
            z += 1
            m += 2
            w = word_at(i + 1, g.rank)
            if i not in nontrivial:
                nontrivial[i] = not fuel.query(g, w)
            if not nontrivial[i]:
                continue
            fuel.spend(len(w) * m)  # building and querying w^m is linear in its length
            if fuel.query(g, power(w, m)):
                return Verdict.verified({"element": list(w), "order": m}, fuel.spent)
    except OutOfFuel:
        return fuel.exhausted()


def center_nontrivial_semidecide(g: MarkedGroup, fuel) -> Verdict:
    fuel = _fuel(fuel)
    if g.rank == 0:
        return Verdict.unknown(fuel.budget)
    try:
        n = 1
        while True:
            w = word_at(n, g.rank)
            n += 1
            if fuel.query(g, w):
                continue
            if all(fuel.query(g, commutator(w, (i,))) for i in range(1, g.rank + 1)):
                return Verdict.verified({"element": list(w)}, fuel.spent)
    except OutOfFuel:
        return fuel.exhausted()


class _Elements:
    """Distinct elements in normal-form order, indexed lazily; wraps around in finite groups."""

    def __init__(self, g: MarkedGroup, fuel: Fuel):
        self.table = NormalFormTable(g, charge=fuel.spend)

    def __getitem__(self, i: int) -> Word:
        while len(self.table) <= i and self.table.grow():
            pass
        return self.table.words[i % len(self.table)]


def _halving_schedule():
    """Yield every ``(count, index)`` once; larger counts get geometrically less work."""
    done: list[int] = []
    stage = 0
    while True:
        stage += 1
        done.append(0)
        for count in range(stage):
            while done[count] < 2 ** (stage - count):
                yield count, done[count]
                done[count] += 1


def _commutator_product(count: int, rest: int, elements: _Elements) -> tuple[Word, list]:
    idx = unpair_tuple(rest, 2 * (count + 1))
    pairs = [(elements[idx[2 * t]], elements[idx[2 * t + 1]]) for t in range(count + 1)]
    return mul(*(commutator(u, v) for u, v in pairs)), pairs


def perfect_semidecide(g: MarkedGroup, fuel) -> Verdict:
    """Express every generator as a product of commutators of group elements."""
    fuel = _fuel(fuel)
    todo = list(range(1, g.rank + 1))
    found: dict[int, list] = {}
    try:
        elements = _Elements(g, fuel)
        schedule = _halving_schedule()
        while todo:
            w, pairs = _commutator_product(*next(schedule), elements)
            for i in list(todo):
                if fuel.query(g, mul(w, (-i,))):
                    found[i] = [[list(u), list(v)] for u, v in pairs]
                    todo.remove(i)
    except OutOfFuel:
        return fuel.exhausted()
    return Verdict.verified({"expressions": found}, fuel.spent)


def rank_at_most_semidecide(g: MarkedGroup, j: int, fuel) -> Verdict:
    """Stage ``t`` tries tuples ``0..t`` with ``t`` queries each."""
    fuel = _fuel(fuel)
    if j == 0:
        try:
            if all(fuel.query(g, (i,)) for i in range(1, g.rank + 1)):
                return Verdict.verified({"tuple": [], "expressions": {}}, fuel.spent)
        except OutOfFuel:
            pass
        return fuel.exhausted()
    try:
        t = 0
        while True:
            for n in range(t + 1):
                tup = tuple_at(n, j, g.rank)
                inner = Fuel(min(t, fuel.remaining))
                v = generates_semidecide(g, tup, inner)
                fuel.spend(inner.spent)
                if v.is_verified:
                    return Verdict.verified(
                        {"tuple": [list(w) for w in tup],
                         "expressions": {i: list(u) for i, u in v.witness.items()}}, fuel.spent)
                if fuel.remaining == 0:
                    raise OutOfFuel
            t += 1
    except OutOfFuel:
        return fuel.exhausted()


def _in_subgroup(g: MarkedGroup, target: Word, gens: tuple[Word, ...], budget: Fuel) -> Word:
    """A word over ``gens`` (letters ``1..len(gens)``) equal to ``target``, by shortlex search.

    A candidate costs its length on top of the query.
    """
    n = 0
    while True:
        u = word_at(n, len(gens))
        budget.spend(len(u))
        if budget.query(g, mul(inverse(substitute(u, gens)), target)):
            return u
        n += 1


def _normality(g: MarkedGroup, gens: tuple[Word, ...], budget: Fuel) -> dict:
    """Each conjugate ``x^-1 a x`` by a letter, expressed over ``gens``."""
    return {f"{i},{x}": list(_in_subgroup(g, conjugate(a, (x,)), gens, budget))
            for i, a in enumerate(gens, 1) for x in _letters(g)}


def cyclic_checker(h: MarkedGroup, budget: Fuel) -> Verdict:
    return rank_at_most_semidecide(h, 1, budget)


def nilpotent_checker(h: MarkedGroup, budget: Fuel) -> Verdict:
    """Nilpotent of some class, trying ``c = 1, 2, ...``.

    Each commutator query costs its length, which doubles with ``c``.
    """
    c = 0
    try:
        while True:
            c += 1
            for seq in cartesian(range(1, h.rank + 1), repeat=c + 1):
                w = left_normed([(i,) for i in seq])
                budget.spend(max(1, len(w)))
                if not h.is_relation(w):
                    break
            else:
                return Verdict.verified({"class_at_most": c}, budget.spent)
    except OutOfFuel:
        return budget.exhausted()


def virtually_semidecide(g: MarkedGroup, fuel, checker=cyclic_checker, size: Optional[int] = 1) -> Verdict:
    """A finitely generated normal subgroup accepted by ``checker`` with finite quotient.

    Candidate generating sets are ``size``-tuples of words in tuple order
    (all sizes, dovetailed, when ``size`` is None).  Stage ``t`` gives each
    of the first ``t`` candidates (``2^t`` when sizes are dovetailed) a
    fresh budget of ``2^t`` for the normality search, the checker and the
    quotient's finiteness.
    """
    fuel = _fuel(fuel)

    def candidate(n: int) -> tuple[Word, ...]:
        if size is None:
            k, n = cantor_unpair(n)
            return tuple_at(n, k + 1, g.rank)
        return tuple_at(n, size, g.rank)

    try:
        t = 1
        while True:
            for n in range(t if size is not None else 2 ** t):
                if fuel.remaining == 0:
                    raise OutOfFuel
                gens = tuple(w for w in candidate(n) if w) if g.rank else ()
                budget = Fuel(min(2 ** t, fuel.remaining))
                try:
                    normality = _normality(g, gens, budget) if gens else {}
                except OutOfFuel:
                    fuel.spend(budget.spent)
                    continue
                fuel.spend(budget.spent)
                inner = Fuel(min(2 ** t, fuel.remaining))
                verdict = checker(subgroup_marking(g, gens) if gens else trivial(1), inner)
                fuel.spend(inner.spent)
                if not verdict.is_verified:
                    continue
                quotient = finite_from_recpres_semidecide(
                    quotient_recpres(g, gens), min(2 ** t, fuel.remaining))
                fuel.spend(quotient.fuel_spent)
                if quotient.is_verified:
                    return Verdict.verified(
                        {"A": [list(w) for w in gens], "normality": normality,
                         "subgroup": verdict.witness, "quotient": quotient.witness}, fuel.spent)
            t += 1
    except OutOfFuel:
        return fuel.exhausted()


def virtually_cyclic_semidecide(g: MarkedGroup, fuel) -> Verdict:
    """Single-word candidates suffice: a cyclic subgroup is generated by one element."""
    return virtually_semidecide(g, fuel, cyclic_checker, size=1)


def virtually_nilpotent_semidecide(g: MarkedGroup, fuel) -> Verdict:
    return virtually_semidecide(g, fuel, nilpotent_checker, size=None)


class _ClassSearch:
    """Cumulative conjugacy-class closure of one element."""

    def __init__(self, g: MarkedGroup, w: Word):
        self.g = g
        self.w = w
        self.members: list[Word] = [w]
        self.keys = {g.element_key(w)} if g.has_key else None
        self.frontier = [w]

    def _known(self, x: Word, fuel: Fuel) -> bool:
        if self.keys is not None:
            fuel.spend()
            return self.g.element_key(x) in self.keys
        return any(fuel.query(self.g, mul(x, inverse(m))) for m in self.members)

    def advance(self, fuel: Fuel) -> bool:
        """Conjugate one frontier element by all letters; True once the class is closed."""
        if not self.frontier:
            return True
        x = self.frontier.pop(0)
        for s in _letters(self.g):
            y = conjugate(x, (s,))
            if not self._known(y, fuel):
                self.members.append(y)
                if self.keys is not None:
                    self.keys.add(self.g.element_key(y))
                self.frontier.append(y)
        return not self.frontier


def icc_refute(g: MarkedGroup, fuel) -> Verdict:
    """Find a nontrivial element with a finite conjugacy class."""
    fuel = _fuel(fuel)
    if g.rank == 0:
        return Verdict.unknown(fuel.budget)
    searches: list[Optional[_ClassSearch]] = []
    try:
        t = 0
        while True:
            t += 1
            w = word_at(t, g.rank)
            searches.append(None if fuel.query(g, w) else _ClassSearch(g, w))
            for s in searches:
                if s is not None and s.advance(fuel):
                    return Verdict.verified({"element": list(s.w), "class": [list(m) for m in s.members]},
                                            fuel.spent)
    except OutOfFuel:
        return fuel.exhausted()


def _signed_identity(g: MarkedGroup, elems: list[Word], signs: tuple, max_len: int, fuel: Fuel) -> Optional[list]:
    signed = [e if s > 0 else inverse(e) for e, s in zip(elems, signs)]
    for length in range(1, max_len + 1):
        for seq in cartesian(range(len(signed)), repeat=length):
            if fuel.query(g, mul(*(signed[i] for i in seq))):
                return list(seq)
    return None


def orderability_refute(g: MarkedGroup, fuel) -> Verdict:
    """A finite set of nontrivial elements whose every signing has a product equal to 1.

    Stage ``t`` tries sets ``0..t`` with products of length at most ``t``.
    """
    fuel = _fuel(fuel)
    if g.rank == 0:
        return Verdict.unknown(fuel.budget)
    try:
        t = 0
        while True:
            t += 1
            for z in range(t):
                size, rest = cantor_unpair(z)
                idx = sorted(set(unpair_tuple(rest, size + 1)))
                elems = [word_at(i + 1, g.rank) for i in idx]
                if any(fuel.query(g, e) for e in elems):
                    continue
                products = {}
                for signs in cartesian((1, -1), repeat=len(elems)):
                    seq = _signed_identity(g, elems, signs, t, fuel)
                    if seq is None:
                        break
                    products[signs] = seq
                else:
                    return Verdict.verified(
                        {"elements": [list(e) for e in elems],
                         "products": [[list(s), seq] for s, seq in products.items()]}, fuel.spent)
    except OutOfFuel:
        return fuel.exhausted()


# -- hyperbolicity -------------------------------------------------------------------

def _path(pred_from: np.ndarray, src_row: int, target: int, vertices: list) -> list[int]:
    path = [target]
    while path[-1] != vertices[src_row]:
        path.append(int(pred_from[src_row, path[-1]]))
    return path[::-1]


def not_delta_hyperbolic(g: MarkedGroup, delta: int, radius: int) -> Verdict:
    """A geodesic triangle with a side point farther than ``delta`` from the other sides.

    Triangles have one vertex at the root and the others within
    ``radius // 2``; their geodesics then stay in the ball and, since
    ``radius >= 2 * delta``, ball distances up to ``delta`` from the relevant
    points are global distances.
    """
    if radius < 2 * delta:
        raise SpecError("radius must be at least 2 * delta")
    b = ball(g, radius)
    n = len(b)
    rows, cols = [], []
    for u, _, v in b.edges:
        rows += [u, v]
        cols += [v, u]
    graph = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    half = [i for i in range(n) if b.depth[i] <= radius // 2]
    dist, pred = shortest_path(graph, unweighted=True, indices=half, return_predecessors=True)
    row = {v: r for r, v in enumerate(half)}
    queries = 0
    for iy, y in enumerate(half):
        for z in half[iy + 1:]:
            if y == 0:
                continue
            # sides from the root follow normal forms, which are geodesics
            side_y = _path(pred, row[0], y, half)
            side_z = _path(pred, row[0], z, half)
            near = np.min(dist[[row[q] for q in set(side_y) | set(side_z)]], axis=0)
            dy, dz = dist[row[y]], dist[row[z]]
            on_geodesic = dy + dz == dy[z]
            far = np.nonzero(on_geodesic & (near > delta))[0]
            queries += 1
            if len(far):
                p = int(far[0])
                side_yz = _path(pred, row[y], p, half) + _path(pred, row[z], p, half)[::-1][1:]
                words = b.vertices
                witness = {
                    "x": [], "y": list(words[y]), "z": list(words[z]),
                    "xy": [list(words[v]) for v in side_y], "xz": [list(words[v]) for v in side_z],
                    "yz": [list(words[v]) for v in side_yz], "p": list(words[p]),
                    "distance": int(near[p]), "delta": delta, "radius": radius,
                }
                return Verdict.verified(witness, queries)
    return Verdict.unknown(queries)


# -- witness validation ----------------------------------------------------------------

def _adjacent(g: MarkedGroup, u, v) -> bool:
    return any(g.equal(mul(u, (x,)), v) for x in _letters(g))


def validate(name: str, g: MarkedGroup, verdict: Verdict, **params) -> bool:
    """Re-check a Verified witness using oracle queries only."""
    if not verdict.is_verified:
        return True
    w = verdict.witness
    if name == "finite":
        elems = [tuple(e) for e in w["elements"]]
        return len(elems) == w["order"] and all(
            any(g.equal(mul(e, (s,)), f) for f in elems) for e in elems for s in range(1, g.rank + 1))
    if name == "torsion":
        e = tuple(w["element"])
        return w["order"] >= 2 and not g.is_relation(e) and g.is_relation(power(e, w["order"]))
    if name == "center":
        e = tuple(w["element"])
        return not g.is_relation(e) and all(g.is_relation(commutator(e, (i,))) for i in range(1, g.rank + 1))
    if name == "perfect":
        exprs = w["expressions"]
        return set(exprs) == set(range(1, g.rank + 1)) and all(
            g.is_relation(mul(mul(*(commutator(tuple(u), tuple(v)) for u, v in pairs)), (-i,)))
            for i, pairs in exprs.items())
    if name == "rank":
        tup = [tuple(t) for t in w["tuple"]]
        return len(tup) <= params.get("j", len(tup)) and all(
            g.is_relation(mul(substitute(tuple(u), tup), (-int(i),))) for i, u in w["expressions"].items()) and \
            len(w["expressions"]) == g.rank
    if name in ("virtually_cyclic", "virtually_nilpotent"):
        gens = tuple(tuple(a) for a in w["A"])
        if name == "virtually_cyclic" and len(gens) > 1:
            return False
        for key, u in w["normality"].items():
            i, x = map(int, key.split(","))
            if not g.equal(substitute(tuple(u), gens), conjugate(gens[i - 1], (x,))):
                return False
        if len(w["normality"]) != len(gens) * 2 * g.rank:
            return False
        q = w["quotient"]
        elems = [tuple(e) for e in q["elements"]]
        if len(elems) != q["order_at_most"] or len(q["table"]) != len(elems) * g.rank:
            return False
        # with <A> normal, u = v in the quotient iff u v^-1 lies in <A>
        bound = params.get("subgroup_words", 256)
        subgroup = [substitute(word_at(n, len(gens)), gens) for n in range(bound)] if gens else [EMPTY]
        return all(any(g.is_relation(mul(elems[i], (s,), inverse(elems[j]), inverse(a))) for a in subgroup)
                   for i, s, j in q["table"])
    if name == "icc":
        members = [tuple(m) for m in w["class"]]
        return not g.is_relation(tuple(w["element"])) and all(
            any(g.equal(conjugate(m, (s,)), o) for o in members) for m in members for s in _letters(g))
    if name == "orderability":
        elems = [tuple(e) for e in w["elements"]]
        if any(g.is_relation(e) for e in elems) or len(w["products"]) != 2 ** len(elems):
            return False
        for signs, seq in w["products"]:
            signed = [e if s > 0 else inverse(e) for e, s in zip(elems, signs)]
            if not seq or not g.is_relation(mul(*(signed[i] for i in seq))):
                return False
        return True
    if name == "hyperbolic":
        for side in ("xy", "xz", "yz"):
            path = [tuple(v) for v in w[side]]
            if not all(_adjacent(g, u, v) for u, v in zip(path, path[1:])):
                return False
        ends = {"xy": ((), w["y"]), "xz": ((), w["z"]), "yz": (w["y"], w["z"])}
        for side, (a, c) in ends.items():
            path = [tuple(v) for v in w[side]]
            if not (g.equal(path[0], tuple(a)) and g.equal(path[-1], tuple(c))):
                return False
        b = ball(g, w["radius"])
        n = len(b)
        rows, cols = [], []
        for u, _, v in b.edges:
            rows += [u, v]
            cols += [v, u]
        dist = shortest_path(csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n)), unweighted=True)

        def at(word):
            return _ball_index(b, g, tuple(word))

        for side in ("xy", "xz", "yz"):
            path = w[side]
            if dist[at(path[0]), at(path[-1])] != len(path) - 1:
                return False
        p = at(w["p"])
        if not any(g.equal(tuple(w["p"]), tuple(v)) for v in w["yz"]):
            return False
        others = [at(v) for v in w["xy"] + w["xz"]]
        return min(dist[p, q] for q in others) > w["delta"]
    raise ValueError(f"no validator for {name}")


def _ball_index(b, g: MarkedGroup, word: Word) -> int:
    for i, v in enumerate(b.vertices):
        if g.equal(v, word):
            return i
    raise ValueError("vertex outside ball")


PROPERTIES = {
    "abelian": abelian_verdict,
    "finite": is_finite_semidecide,
    "torsion": torsion_semidecide,
    "center": center_nontrivial_semidecide,
    "perfect": perfect_semidecide,
    "virtually_cyclic": virtually_cyclic_semidecide,
    "virtually_nilpotent": virtually_nilpotent_semidecide,
    "icc": icc_refute,
    "orderability": orderability_refute,
}
