"""Effective limits of regulated sequences of marked groups."""
from __future__ import annotations

from ..words import shortlex_index, word_at
from .catalog import cyclic, free_abelian, integers
from .combinators import subgroup_marking
from .group import GroupSequence, MarkedGroup


def limit(seq: GroupSequence, name: str | None = None) -> MarkedGroup:
    """The limit oracle: bit ``n`` is read from member ``regulator(n + 1)``.

    A dishonest regulator still gives a total oracle, just not the metric
    limit.
    """
    k = seq.rank

    def decide(w):
        n = shortlex_index(w, k)
        return seq.at(seq.regulator(n + 1)).is_relation(w)

    return MarkedGroup(k, decide, name or f"lim {seq.name}")


def constant_sequence(g: MarkedGroup) -> GroupSequence:
    return GroupSequence(g.rank, lambda n: g, lambda m: 0, f"const {g.name}", declared_limit=g)


def cyclic_sequence() -> GroupSequence:
    """``Z/n`` for ``n >= 1``, converging to ``Z``.

    Bit ``n`` concerns a word of length at most ``n``; it agrees with ``Z``
    in ``Z/N`` once ``N > n``.
    """
    return GroupSequence(1, lambda n: cyclic(max(n, 1)), lambda m: m + 1, "Z/n", declared_limit=integers())


def markings_sequence() -> GroupSequence:
    """Markings ``(a, a^(n+1))`` of ``Z``, converging to ``Z^2``.

    A relation of the ``n``-th member that is not a relation of ``Z^2`` has
    length at least ``n + 2``, so the first ``m`` bits agree as soon as
    ``n`` reaches the length of word ``m``.
    """
    z = integers()
    return GroupSequence(
        2,
        lambda n: subgroup_marking(z, [(1,), (1,) * (n + 1)], name=f"(1,{n + 1}) in Z"),
        lambda m: len(word_at(m, 2)),
        "(1,k) in Z",
        declared_limit=free_abelian(2),
    )
