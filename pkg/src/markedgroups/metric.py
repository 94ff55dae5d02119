"""Distances between marked groups and labelled Cayley balls."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .oracle.group import MarkedGroup, NormalFormTable
from .parsing import format_word
from .words import Word


@dataclass(frozen=True)
class Dyadic:
    """``zero``, ``two``, ``exact`` (value ``2^-n``) or ``at_most`` (interval ``[0, 2^-n]``)."""

    kind: str
    n: int = 0

    @classmethod
    def zero(cls) -> "Dyadic":
        return cls("zero")

    @classmethod
    def two(cls) -> "Dyadic":
        return cls("two")

    @classmethod
    def power(cls, n: int) -> "Dyadic":
        return cls("exact", n)

    @classmethod
    def at_most(cls, n: int) -> "Dyadic":
        return cls("at_most", n)

    @property
    def exact(self) -> bool:
        return self.kind != "at_most"

    @property
    def value(self) -> Fraction:
        """The exact value, or the upper end of the interval."""
        if self.kind == "zero":
            return Fraction(0)
        if self.kind == "two":
            return Fraction(2)
        return Fraction(1, 2 ** self.n) if self.n >= 0 else Fraction(2 ** -self.n)

    def __str__(self) -> str:
        if self.kind == "zero":
            return "0"
        if self.kind == "two":
            return "2"
        text = f"2^-{self.n}" if self.n else "2^0"
        return text if self.exact else "<=" + text

    def to_dict(self) -> dict:
        return {"distance": str(self), "exact": self.exact}


def distance(g: MarkedGroup, h: MarkedGroup, precision: int) -> Dyadic:
    """Bit-comparison distance, reading bits ``0..precision``."""
    if precision < 0:
        raise ValueError("precision must be nonnegative")
    if g.rank != h.rank:
        return Dyadic.two()
    for n in range(precision + 1):
        if g.bit(n) != h.bit(n):
            return Dyadic.power(n)
    return Dyadic.at_most(precision + 1)


@dataclass
class CayleyBall:
    rank: int
    radius: int
    vertices: list[Word]
    edges: list[tuple[int, int, int]]
    closed: bool
    depth: list[int] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.vertices)

    def signature(self) -> tuple:
        """Labels-free form: equal iff the labelled balls are isomorphic as rooted graphs."""
        return len(self.vertices), tuple(sorted(self.edges))

    def to_dict(self) -> dict:
        return {
            "rank": self.rank, "radius": self.radius, "closed": self.closed,
            "vertices": [format_word(w) for w in self.vertices],
            "edges": [[u, f"s_{s}", v] for u, s, v in self.edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_dot(self, name: str = "ball") -> str:
        lines = [f'digraph "{name}" {{']
        for i, w in enumerate(self.vertices):
            lines.append(f'  v{i} [label="{format_word(w)}"];')
        for u, s, v in self.edges:
            lines.append(f'  v{u} -> v{v} [label="s_{s}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def ball_from_table(table: NormalFormTable, radius: int) -> CayleyBall:
    table.grow_to(radius)
    last = min(radius, table.radius)
    count = sum(len(table.spheres[r]) for r in range(last + 1))
    edges = []
    for r in range(last):
        for u in table.spheres[r]:
            for s in range(1, table.rank + 1):
                v = table.edges[(u, s)]
                if table.depth[v] <= radius:
                    edges.append((u, s, v))
    boundary, closed = table.boundary_edges(last)
    for (u, s), v in boundary.items():
        if s > 0 and v is not None:
            edges.append((u, s, v))
    return CayleyBall(table.rank, radius, table.words[:count], edges, closed, table.depth[:count])


def ball(g: MarkedGroup, radius: int, table: Optional[NormalFormTable] = None) -> CayleyBall:
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    return ball_from_table(table or NormalFormTable(g), radius)


def cayley_distance(g: MarkedGroup, h: MarkedGroup, max_r: int) -> Dyadic:
    """Ball-comparison distance; radius-``r`` balls agree, radius ``r+1`` differ gives ``2^-r``."""
    if g.rank != h.rank:
        return Dyadic.two()
    tg, th = NormalFormTable(g), NormalFormTable(h)
    for r in range(max_r + 1):
        if ball_from_table(tg, r).signature() != ball_from_table(th, r).signature():
            return Dyadic.power(r - 1)
    return Dyadic.at_most(max_r)
