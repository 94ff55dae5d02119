"""Groups as multiplication tables on the naturals, and back."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional

from ..words import Word, inverse, mul
from .group import MarkedGroup, NormalFormTable


class ModelError(ValueError):
    """A multiplication model failing the group axioms on sampled elements."""


@dataclass
class MrModel:
    """Elements are naturals, 0 is the identity.

    ``card`` is None for an infinite (or not yet closed) domain.
    """

    mult: Callable[[int, int], int]
    inv: Callable[[int], int]
    generator_images: tuple[int, ...]
    card: Optional[int] = None
    name: str = "model"

    @property
    def rank(self) -> int:
        return len(self.generator_images)

    def in_domain(self, x: int) -> bool:
        return x >= 0 and (self.card is None or x < self.card)

    def evaluate(self, word) -> int:
        acc = 0
        for letter in word:
            g = self.generator_images[abs(letter) - 1]
            acc = self.mult(acc, g if letter > 0 else self.inv(g))
        return acc

    def table(self) -> list[list[int]]:
        if self.card is None:
            raise ModelError("infinite model has no finite table")
        return [[self.mult(i, j) for j in range(self.card)] for i in range(self.card)]


def to_model(g: MarkedGroup, max_elements: int = 5000) -> MrModel:
    """Number the shortlex normal forms of ``g``: 0 is ε, then sphere by sphere.

    If the group closes within ``max_elements`` elements the domain is
    ``{0..card-1}``; otherwise the table is extended lazily.
    """
    nf = NormalFormTable(g)
    nf.grow_until(max_elements)
    card = len(nf) if nf.closed else None

    def element(i: int) -> Word:
        while i >= len(nf) and not nf.closed:
            nf.grow()
        if i >= len(nf):
            raise ModelError(f"{i} is outside the domain of size {len(nf)}")
        return nf.words[i]

    def mult(i: int, j: int) -> int:
        return nf.index_of(mul(element(i), element(j)))

    def inv(i: int) -> int:
        return nf.index_of(inverse(element(i)))

    images = tuple(nf.index_of((i,)) for i in range(1, g.rank + 1))
    return MrModel(mult, inv, images, card, name=f"MR({g.name})")


def check_model(model: MrModel, samples: int = 200, seed: int = 0, spread: int = 40) -> list[str]:
    """Sample identity, inverse and associativity laws."""
    rng = random.Random(seed)
    top = model.card if model.card is not None else spread
    problems = []
    if model.inv(0) != 0:
        problems.append("inv(0) != 0")
    for g in model.generator_images:
        if not model.in_domain(g):
            problems.append(f"generator image {g} outside domain")
    if problems:
        return problems
    for _ in range(samples):
        x, y, z = (rng.randrange(top) for _ in range(3))
        if model.mult(0, x) != x or model.mult(x, 0) != x:
            problems.append(f"0 is not an identity at {x}")
        if model.mult(x, model.inv(x)) != 0:
            problems.append(f"inv fails at {x}")
        if model.mult(model.mult(x, y), z) != model.mult(x, model.mult(y, z)):
            problems.append(f"associativity fails at {(x, y, z)}")
        if len(problems) > 5:
            break
    return problems


def from_model(model: MrModel, check: bool = True) -> MarkedGroup:
    if check:
        problems = check_model(model)
        if problems:
            raise ModelError("; ".join(problems))
    return MarkedGroup(model.rank, lambda w: model.evaluate(w) == 0, f"from {model.name}")


def mr_model(obj, direction: str, **kwargs):
    """``mr_model(G, "to")`` gives a model; ``mr_model(M, "from")`` a marked group."""
    if direction == "to":
        return to_model(obj, **kwargs)
    if direction == "from":
        return from_model(obj, **kwargs)
    raise ValueError(f"direction must be 'to' or 'from', not {direction!r}")
