"""Free-group words, the shortlex bijection and the integer encodings.

A word over a rank-``k`` alphabet is a tuple of nonzero ints: ``i`` stands
for the generator ``s_i`` and ``-i`` for its inverse.  Letters are ordered
``s_1 < ... < s_k < s_1^-1 < ... < s_k^-1``; shortlex enumeration of the
reduced words under that order gives the bijection between the naturals
and the free group.
"""
from __future__ import annotations

from functools import lru_cache
from math import isqrt
from typing import Iterable, Iterator, Sequence

Word = tuple[int, ...]

EMPTY: Word = ()


class MalformedInput(ValueError):
    """Raised on words or integers outside an operation's domain."""


def check_rank(word: Iterable[int], rank: int) -> None:
    for letter in word:
        if letter == 0 or abs(letter) > rank:
            raise MalformedInput(f"letter {letter} outside rank {rank}")


def reduce(raw: Iterable[int], rank: int | None = None) -> Word:
    """Freely reduce ``raw``; with ``rank`` given, validate letters first."""
    if rank is not None:
        raw = tuple(raw)
        check_rank(raw, rank)
    out: list[int] = []
    for letter in raw:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def is_reduced(word: Sequence[int]) -> bool:
    return all(word[i] != -word[i + 1] for i in range(len(word) - 1))


def inverse(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def mul(*words: Sequence[int]) -> Word:
    out: list[int] = []
    for word in words:
        for letter in word:
            if out and out[-1] == -letter:
                out.pop()
            else:
                out.append(letter)
    return tuple(out)


def power(word: Sequence[int], n: int) -> Word:
    if n < 0:
        return power(inverse(word), -n)
    return mul(*([tuple(word)] * n)) if n else EMPTY


def conjugate(word: Sequence[int], by: Sequence[int]) -> Word:
    """``by^-1 · word · by``."""
    return mul(inverse(by), word, by)


def commutator(u: Sequence[int], v: Sequence[int]) -> Word:
    """``[u, v] = u^-1 v^-1 u v``."""
    return mul(inverse(u), inverse(v), u, v)


def left_normed(words: Sequence[Sequence[int]]) -> Word:
    """``[[...[w1, w2], w3], ..., wn]``."""
    acc = tuple(words[0])
    for w in words[1:]:
        acc = commutator(acc, w)
    return acc


def cyclic_reduce(word: Sequence[int]) -> tuple[Word, Word]:
    """Return ``(core, h)`` with ``word = h · core · h^-1`` and ``core`` cyclically reduced."""
    w = reduce(word)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j], w[:i]


def substitute(word: Sequence[int], images: Sequence[Sequence[int]]) -> Word:
    """Replace ``s_i`` by ``images[i-1]`` and freely reduce."""
    parts = []
    for letter in word:
        img = images[abs(letter) - 1]
        parts.append(tuple(img) if letter > 0 else inverse(img))
    return mul(*parts)


def exponent_sums(word: Sequence[int], rank: int) -> tuple[int, ...]:
    if not isinstance(word, (tuple, list)):
        word = tuple(word)
    return tuple(word.count(i) - word.count(-i) for i in range(1, rank + 1))


# -- shortlex -----------------------------------------------------------------

def letter_position(letter: int, rank: int) -> int:
    """Position of ``letter`` in the fixed order of the ``2k`` letters."""
    return letter - 1 if letter > 0 else rank - letter - 1


def letter_at(position: int, rank: int) -> int:
    return position + 1 if position < rank else -(position - rank + 1)


def shortlex_key(word: Sequence[int], rank: int) -> tuple[int, bytes]:
    """Sort key realising shortlex order (valid for ``rank <= 127``)."""
    return len(word), bytes(letter_position(x, rank) for x in word)


def count_of_length(length: int, rank: int) -> int:
    """Number of reduced words of the given length."""
    if length == 0:
        return 1
    if rank == 0:
        return 0
    return 2 * rank * (2 * rank - 1) ** (length - 1)


def count_up_to(length: int, rank: int) -> int:
    """Number of reduced words of length at most ``length``."""
    if length < 0:
        return 0
    if rank == 0:
        return 1
    if rank == 1:
        return 2 * length + 1
    b = 2 * rank - 1
    return 1 + rank * (b ** length - 1) // (rank - 1)


def shortlex_index(word: Sequence[int], rank: int) -> int:
    """Index of a reduced word in the shortlex enumeration."""
    w = tuple(word)
    if not is_reduced(w):
        raise MalformedInput(f"word {w} is not reduced")
    check_rank(w, rank)
    n = len(w)
    if rank == 1:
        return 2 * n - (w[0] > 0) if n else 0
    offset = count_up_to(n - 1, rank) if n else 0
    branch = 2 * rank - 1
    rank_in_length = 0
    prev = None
    for j, letter in enumerate(w):
        pos = letter_position(letter, rank)
        if j == 0:
            digit = pos
        else:
            forbidden = letter_position(-prev, rank)
            digit = pos - 1 if pos > forbidden else pos
        rank_in_length = rank_in_length * branch + digit
        prev = letter
    return offset + rank_in_length


@lru_cache(maxsize=65536)
def word_at(index: int, rank: int) -> Word:
    """The ``index``-th reduced word in shortlex order."""
    if index < 0:
        raise MalformedInput("shortlex index must be nonnegative")
    if index == 0:
        return EMPTY
    if rank == 0:
        raise MalformedInput("the rank-0 free group has a single element")
    if rank == 1:
        length = (index + 1) // 2
        return (1,) * length if index % 2 else (-1,) * length
    length = 0
    remaining = index
    while remaining >= count_of_length(length, rank):
        remaining -= count_of_length(length, rank)
        length += 1
    branch = 2 * rank - 1
    digits = []
    for _ in range(length - 1):
        digits.append(remaining % branch)
        remaining //= branch
    first = remaining
    digits.reverse()
    letters = [letter_at(first, rank)]
    for digit in digits:
        forbidden = letter_position(-letters[-1], rank)
        pos = digit + 1 if digit >= forbidden else digit
        letters.append(letter_at(pos, rank))
    return tuple(letters)


def shortlex_words(rank: int, start: int = 0) -> Iterator[Word]:
    """All reduced words in shortlex order, generated length by length."""
    index = 0
    length = 0
    layer: list[Word] = [EMPTY]
    while True:
        for w in layer:
            if index >= start:
                yield w
            index += 1
        length += 1
        nxt = []
        for w in layer:
            for pos in range(2 * rank):
                letter = letter_at(pos, rank)
                if w and w[-1] == -letter:
                    continue
                nxt.append(w + (letter,))
        if not nxt:
            return
        layer = nxt


# -- pairing and prime decoding ------------------------------------------------

def cantor_pair(n: int, m: int) -> int:
    return (n + m) * (n + m + 1) // 2 + m


def cantor_unpair(z: int) -> tuple[int, int]:
    if z < 0:
        raise MalformedInput("cannot unpair a negative integer")
    s = (isqrt(8 * z + 1) - 1) // 2
    m = z - s * (s + 1) // 2
    return s - m, m


def unpair_tuple(z: int, size: int) -> tuple[int, ...]:
    """Decode ``z`` as a ``size``-tuple by iterated pairing (bijective)."""
    out = []
    for _ in range(size - 1):
        head, z = cantor_unpair(z)
        out.append(head)
    out.append(z)
    return tuple(out)


def pair_tuple(values: Sequence[int]) -> int:
    if len(values) == 1:
        return values[0]
    return cantor_pair(values[0], pair_tuple(values[1:]))


def _factor_exponents(n: int) -> list[int]:
    """Exponents of ``n`` on the primes 2, 3, 5, ... up to its largest prime factor."""
    exps = []
    p = 2
    while n > 1:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        exps.append(e)
        p += 1
        while any(p % q == 0 for q in range(2, isqrt(p) + 1)):
            p += 1
    return exps


def prime_decode(n: int, rank: int) -> Word:
    """Element numbering by prime exponents.

    ``n = p_0^e_0 ... p_m^e_m``; each ``e_i`` with ``i >= 1`` is taken mod
    ``2k`` and residue ``j`` names ``s_{j+1}`` (``j < k``) or
    ``s_{j-k+1}^-1``.  The exponent of ``p_0 = 2`` is unused.
    """
    if n < 1:
        raise MalformedInput("prime_decode needs n >= 1")
    if rank < 1:
        return EMPTY
    exps = _factor_exponents(n)
    letters = []
    for e in exps[1:]:
        j = e % (2 * rank)
        letters.append(j + 1 if j < rank else -(j - rank + 1))
    return reduce(letters)
