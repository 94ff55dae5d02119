"""Text syntax for words, group expressions, clopen sets and presentations.

Words: lowercase letters are generators, uppercase their inverses, ``1`` is
the empty word, ``u^n`` a power, ``[u,v]`` the commutator ``u^-1 v^-1 u v``
and ``u^v`` the conjugate ``v^-1 u v``.  Spaces and ``*`` are ignored.

Groups: ``Z``, ``Z^k``, ``Z/n``, ``F k``, ``BS(1,m)``, ``D n``, ``S n``,
``A n``, ``Heis``, ``Lamp``, ``Triv k``, ``mark(G; w1, ..., wj)``,
``direct(G,H)``, ``free(G,H)``, ``limit(cyclicseq)``, ``limit(markseq)``.
"""
from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Sequence

from .words import EMPTY, MalformedInput, Word, commutator, conjugate, inverse, mul, power

DEFAULT_ALPHABET = string.ascii_lowercase


class ParseError(MalformedInput):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text[:pos]}>>{text[pos:]}")
        self.pos = pos


def format_word(word: Sequence[int], alphabet: Sequence[str] = DEFAULT_ALPHABET) -> str:
    """Inverse of :func:`parse_word`; runs of a letter become powers."""
    if not word:
        return "1"
    parts = []
    i = 0
    multi = any(len(name) > 1 for name in alphabet[: max(abs(x) for x in word)])
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        x = word[i]
        if abs(x) > len(alphabet):
            raise MalformedInput(f"no letter name for generator {abs(x)}")
        name = alphabet[abs(x) - 1]
        if multi:
            exp = (j - i) * (1 if x > 0 else -1)
            parts.append(name if exp == 1 else f"{name}^{exp}")
        else:
            name = name if x > 0 else name.upper()
            parts.append(name if j - i == 1 else f"{name}^{j - i}")
        i = j
    return (" " if multi else "").join(parts)


class _Cursor:
    def __init__(self, text: str, alphabet: Sequence[str] = DEFAULT_ALPHABET, rank: int | None = None):
        self.text = text
        self.pos = 0
        self.alphabet = list(alphabet)
        self.rank = rank

    def error(self, message: str):
        raise ParseError(message, self.text, self.pos)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t\n*":
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, token: str) -> None:
        self.skip()
        if not self.text.startswith(token, self.pos):
            self.error(f"expected {token!r}")
        self.pos += len(token)

    def at_end(self) -> bool:
        return self.peek() == ""

    def integer(self) -> int:
        self.skip()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        digits = self.text[start:self.pos]
        if digits in ("", "+", "-"):
            self.pos = start
            self.error("expected an integer")
        return int(digits)

    def ident(self) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        if start == self.pos:
            self.error("expected a name")
        return self.text[start:self.pos]

    # -- words --

    def word(self) -> Word:
        parts = []
        while self.peek() and self.peek() not in ",)];|}>":
            parts.append(self.factor())
        return mul(*parts)

    def factor(self) -> Word:
        base = self.atom()
        while self.peek() == "^":
            self.pos += 1
            nxt = self.peek()
            if nxt.isdigit() or nxt in "+-":
                base = power(base, self.integer())
            else:
                base = conjugate(base, self.atom())
        return base

    def _letter(self) -> Word | None:
        for i, name in enumerate(self.alphabet):
            if len(name) > 1 and self.text.startswith(name, self.pos):
                return self._use(i + 1, len(name))
        ch = self.text[self.pos]
        if ch in self.alphabet and len(self.alphabet) and all(len(n) == 1 for n in self.alphabet):
            return self._use(self.alphabet.index(ch) + 1, 1)
        if ch.lower() in self.alphabet and ch.isupper() and all(len(n) == 1 for n in self.alphabet):
            return self._use(-(self.alphabet.index(ch.lower()) + 1), 1)
        return None

    def _use(self, letter: int, width: int) -> Word:
        if self.rank is not None and abs(letter) > self.rank:
            self.error(f"letter outside rank {self.rank}")
        self.pos += width
        return (letter,)

    def atom(self) -> Word:
        ch = self.peek()
        if ch == "1":
            self.pos += 1
            return EMPTY
        if ch == "(":
            self.pos += 1
            w = self.word()
            self.expect(")")
            return w
        if ch == "[":
            self.pos += 1
            u = self.word()
            self.expect(",")
            v = self.word()
            self.expect("]")
            return commutator(u, v)
        if ch:
            got = self._letter()
            if got is not None:
                return got
        self.error("expected a letter, '1', '(' or '['")

    def word_list(self, closers: str) -> list[Word]:
        out = []
        if self.peek() in closers:
            return out
        while True:
            out.append(self.word())
            if self.peek() != ",":
                return out
            self.pos += 1


def parse_word(text: str, rank: int | None = None, alphabet: Sequence[str] = DEFAULT_ALPHABET) -> Word:
    cur = _Cursor(text, alphabet, rank)
    w = cur.word()
    if not cur.at_end():
        cur.error("unexpected trailing input")
    return w


def parse_words(text: str, rank: int | None = None, alphabet: Sequence[str] = DEFAULT_ALPHABET) -> list[Word]:
    """Comma-separated words."""
    cur = _Cursor(text, alphabet, rank)
    out = cur.word_list("")
    if not cur.at_end():
        cur.error("unexpected trailing input")
    return out


# -- clopen sets and presentations ----------------------------------------------

def parse_clopen(text: str, rank: int | None = None) -> tuple[list[Word], list[Word]]:
    """``{R: ab, b^2 | S: ba}`` to ``(relations, irrelations)``; either part may be omitted."""
    cur = _Cursor(text, DEFAULT_ALPHABET, rank)
    cur.expect("{")
    rels: list[Word] = []
    irrels: list[Word] = []
    seen = set()
    while cur.peek() != "}":
        tag = cur.ident()
        if tag not in ("R", "S") or tag in seen:
            cur.error("expected a fresh 'R:' or 'S:' section")
        seen.add(tag)
        cur.expect(":")
        (rels if tag == "R" else irrels).extend(cur.word_list("|}"))
        if cur.peek() == "|":
            cur.pos += 1
    cur.expect("}")
    if not cur.at_end():
        cur.error("unexpected trailing input")
    return rels, irrels


def format_clopen(relations: Sequence[Word], irrelations: Sequence[Word]) -> str:
    parts = []
    if relations:
        parts.append("R: " + ", ".join(format_word(w) for w in relations))
    if irrelations:
        parts.append("S: " + ", ".join(format_word(w) for w in irrelations))
    return "{" + " | ".join(parts) + "}"


def parse_presentation(text: str) -> tuple[int, list[Word]]:
    """``<a,b | a^2, [a,b]>`` to ``(rank, relators)``; generator names are single letters."""
    names, relators = parse_named_presentation(text)
    return len(names), relators


def parse_named_presentation(text: str) -> tuple[list[str], list[Word]]:
    cur = _Cursor(text)
    cur.expect("<")
    names = []
    while cur.peek() not in ("|", ">"):
        name = cur.ident()
        if len(name) != 1 or not name.islower() or name in names:
            cur.error("generators must be distinct lowercase letters")
        names.append(name)
        if cur.peek() == ",":
            cur.pos += 1
    relators: list[Word] = []
    cur.alphabet = names
    if cur.peek() == "|":
        cur.pos += 1
        relators = cur.word_list(">")
    cur.expect(">")
    if not cur.at_end():
        cur.error("unexpected trailing input")
    return names, relators


# -- group expressions ------------------------------------------------------------

_SEQUENCES = ("cyclicseq", "markseq")


@dataclass(frozen=True)
class GroupExpr:
    kind: str
    params: tuple = ()
    children: tuple = ()
    words: tuple = ()

    def __str__(self) -> str:
        k, p = self.kind, self.params
        if k == "Z":
            return "Z" if p[0] == 1 else f"Z^{p[0]}"
        if k == "Z/":
            return f"Z/{p[0]}"
        if k == "BS":
            return f"BS(1,{p[0]})"
        if k in ("F", "D", "S", "A", "Triv"):
            return f"{k} {p[0]}"
        if k in ("Heis", "Lamp"):
            return k
        if k == "mark":
            return f"mark({self.children[0]}; {', '.join(format_word(w) for w in self.words)})"
        if k in ("direct", "free"):
            return f"{k}({self.children[0]}, {self.children[1]})"
        if k == "limit":
            return f"limit({p[0]})"
        raise ValueError(k)

    def rank(self) -> int:
        k, p = self.kind, self.params
        if k in ("Z", "F", "Triv"):
            return p[0]
        if k in ("Z/",):
            return 1
        if k == "mark":
            return len(self.words)
        if k in ("direct", "free"):
            return self.children[0].rank() + self.children[1].rank()
        if k == "limit":
            return 1 if p[0] == "cyclicseq" else 2
        return 2 if k in ("BS", "D", "S", "A", "Heis", "Lamp") else 0


def _group(cur: _Cursor) -> GroupExpr:
    start = cur.pos
    name = cur.ident()
    if name == "Z":
        if cur.peek() == "^":
            cur.pos += 1
            return GroupExpr("Z", (_positive(cur),))
        if cur.peek() == "/":
            cur.pos += 1
            return GroupExpr("Z/", (_positive(cur),))
        return GroupExpr("Z", (1,))
    if name in ("F", "D", "S", "A", "Triv"):
        n = cur.integer()
        minimum = {"F": 0, "D": 3, "S": 2, "A": 3, "Triv": 0}[name]
        if n < minimum:
            cur.error(f"{name} needs a parameter >= {minimum}")
        return GroupExpr(name, (n,))
    if name == "BS":
        cur.expect("(")
        if cur.integer() != 1:
            cur.error("only BS(1,m) is supported")
        cur.expect(",")
        m = cur.integer()
        if m == 0:
            cur.error("BS(1,m) needs m != 0")
        cur.expect(")")
        return GroupExpr("BS", (m,))
    if name in ("Heis", "Lamp"):
        return GroupExpr(name)
    if name == "mark":
        cur.expect("(")
        inner = _group(cur)
        cur.expect(";")
        saved = cur.rank
        cur.rank = inner.rank()
        words = tuple(cur.word_list(")"))
        cur.rank = saved
        cur.expect(")")
        return GroupExpr("mark", children=(inner,), words=words)
    if name in ("direct", "free"):
        cur.expect("(")
        g = _group(cur)
        cur.expect(",")
        h = _group(cur)
        cur.expect(")")
        return GroupExpr(name, children=(g, h))
    if name == "limit":
        cur.expect("(")
        seq = cur.ident()
        if seq not in _SEQUENCES:
            cur.error(f"known sequences are {', '.join(_SEQUENCES)}")
        cur.expect(")")
        return GroupExpr("limit", (seq,))
    cur.pos = start
    cur.error(f"unknown group {name!r}")


def _positive(cur: _Cursor) -> int:
    n = cur.integer()
    if n < 1:
        cur.error("expected a positive integer")
    return n


def parse_group_expr(text: str) -> GroupExpr:
    cur = _Cursor(text)
    expr = _group(cur)
    if not cur.at_end():
        cur.error("unexpected trailing input")
    return expr


def elaborate(expr: GroupExpr):
    """Build the marked group an expression denotes."""
    from . import oracle as o

    k, p = expr.kind, expr.params
    if k == "Z":
        g = o.free_abelian(p[0])
    elif k == "Z/":
        g = o.cyclic(p[0])
    elif k == "F":
        g = o.free(p[0])
    elif k == "Triv":
        g = o.trivial(p[0])
    elif k == "BS":
        g = o.baumslag_solitar(p[0])
    elif k == "D":
        g = o.dihedral(p[0])
    elif k == "S":
        g = o.symmetric(p[0])
    elif k == "A":
        g = o.alternating(p[0])
    elif k == "Heis":
        g = o.heisenberg()
    elif k == "Lamp":
        g = o.lamplighter()
    elif k == "mark":
        g = o.subgroup_marking(elaborate(expr.children[0]), expr.words)
    elif k in ("direct", "free"):
        g = o.combine(elaborate(expr.children[0]), elaborate(expr.children[1]), k)
    elif k == "limit":
        seq = o.cyclic_sequence() if p[0] == "cyclicseq" else o.markings_sequence()
        g = o.limit(seq)
    else:
        raise ValueError(k)
    g.name = str(expr)
    return g


def parse_group(text: str):
    return elaborate(parse_group_expr(text))
