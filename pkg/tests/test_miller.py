import random

import pytest

from markedgroups.clopen import member
from markedgroups.machines import Enumeration, halt_at, pq_halting_family
from markedgroups.miller import (FreeProductAmbient, GadgetDegenerateError, Presentation, l3_wp,
                                 nielsen_membership, step1_relations, step3_presentation, trivializes)
from markedgroups.oracle import check_lawful, cyclic, free, free_abelian, heisenberg, integers
from markedgroups.oracle.group import random_word
from markedgroups.parsing import parse_word
from markedgroups.verdict import Status
from markedgroups.words import commutator, conjugate, inverse, mul, word_at

Z_INSTANCE = step3_presentation(Presentation(1, names=("x",)), (1,))
X, A, B, C = 1, 2, 3, 4


def enumeration(values):
    return Enumeration(lambda: iter(values))


def test_step1_examples():
    evens, odds = enumeration(range(0, 20, 2)), enumeration(range(1, 20, 2))
    first = step1_relations(evens, odds).prefix(4)
    assert first[:2] == [(1, -3), (2, -4)]
    assert step1_relations(enumeration([0]), enumeration([1])).prefix(10) == []


def test_step1_emits_at_most_one_relator_per_item():
    p, q = enumeration(range(0, 40, 3)), enumeration(range(1, 40, 3))
    items = list(step1_relations(p, q).stream())
    # 14 items of P and 13 of Q, alternating
    assert len(items) == 27
    assert sum(x is not None for x in items) <= len(items)


def test_step1_freezes_under_a_halting_gate():
    p, q = enumeration(range(0, 10 ** 6, 2)), enumeration(range(1, 10 ** 6, 2))
    p_l, q_l = pq_halting_family(halt_at(6), (p, q))
    items = list(step1_relations(p_l, q_l).stream())
    assert len(items) == 10


def test_z_instance_relators_match_the_templates():
    l3 = Z_INSTANCE.l3
    assert len(l3.relators) == 4 and l3.rank == 4
    # each relation "left = right" becomes the relator left right^-1
    templates = [
        ("a^-1 b a", "c^-1 b^-1 c b c"),
        ("a^-2 b^-1 a b a^2", "c^-2 b^-1 c b c^2"),
        ("a^-3 x^-1 b^-1 x b a^3", "c^-3 b c^3"),
        ("a^-4 x b a^4", "c^-4 b c^4"),
    ]
    for relator, (left, right) in zip(l3.relators, templates):
        lhs, rhs = (parse_word(t, 4, alphabet=l3.names) for t in (left, right))
        assert relator == mul(lhs, inverse(rhs))
    assert str(l3) == "<x,a,b,c | AbaCBCbc, A^2Baba^2C^2BCbc^2, A^3XBxba^3C^3Bc^3, A^4xba^4C^4Bc^4>"
    assert Z_INSTANCE.pi.irrelations == ((X,),)


def test_relator_count_is_t_plus_three_plus_k():
    base = Presentation(2, ((1, 1), (1, 2, -1, -2)))
    assert len(step3_presentation(base, (1,)).l3.relators) == 7


def test_nielsen_examples():
    family = [(B,), (-C, -B, C, B, C)]
    assert nielsen_membership((-C, -B, C, B, C), family).is_verified
    refuted = nielsen_membership((C,), family)
    assert refuted.status is Status.REFUTED
    two = nielsen_membership((B, -C, -B, C, B, C), family)
    assert two.is_verified and len(two.witness["factors"]) == 2


def test_nielsen_factor_count_is_bounded_by_length():
    family = [(B,), (-C, -B, C, B, C)]
    rng = random.Random(4)
    for _ in range(50):
        picks = [rng.choice([(B,), (-B,), family[1], tuple(-x for x in reversed(family[1]))])
                 for _ in range(rng.randint(1, 4))]
        u = mul(*picks)
        v = nielsen_membership(u, family)
        assert v.is_verified and len(v.witness["factors"]) <= max(1, len(u))


def test_nielsen_over_a_free_product_with_a_base_factor():
    ambient = FreeProductAmbient(cyclic(3))
    family = [(B,), ((1,), B)]
    assert nielsen_membership(((1, 1, 1, 1), B), family, ambient).is_verified
    assert nielsen_membership(((1, 1), B), family, ambient).status is Status.REFUTED


def test_l3_examples():
    l3 = l3_wp(integers(), (X,))
    assert not l3.is_relation((X,))
    assert not l3.is_relation((B,))
    assert all(l3.is_relation(r) for r in Z_INSTANCE.l3.relators)
    assert member(l3, Z_INSTANCE.pi)
    with pytest.raises(GadgetDegenerateError):
        l3_wp(cyclic(1), (1,))


BASES = [
    ("Z", integers(), (1,), 1),
    ("Z/3", cyclic(3), (1,), 1),
    ("F2", free(2), (1, 2), 2),
    ("Z2", free_abelian(2), (1,), 2),
    ("Heis", heisenberg(), commutator((1,), (2,)), 2),
]


@pytest.mark.parametrize("label, base, w, k", BASES, ids=[b[0] for b in BASES])
def test_l3_embeds_the_base(label, base, w, k):
    l3 = l3_wp(base, w)
    rng = random.Random(label)
    words = [random_word(rng, k, 12) for _ in range(70)]
    # conjugates of base relations, so trivial words are well represented
    relations = [word_at(n, k) for n in range(400) if base.is_relation(word_at(n, k))][1:31]
    words += [conjugate(r, random_word(rng, k, 4)) for r in relations]
    words += [random_word(rng, k, 12) for _ in range(100 - len(words))]
    assert len(words) == 100
    assert all(l3.is_relation(u) == base.is_relation(u) for u in words)


@pytest.mark.parametrize("label, base, w, k", BASES, ids=[b[0] for b in BASES])
def test_l3_is_lawful(label, base, w, k):
    assert check_lawful(l3_wp(base, w), pairs=200, conjugators=10) == []


def test_trivializes_the_z_instance():
    v = trivializes(Z_INSTANCE, (X,), 10 ** 6)
    assert v.is_verified
    assert set(v.witness["certificates"]) == {"x", "a", "b", "c"}
    assert trivializes(Z_INSTANCE, (), 10 ** 4).is_unknown


def test_trivializes_a_generic_base():
    out = step3_presentation(Presentation(1, ((1, 1, 1),), names=("x",)), (1,))
    assert trivializes(out, (1,), 10 ** 6).is_verified
