import itertools

import pytest

from markedgroups.clopen import (BasicClopenSet, RecPresentation, atom_decomposition, atoms,
                                 finite_from_recpres_semidecide, inclusion_semidecide,
                                 incoherent_semidecide, kuznetsov_wp, member, quotient_recpres,
                                 total_support)
from markedgroups.consequences import check_certificate, consequences
from markedgroups.oracle import SpecError, baumslag_solitar, cyclic, free, free_abelian, integers
from markedgroups.parsing import parse_word
from markedgroups.words import word_at


def w(text, rank=2):
    return parse_word(text, rank)


def omega(rels, irrels, rank=2):
    return BasicClopenSet(rank, tuple(w(x, rank) for x in rels), tuple(w(x, rank) for x in irrels))


BS5_SET = omega(["bab^-1a^-5"], ["ab^-1"])


def test_member_examples():
    assert member(cyclic(2), omega(["a^2"], ["a"], 1))
    assert not member(integers(), omega(["a^2"], ["a"], 1))
    assert member(baumslag_solitar(5), BS5_SET)
    with pytest.raises(SpecError):
        member(integers(), BS5_SET)


def test_consequence_examples():
    assert w("ba") in consequences([w("ab")], 10 ** 4)
    assert consequences([], 100, rank=2) == {()}
    assert w("a^4", 1) in consequences([w("a^2", 1)], 10 ** 3)


SOUNDNESS_CASES = [
    (["a^2"], ["S 3", "Triv 2", "direct(Z/2, Z/2)", "direct(Z/2, Z)", "free(Z/2, Z/2)"]),
    (["[a,b]"], ["Z^2", "direct(Z, Z/6)", "direct(Z/2, Z/3)", "Triv 2"]),
    (["a^3", "b^2", "(ab)^2"], ["D 3", "Triv 2"]),
    (["bab^-1a^-5"], ["BS(1,5)"]),
]


@pytest.mark.parametrize("relators, exprs", SOUNDNESS_CASES)
def test_consequences_hold_in_groups_satisfying_relators(groups, relators, exprs):
    rels = [w(r) for r in relators]
    derived = consequences(rels, 2000, rank=2)
    assert len(derived) > len(rels)
    for expr in exprs:
        g = groups(expr)
        assert all(g.is_relation(r) for r in rels)
        assert all(g.is_relation(c) for c in derived)


def test_incoherent_examples():
    v = incoherent_semidecide(omega(["ab"], ["ba"]), 10 ** 4)
    assert v.is_verified
    cert = v.witness
    assert check_certificate(cert["irrelation"], cert["certificate"], cert["relators"])
    assert incoherent_semidecide(omega(["a"], ["a"]), 10).is_verified
    assert incoherent_semidecide(BS5_SET, 2000).is_unknown


def test_incoherent_never_verifies_an_inhabited_set(groups):
    sets = [omega(["a^2"], ["a", "b"]), omega(["[a,b]"], ["a^3"]), omega(["a^3", "b^2"], ["ab"]),
            omega(["ab"], ["a"])]
    inhabitants = ["Z/2", "Z^2", "S 3", "D 3", "F 2", "Heis", "Z/6", "direct(Z/2, Z/3)"]
    for s in sets:
        if any(member(groups(e), s) for e in inhabitants if groups(e).rank == 2):
            assert not incoherent_semidecide(s, 3000).is_verified


def test_inclusion_examples():
    assert inclusion_semidecide([omega(["a"], ["b"])], [omega(["a"], [])], 100).is_verified
    v = inclusion_semidecide([omega(["ab"], [])], [omega(["ba"], [])], 10 ** 4)
    assert v.is_verified
    for cert in v.witness["atom_certificates"]:
        assert check_certificate(cert["irrelation"], cert["certificate"], cert["relators"])
    assert inclusion_semidecide([omega([], ["(ab)^2"])], [omega(["b^2"], [])], 3000).is_unknown


def test_atom_decomposition_of_the_worked_example():
    u, v = [omega([], ["(ab)^2"])], [omega(["b^2"], [])]
    d = atom_decomposition(u, v)
    assert d["support"] == (w("b^2"), w("abab"))
    assert set(d["atoms_u"]) == {omega(["b^2"], ["(ab)^2"]), omega([], ["b^2", "(ab)^2"])}
    assert d["required"] == [omega([], ["b^2", "(ab)^2"])]


PARTITION_CASES = [
    [omega(["a^2"], []), omega([], ["b"])],
    [omega(["ab"], ["a"]), omega(["[a,b]"], [])],
    [omega([], ["(ab)^2"])],
]


@pytest.mark.parametrize("sets", PARTITION_CASES)
def test_atoms_partition_the_union(groups, sets):
    support = total_support(sets)
    pieces = atoms(sets, support)
    for x, y in itertools.combinations(pieces, 2):
        assert set(x.relations) & set(y.irrelations) or set(x.irrelations) & set(y.relations)
    names = ["direct(Z/2, Z/2)", "Z^2", "S 3", "D 3", "D 4", "F 2", "Heis", "Lamp", "D 6", "BS(1,2)", "BS(1,5)",
             "A 4", "A 5", "S 4", "Triv 2", "free(Z/2, Z/2)", "direct(Z/2, Z/3)", "mark(Z; a, a^3)",
             "D 5", "limit(markseq)"]
    assert len(names) == 20
    for e in names:
        g = groups(e)
        in_union = any(member(g, s) for s in sets)
        hits = sum(member(g, p) for p in pieces)
        assert hits == int(in_union)


def recpres(rank, relators):
    return RecPresentation.finite(rank, [w(r, rank) for r in relators])


def discriminating_powers():
    n = 1
    while True:
        yield (1,) * n
        n += 1


def test_kuznetsov_examples():
    z2 = kuznetsov_wp(recpres(1, ["a^2"]), lambda: iter([(1,)]))
    assert all(z2.bit(n) == cyclic(2).bit(n) for n in range(100))
    z = kuznetsov_wp(recpres(1, []), discriminating_powers)
    assert all(z.bit(n) == integers().bit(n) for n in range(100))


def test_kuznetsov_z2():
    g = free_abelian(2)
    nontrivial = lambda: (x for x in (word_at(n, 2) for n in itertools.count(1)) if not g.is_relation(x))
    k = kuznetsov_wp(recpres(2, ["[a,b]"]), nontrivial)
    assert all(k.bit(n) == g.bit(n) for n in range(64))


def test_kuznetsov_is_order_independent():
    build = lambda: kuznetsov_wp(recpres(1, ["a^6"]), lambda: iter([(1,), (1, 1), (1, 1, 1)]))
    forward, backward = build(), build()
    order = list(range(40))
    a = [forward.bit(n) for n in order]
    b = [backward.bit(n) for n in reversed(order)][::-1]
    assert a == b == [cyclic(6).bit(n) for n in order]


def test_quotient_recpres_examples():
    z = integers()
    stream = quotient_recpres(free_abelian(2), [w("b")]).prefix(100)
    kill_b = lambda word: tuple(x for x in word if abs(x) == 1)
    assert all(z.is_relation(kill_b(r)) for r in stream)
    f = free(2)
    assert quotient_recpres(f, []).prefix(0) == []
    plain = quotient_recpres(free_abelian(2), []).prefix(30)
    assert all(free_abelian(2).is_relation(r) for r in plain)
    collapsed = finite_from_recpres_semidecide(quotient_recpres(f, [w("a"), w("b")]), 10 ** 4)
    assert collapsed.is_verified and collapsed.witness["order_at_most"] == 1


def test_finite_from_recpres_examples():
    three = finite_from_recpres_semidecide(recpres(1, ["a^3"]), 10 ** 4)
    assert three.is_verified and three.witness["order_at_most"] == 3
    one = finite_from_recpres_semidecide(recpres(1, ["a"]), 10 ** 3)
    assert one.is_verified and one.witness["order_at_most"] == 1
    assert finite_from_recpres_semidecide(recpres(1, []), 5000).is_unknown
