import pytest
from hypothesis import given, settings, strategies as st

from markedgroups.oracle import SpecError, free, integers
from markedgroups.properties import (PROPERTIES, card_at_most, is_abelian, nilpotent_class_at_most,
                                     nilpotent_verdict, not_delta_hyperbolic, rank_at_most_semidecide,
                                     validate, virtually_nilpotent_semidecide)
from markedgroups.verdict import Status

from conftest import CATALOG_TRUTH

POSITIVE_FUEL = 10 ** 6
NEGATIVE_FUEL = 10 ** 5

POSITIVES = [
    ("torsion", "Lamp"), ("torsion", "Z/2"),
    ("center", "Heis"), ("center", "Z"),
    ("perfect", "A 5"), ("perfect", "Triv 1"),
    ("virtually_cyclic", "free(Z/2, Z/2)"), ("virtually_cyclic", "Z/6"),
    ("icc", "Z"), ("icc", "Heis"),
    ("orderability", "Z/2"), ("orderability", "S 3"),
    ("finite", "Z/6"), ("finite", "Triv 1"),
]

NEGATIVES = [
    ("torsion", "F 2"), ("center", "F 2"), ("perfect", "Z"), ("virtually_cyclic", "F 2"),
    ("icc", "F 2"), ("orderability", "Z"), ("finite", "Z"),
]


@pytest.mark.parametrize("expr, order, nil_class", CATALOG_TRUTH)
def test_decidable_trio_matches_ground_truth(groups, expr, order, nil_class):
    g = groups(expr)
    assert is_abelian(g) == (nil_class is not None and nil_class <= 1)
    for c in (1, 2, 3):
        assert nilpotent_class_at_most(g, c) == (nil_class is not None and nil_class <= c)
    if order is None:
        assert not card_at_most(g, 60)
    else:
        assert card_at_most(g, order)
        assert order == 1 or not card_at_most(g, order - 1)


def test_decidable_examples(groups):
    f = free(2)
    refuted = nilpotent_verdict(f, 2)
    assert refuted.status is Status.REFUTED and not f.is_relation(tuple(refuted.witness))
    assert card_at_most(groups("Z/5"), 5) and not card_at_most(groups("Z/5"), 4)
    assert not card_at_most(integers(), 10 ** 6)
    with pytest.raises(SpecError):
        nilpotent_class_at_most(integers(), 0)
    with pytest.raises(SpecError):
        card_at_most(integers(), 0)


@pytest.mark.parametrize("name, expr", POSITIVES)
def test_semideciders_verify_positives_with_checkable_witnesses(groups, name, expr):
    g = groups(expr)
    v = PROPERTIES[name](g, POSITIVE_FUEL)
    assert v.is_verified
    assert validate(name, g, v)


@pytest.mark.parametrize("name, expr", NEGATIVES)
def test_semideciders_stay_unknown_on_negatives(groups, name, expr):
    v = PROPERTIES[name](groups(expr), NEGATIVE_FUEL)
    assert v.status is Status.UNKNOWN
    assert v.fuel_spent == NEGATIVE_FUEL


def test_semideciders_never_refute():
    for name, run in PROPERTIES.items():
        if name == "abelian":
            continue
        for g in (integers(), free(2)):
            assert run(g, 2000).status is not Status.REFUTED


def test_virtually_cyclic_witness_for_infinite_dihedral(groups):
    v = PROPERTIES["virtually_cyclic"](groups("free(Z/2, Z/2)"), POSITIVE_FUEL)
    assert v.witness["A"] == [[1, -2]]
    assert v.witness["quotient"]["order_at_most"] == 2


@pytest.mark.parametrize("name, expr", [("virtually_nilpotent", "Heis"), ("virtually_nilpotent", "S 3")])
def test_virtually_nilpotent_positives(groups, name, expr):
    g = groups(expr)
    v = virtually_nilpotent_semidecide(g, POSITIVE_FUEL)
    assert v.is_verified and validate(name, g, v)


def test_rank_examples(groups):
    marked = groups("mark(Z; a, a^3)")
    v = rank_at_most_semidecide(marked, 1, 10 ** 4)
    assert v.is_verified and validate("rank", marked, v, j=1)
    heis = groups("Heis")
    own = rank_at_most_semidecide(heis, heis.rank, 10 ** 4)
    assert own.is_verified and validate("rank", heis, own, j=heis.rank)
    assert rank_at_most_semidecide(free(2), 1, 10 ** 4).is_unknown


def test_hyperbolicity_refuter(groups):
    z2 = groups("Z^2")
    v = not_delta_hyperbolic(z2, 1, 8)
    assert v.is_verified and validate("hyperbolic", z2, v)
    assert not_delta_hyperbolic(free(2), 1, 8).is_unknown
    assert not_delta_hyperbolic(integers(), 1, 8).is_unknown
    with pytest.raises(SpecError):
        not_delta_hyperbolic(z2, 3, 5)


MONOTONE_CASES = [("center", "Heis"), ("perfect", "A 5"), ("icc", "Heis"), ("finite", "Z/6"),
                  ("virtually_cyclic", "free(Z/2, Z/2)"), ("orderability", "S 3")]


@pytest.mark.parametrize("name, expr", MONOTONE_CASES)
def test_verdicts_are_monotone_in_fuel(groups, name, expr):
    g = groups(expr)
    first = PROPERTIES[name](g, POSITIVE_FUEL)
    spent = first.fuel_spent
    for fuel in (spent, spent + 1, 3 * spent):
        again = PROPERTIES[name](g, fuel)
        assert again.is_verified and again.witness == first.witness
    assert PROPERTIES[name](g, spent - 1).is_unknown


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(MONOTONE_CASES), st.integers(0, 12_000))
def test_any_fuel_gives_unknown_or_the_same_witness(groups, case, fuel):
    name, expr = case
    g = groups(expr)
    reference = PROPERTIES[name](g, POSITIVE_FUEL)
    v = PROPERTIES[name](g, fuel)
    assert v.is_unknown or v.witness == reference.witness
    assert v.is_verified == (fuel >= reference.fuel_spent)
