import random

import pytest

from markedgroups.machines import LOOP, halt_at
from markedgroups.markov import (BUILTIN_HALTING, BUILTIN_LOOPING, builtin_machine, diagonal_group,
                                 diagonal_sequence, distinguish_semidecide)
from markedgroups.oracle import (SpecError, check_lawful, constant_sequence, cyclic, cyclic_sequence, free,
                                 heisenberg, integers)
from markedgroups.words import MalformedInput

SEQ = cyclic_sequence()


@pytest.mark.parametrize("machine", BUILTIN_LOOPING)
def test_looping_machine_gives_the_limit(machine):
    g, z = diagonal_group(SEQ, machine), integers()
    assert all(g.bit(n) == z.bit(n) for n in range(500))
    assert distinguish_semidecide(g, z, 10 ** 5).is_unknown


@pytest.mark.parametrize("p", range(1, 11))
def test_halting_machine_gives_a_member(p):
    g = diagonal_group(SEQ, halt_at(p))
    member = SEQ.at(SEQ.regulator(p))
    assert all(g.bit(n) == member.bit(n) for n in range(500))
    v = distinguish_semidecide(g, integers(), 10 ** 5)
    assert v.is_verified
    n = v.witness["bit"]
    assert n >= p and g.bit(n) != integers().bit(n)


def test_constant_sequence_diagonal_is_the_constant():
    h = heisenberg()
    seq = constant_sequence(h)
    for machine in (LOOP, halt_at(1), halt_at(4)):
        g = diagonal_group(seq, machine)
        assert all(g.bit(n) == h.bit(n) for n in range(300))


def test_distinguish_examples():
    v = distinguish_semidecide(cyclic(2), integers(), 100)
    assert v.is_verified and v.witness["bit"] == 3
    g = heisenberg()
    same = distinguish_semidecide(g, g, 5000)
    assert same.is_unknown and same.fuel_spent == 5000
    assert distinguish_semidecide(diagonal_group(SEQ, halt_at(2)), integers(), 10 ** 4).witness["bit"] >= 2
    with pytest.raises(SpecError):
        distinguish_semidecide(integers(), free(2), 10)


@pytest.mark.parametrize("machine", [BUILTIN_LOOPING[4], BUILTIN_HALTING[6]])
def test_bits_do_not_depend_on_query_order(machine):
    order = list(range(400))
    random.Random(11).shuffle(order)
    in_order = diagonal_group(SEQ, machine)
    shuffled = diagonal_group(SEQ, machine)
    expected = {n: in_order.bit(n) for n in range(400)}
    assert {n: shuffled.bit(n) for n in order} == expected


@pytest.mark.parametrize("machine", [BUILTIN_LOOPING[0], BUILTIN_HALTING[2], BUILTIN_HALTING[9]])
def test_diagonal_groups_are_lawful(machine):
    assert check_lawful(diagonal_group(SEQ, machine), pairs=200, conjugators=10) == []


def test_verdicts_do_not_depend_on_query_order():
    machine = BUILTIN_HALTING[4]
    cold = distinguish_semidecide(diagonal_group(SEQ, machine), integers(), 10 ** 4)
    warm_group = diagonal_group(SEQ, machine)
    for n in reversed(range(60)):
        warm_group.bit(n)
    warm = distinguish_semidecide(warm_group, integers(), 10 ** 4)
    assert cold == warm


def test_diagonal_sequence_members():
    seq = diagonal_sequence(SEQ)
    assert seq.at(0).bit(3) == diagonal_group(SEQ, 0).bit(3)


def test_builtin_machine_names():
    assert builtin_machine("17") == 17
    assert builtin_machine("builtin:halt@3") == halt_at(3)
    assert builtin_machine("builtin:loop") == BUILTIN_LOOPING[0]
    with pytest.raises(MalformedInput):
        builtin_machine("builtin:nope")
