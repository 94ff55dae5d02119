import pytest
from hypothesis import given, settings, strategies as st

from markedgroups.words import (MalformedInput, cantor_pair, cantor_unpair, cyclic_reduce, inverse,
                                mul, pair_tuple, prime_decode, reduce, shortlex_index, unpair_tuple,
                                word_at)


def letters(rank):
    return st.integers(1, rank).flatmap(lambda i: st.sampled_from([i, -i]))


def raw_words(rank=3, max_size=20):
    return st.lists(letters(rank), max_size=max_size)


def slow_reduce(word):
    """Cancel the first adjacent inverse pair until none is left."""
    w = list(word)
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if w[i] == -w[i + 1]:
                del w[i:i + 2]
                changed = True
                break
    return tuple(w)


@pytest.mark.parametrize("raw, expected", [
    ((1, -1), ()),
    ((1, 2, -2, 1), (1, 1)),
    ((1, -2, 2, -1, 1), (1,)),
])
def test_reduce_examples(raw, expected):
    assert reduce(raw, 2) == expected


def test_reduce_rejects_out_of_rank_letters():
    with pytest.raises(MalformedInput):
        reduce((1, 3), 2)
    with pytest.raises(MalformedInput):
        reduce((0,), 2)


@given(raw_words())
def test_reduce_matches_repeated_scan(w):
    assert reduce(w) == slow_reduce(w)


@given(raw_words())
def test_reduce_idempotent_and_shortening(w):
    r = reduce(w)
    assert reduce(r) == r
    assert len(r) <= len(w)


@given(raw_words())
def test_word_times_inverse_is_empty(w):
    assert mul(w, inverse(w)) == ()


@given(raw_words())
def test_cyclic_reduce_conjugates_back(w):
    core, h = cyclic_reduce(reduce(w))
    assert mul(h, core, inverse(h)) == reduce(w)


@pytest.mark.parametrize("rank, index, word", [
    (1, 0, ()), (1, 3, (1, 1)), (1, 5, (1, 1, 1)), (2, 0, ()), (2, 2, (2,)), (2, 5, (1, 1)),
])
def test_shortlex_examples(rank, index, word):
    assert word_at(index, rank) == word
    assert shortlex_index(word, rank) == index


@pytest.mark.parametrize("m", range(1, 8))
def test_rank_one_index_pattern(m):
    assert shortlex_index((1,) * m, 1) == 2 * m - 1
    assert shortlex_index((-1,) * m, 1) == 2 * m


@pytest.mark.parametrize("rank", [1, 2, 3, 4])
def test_shortlex_round_trip_to_ten_thousand(rank):
    previous = ()
    for n in range(10_000):
        w = word_at(n, rank)
        assert shortlex_index(w, rank) == n
        assert len(w) >= len(previous)
        previous = w


@settings(max_examples=200)
@given(st.integers(1, 4).flatmap(lambda k: st.tuples(st.just(k), raw_words(k, 12))))
def test_index_round_trip_from_words(case):
    rank, w = case
    w = reduce(w)
    assert word_at(shortlex_index(w, rank), rank) == w


@given(st.integers(1, 3).flatmap(lambda k: st.tuples(st.just(k), raw_words(k, 8), raw_words(k, 8))))
def test_shortlex_refines_length(case):
    rank, u, v = case
    u, v = reduce(u), reduce(v)
    if len(u) < len(v):
        assert shortlex_index(u, rank) < shortlex_index(v, rank)


def test_cantor_examples():
    assert cantor_pair(0, 0) == 0
    assert cantor_pair(1, 2) == 8
    assert cantor_unpair(8) == (1, 2)


def test_cantor_pair_injective_on_grid():
    seen = {cantor_pair(n, m) for n in range(501) for m in range(501)}
    assert len(seen) == 501 * 501


@given(st.integers(0, 10 ** 12))
def test_unpair_then_pair(z):
    assert cantor_pair(*cantor_unpair(z)) == z


@given(st.integers(0, 10 ** 9), st.integers(1, 6))
def test_tuple_pairing_round_trip(z, size):
    assert pair_tuple(unpair_tuple(z, size)) == z


@pytest.mark.parametrize("n, rank, word", [(1, 1, ()), (3, 1, (-1,)), (9, 1, (1,))])
def test_prime_decode_examples(n, rank, word):
    assert prime_decode(n, rank) == word


def test_prime_decode_ignores_the_power_of_two():
    assert prime_decode(3 * 2 ** 5, 1) == prime_decode(3, 1)


def test_prime_decode_rejects_zero():
    with pytest.raises(MalformedInput):
        prime_decode(0, 1)
