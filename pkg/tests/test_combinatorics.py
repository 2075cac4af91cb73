from itertools import product

import pytest
from hypothesis import given

from nilcone.combinatorics import (
    Bipartition,
    Partition,
    b_invariant,
    enumerate_bipartitions,
    enumerate_partitions,
    exponent_form,
    n_invariant,
    parse_bipartition,
    partition_stats,
    partition_union,
    shape_data,
)

from strategies import bipartitions, partitions


def bp(text):
    return parse_bipartition(text)


def test_partition_validation():
    assert Partition([3, 1, 0, 0]) == (3, 1)
    with pytest.raises(ValueError):
        Partition([1, 2])
    with pytest.raises(ValueError):
        Partition([2, -1])


@pytest.mark.parametrize(
    "parts, stats",
    [((), (0, 0, 0)), ((6,), (6, 1, 0)), ((2, 2, 1, 1), (6, 4, 7))],
)
def test_partition_stats(parts, stats):
    assert tuple(partition_stats(Partition(parts))) == stats


@pytest.mark.parametrize(
    "parts, form",
    [((2, 2, 1, 1), [(2, 2), (1, 2)]), ((5,), [(5, 1)]), ((3, 3, 3, 1), [(3, 3), (1, 1)])],
)
def test_exponent_form(parts, form):
    assert exponent_form(Partition(parts)) == form


@pytest.mark.parametrize(
    "text, J",
    [("1,1,1,1;1,1", (2,)), ("1,1;1", (2,)), (";2,1", ()), (";1,1,1", ()), ("2,1;", (1,))],
)
def test_J(text, J):
    assert shape_data(bp(text)).J == J


def test_note_shape():
    shape = shape_data(bp("1,1,1,1;1,1"))
    assert [(b.l, b.n, b.j, b.k) for b in shape.blocks] == [(2, 2, 1, 1), (1, 2, 1, 0)]
    assert shape.levi_ranks() == [2, 1]
    assert shape.k_value(0) is None


@pytest.mark.parametrize("text, b", [(";", 0), ("1,1,1,1;1,1", 16), ("1,1;1", 3), ("1;1", 1)])
def test_b_invariant(text, b):
    assert b_invariant(bp(text)) == b


def test_union():
    assert partition_union(Partition([2, 1]), Partition([2, 1])) == (2, 2, 1, 1)
    assert partition_union(Partition(), Partition([3, 1])) == (3, 1)
    assert partition_union(Partition([3, 1]), Partition([2, 2])) == (3, 2, 2, 1)


def test_counts_of_Q_n():
    assert [len(enumerate_bipartitions(n)) for n in range(7)] == [1, 2, 5, 10, 20, 36, 65]


def test_enumeration_matches_double_loop():
    for n in range(6):
        pairs = {
            (mu, nu)
            for m in range(n + 1)
            for mu, nu in product(enumerate_partitions(m), enumerate_partitions(n - m))
        }
        listed = enumerate_bipartitions(n)
        assert len(listed) == len(set(listed)) == len(pairs)
        assert {(x.mu, x.nu) for x in listed} == pairs


def test_parse_roundtrip():
    for n in range(5):
        for x in enumerate_bipartitions(n):
            assert parse_bipartition(str(x)) == x


@given(partitions())
def test_conjugate_involution(p):
    assert p.conjugate().conjugate() == p
    assert p.conjugate().weight == p.weight


@given(bipartitions())
def test_shape_invariants(x):
    shape = shape_data(x)
    lam = x.lam
    # equal rows of lambda carry equal rows of mu and nu
    for i in range(1, len(lam)):
        if lam.part(i) == lam.part(i + 1):
            assert x.mu.part(i) == x.mu.part(i + 1) and x.nu.part(i) == x.nu.part(i + 1)
    rows = [i for blk in shape.blocks for i in blk.indices]
    assert rows == list(range(1, len(lam) + 1))
    ls = [blk.l for blk in shape.blocks]
    assert ls == sorted(set(ls), reverse=True)
    mu, nu = [], []
    for blk in shape.blocks:
        assert blk.j + blk.k == blk.l
        mu += [blk.j] * blk.n
        nu += [blk.k] * blk.n
    assert Partition(mu) == x.mu and Partition(nu) == x.nu
    assert set(shape.J) <= {blk.h for blk in shape.blocks}


@given(bipartitions())
def test_b_bounds(x):
    b = b_invariant(x)
    assert 0 <= b <= x.lam.weight + 2 * n_invariant(x.lam)


@given(bipartitions())
def test_compensators_land_in_J(x):
    shape = shape_data(x)
    for blk in shape.blocks:
        other = shape.compensator(blk.h)
        if blk.j and blk.h not in shape.J:
            assert other in shape.J
        else:
            assert other is None


def test_bipartition_needs_separator():
    with pytest.raises(ValueError):
        parse_bipartition("1,1")
