import functools
import itertools

import pytest

from partitions import (
    PartMultiplicity,
    Partition,
    conv_part,
    multiset_coefficient,
    partitions_of,
)
from util import DomainError


@functools.lru_cache(maxsize=None)
def partition_number(n, largest):
    """Partitions of n with every part at most `largest`"""
    if n == 0:
        return 1
    if largest == 0:
        return 0
    return sum(partition_number(n - k, k) for k in range(1, min(n, largest) + 1))


def parts(n, **kwargs):
    return [p.parts for p in partitions_of(n, **kwargs)]


def test_partitions_of_four_in_reverse_lex_order():
    assert parts(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


def test_partitions_of_one():
    assert parts(1) == [(1,)]


@pytest.mark.parametrize("n", range(1, 21))
def test_partition_counts(n):
    found = parts(n)
    assert len(found) == partition_number(n, n)
    assert len(set(found)) == len(found)
    assert all(sum(p) == n for p in found)


def test_order_is_strictly_decreasing():
    found = parts(9)
    assert found == sorted(found, reverse=True)


def test_min_parts_filter():
    assert parts(4, min_parts=2) == [(3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert parts(4, min_parts=3) == [(2, 1, 1), (1, 1, 1, 1)]
    assert parts(2, min_parts=3) == []


def test_max_part_filter():
    assert parts(5, min_parts=3, max_part=2) == [(2, 2, 1), (2, 1, 1, 1), (1, 1, 1, 1, 1)]
    assert parts(6, max_part=1) == [(1,) * 6]
    assert parts(3, max_part=0) == []


@pytest.mark.parametrize("n", [0, -3])
def test_partitions_of_rejects_non_positive(n):
    # Raised at call time, before iterating
    with pytest.raises(DomainError):
        partitions_of(n)


def test_partitions_of_rejects_negative_max_part():
    with pytest.raises(DomainError):
        partitions_of(4, max_part=-1)


def test_conv_part():
    assert conv_part(Partition((3, 3, 2, 1, 1))).entries == ((1, 2), (2, 1), (3, 2))
    assert conv_part(Partition((5,))).entries == ((5, 1),)


@pytest.mark.parametrize("n", range(1, 10))
def test_conv_part_expands_back(n):
    for p in partitions_of(n):
        view = p.multiplicities()
        assert view.n == n
        assert view.expand() == p


def test_partition_validation():
    with pytest.raises(DomainError):
        Partition(())
    with pytest.raises(DomainError):
        Partition((1, 2))
    with pytest.raises(DomainError):
        Partition((2, 0))


def test_part_multiplicity_validation():
    with pytest.raises(DomainError):
        PartMultiplicity(((2, 1), (1, 1)))
    with pytest.raises(DomainError):
        PartMultiplicity(((1, 0),))


def test_multiset_coefficient():
    assert multiset_coefficient(1, 3) == 1
    assert multiset_coefficient(2, 2) == 3
    assert multiset_coefficient(5, 2) == 15
    assert multiset_coefficient(0, 2) == 0


def test_multiset_coefficient_big_integers():
    t = 10**30
    assert multiset_coefficient(t, 2) == t * (t + 1) // 2


def test_multiset_coefficient_rejects_bad_arguments():
    with pytest.raises(DomainError):
        multiset_coefficient(-1, 2)
    with pytest.raises(DomainError):
        multiset_coefficient(3, 0)


@pytest.mark.parametrize("t", range(0, 6))
@pytest.mark.parametrize("m", range(1, 6))
def test_multiset_coefficient_counts_multisets(t, m):
    assert multiset_coefficient(t, m) == len(list(itertools.combinations_with_replacement(range(t), m)))


def test_partition_number_helper():
    assert [partition_number(n, n) for n in range(1, 13)] == [1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]
    assert partition_number(20, 20) == 627
