from concurrent.futures import ThreadPoolExecutor

import pytest

import counting
from counting import CountTable, TableKind, TreeCounter
from map import CountingConstants
from util import DomainError

# Rooted series-reduced trees by number of leaves
ROOTED = [1, 1, 2, 5, 12, 33, 90, 261, 766, 2312]

# Homeomorphism classes of trees by number of tips
UNROOTED = [1, 1, 1, 2, 3, 7, 13, 32]


@pytest.fixture
def counter():
    return TreeCounter()


def test_rooted_counts(counter):
    assert [counter.rooted(n) for n in range(1, 11)] == ROOTED


def test_rooted_seeds(counter):
    assert counter.rooted(1) == 1
    assert counter.rooted(2) == 1


def test_vertex_pointed_counts(counter):
    assert [counter.vertex_pointed_paper(n) for n in range(1, 6)] == [1, 0, 1, 2, 5]


def test_edge_pair_counts(counter):
    assert [counter.edge_pair(n) for n in range(1, 5)] == [1, 1, 3, 15]


def test_unrooted_exact_counts(counter):
    assert [counter.unrooted_exact(n) for n in range(1, 9)] == UNROOTED


def test_paper_total_reproduces_published_value(counter):
    totals = counter.paper_total()
    assert totals.max_tips == CountingConstants.PAPER_MAX_TIPS
    assert totals.S1 == CountingConstants.PAPER_TOTAL == 3901520


def test_paper_total_small(counter):
    one = counter.paper_total(1)
    assert (one.S, one.S1) == (1, 1)

    four = counter.paper_total(4)
    assert four.S == 4
    assert four.S1 == 6


def test_homeomorphism_classes_upto(counter):
    assert counter.homeomorphism_classes_upto(4) == 5
    assert counter.homeomorphism_classes_upto(8) == sum(UNROOTED)


def test_published_total_overcounts(counter):
    for max_tips in range(1, CountingConstants.PAPER_MAX_TIPS + 1):
        assert counter.paper_total(max_tips).S1 >= counter.homeomorphism_classes_upto(max_tips)


@pytest.mark.parametrize("n", range(1, CountingConstants.PAPER_MAX_TIPS + 1))
def test_vertex_term_dominates_centroid_sum(counter, n):
    assert counter.vertex_pointed_paper(n) >= counter.vertex_centroid_sum(n)


def test_overcount_audit(counter):
    rows = counter.overcount_audit(CountingConstants.PAPER_MAX_TIPS)
    assert [row.n for row in rows] == list(range(1, 18))
    assert all(row.difference >= 0 for row in rows)

    # The H tree: counted by P[4] (rooted at either internal vertex) and by Q[2]
    four = rows[3]
    assert (four.vertex_pointed, four.edge_pair, four.exact) == (2, 1, 2)
    assert four.difference == 1

    assert sum(row.paper_term for row in rows) == counter.paper_total().S1
    assert sum(row.exact for row in rows) == counter.homeomorphism_classes_upto(17)


def test_count_table(counter):
    assert counter.count_table(TableKind.ROOTED, 4) == [(1, 1), (2, 1), (3, 2), (4, 5)]
    assert counter.count_table(TableKind.UNROOTED_EXACT, 3) == [(1, 1), (2, 1), (3, 1)]


def test_big_counts_are_exact(counter):
    # Counts stay plain ints at any size
    value = counter.rooted(40)
    assert isinstance(value, int)
    assert value > 10**12
    assert counter.unrooted_exact(40) < value


@pytest.mark.parametrize("n", [0, -1])
def test_rejects_non_positive(counter, n):
    for method in (
        counter.rooted,
        counter.vertex_pointed_paper,
        counter.edge_pair,
        counter.unrooted_exact,
    ):
        with pytest.raises(DomainError):
            method(n)


def test_module_functions_share_a_counter():
    assert counting.count_rooted(4) == 5
    assert counting.count_vertex_pointed_paper(2) == 0
    assert counting.count_edge_pair(3) == 3
    assert counting.count_unrooted_exact(5) == 3
    assert counting.vertex_centroid_sum(4) == 1
    assert counting.paper_total(4).S1 == 6


def test_concurrent_callers_agree():
    counter = TreeCounter()
    with ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(counter.unrooted_exact, [12] * 16 + list(range(1, 13))))
    assert len(set(results[:16])) == 1
    assert results[16:24] == UNROOTED


def test_count_table_is_append_only():
    table = CountTable(TableKind.ROOTED)
    assert table.store(3, 2) == 2
    assert table.store(3, 2) == 2
    with pytest.raises(RuntimeError):
        table.store(3, 4)
    assert table.rows() == [(3, 2)]
    assert 3 in table
    assert len(table) == 1
    assert table.get(4) is None
