"""Memoized big-integer counts of series-reduced trees by number of tips.

Four tables are kept:

* T[n] (`rooted-T`): rooted trees with n leaves where every internal vertex has >= 2 children
* P[n] (`vertex-pointed-P`): sums over partitions with >= 3 parts, as in the original tip-count computation
* Q[n] (`edge-pair-Q`): unordered pairs of T[n] trees joined by an edge, C(T[n] + 1, 2)
* u(n) (`unrooted-exact`): homeomorphism classes of trees with n tips, split at the leaf-centroid

P counts a tree once for every class of internal vertex it could be rooted at, so P and Q together
overcount (the 4-tip H tree shows up in both P[4] and Q[2]). The published total and the exact total
are available side by side.
"""

__all__ = [
    "TableKind",
    "CountTable",
    "PaperTotal",
    "AuditRow",
    "TreeCounter",
    "count_rooted",
    "count_vertex_pointed_paper",
    "count_edge_pair",
    "count_unrooted_exact",
    "vertex_centroid_sum",
    "paper_total",
    "homeomorphism_classes_upto",
    "overcount_audit",
    "count_table",
]

import enum
import logging
import threading
from dataclasses import dataclass, field
from math import comb, prod
from typing import Callable, Dict, List, Optional, Tuple

from map import CountingConstants
from partitions import Partition, conv_part, multiset_coefficient, partitions_of
from util import require_positive

logger = logging.getLogger(__name__)


class TableKind(enum.Enum):
    ROOTED = "rooted-T"
    VERTEX_POINTED = "vertex-pointed-P"
    EDGE_PAIR = "edge-pair-Q"
    UNROOTED_EXACT = "unrooted-exact"


@dataclass
class CountTable:
    """An append-only map from tip count to an exact count. Safe to share between threads"""

    kind: TableKind
    _values: Dict[int, int] = field(default_factory=dict)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def get(self, n: int):
        """The stored value for `n`, or None if it hasn't been computed yet"""
        return self._values.get(n)

    def store(self, n: int, value: int) -> int:
        """Record a value. Storing the same value twice is allowed; changing a stored value is not

        :return: The value held by the table after the call
        """
        if value < 0:
            raise ValueError(f"{self.kind.value}[{n}] cannot be negative: {value}")
        with self._lock:
            existing = self._values.setdefault(n, value)
        if existing != value:
            raise RuntimeError(
                f"{self.kind.value}[{n}] is already {existing}, refusing to overwrite with {value}"
            )
        return existing

    def rows(self) -> List[Tuple[int, int]]:
        """Every stored (n, value) pair, ordered by n"""
        with self._lock:
            return sorted(self._values.items())

    def __contains__(self, n: int) -> bool:
        return n in self._values

    def __len__(self) -> int:
        return len(self._values)


@dataclass(frozen=True)
class PaperTotal:
    max_tips: int
    S: int
    S1: int


@dataclass(frozen=True)
class AuditRow:
    """How the published P/Q terms for one tip count compare to the exact class count"""

    n: int
    vertex_pointed: int
    edge_pair: int
    exact: int

    @property
    def paper_term(self) -> int:
        return self.vertex_pointed + self.edge_pair

    @property
    def difference(self) -> int:
        return self.paper_term - self.exact


class TreeCounter:
    """Owns one CountTable per kind and fills them on demand"""

    def __init__(self):
        self.tables = {kind: CountTable(kind) for kind in TableKind}

        rooted = self.tables[TableKind.ROOTED]
        rooted.store(1, 1)
        rooted.store(2, 1)
        self.tables[TableKind.VERTEX_POINTED].store(1, 1)
        # The one vertex tree
        self.tables[TableKind.UNROOTED_EXACT].store(1, 1)

    # Public methods

    def rooted(self, n: int) -> int:
        """T[n]: rooted series-reduced trees with n leaves

        :param n: Number of leaves, >= 1
        """
        require_positive(n)
        table = self.tables[TableKind.ROOTED]

        # Fill bottom-up so the recursion never goes deeper than one level
        for k in range(3, n + 1):
            if k not in table:
                table.store(k, self._partition_sum(k, min_parts=2))
                logger.debug("T[%d] = %d", k, table.get(k))
        return table.get(n)

    def vertex_pointed_paper(self, n: int) -> int:
        """P[n]: the sum over partitions with >= 3 parts, with no limit on the largest part"""
        require_positive(n)
        return self._memoized(
            TableKind.VERTEX_POINTED, n, lambda: self._partition_sum(n, min_parts=3)
        )

    def edge_pair(self, n: int) -> int:
        """Q[n] = C(T[n] + 1, 2): two rooted trees with n leaves each, joined root to root"""
        require_positive(n)
        return self._memoized(
            TableKind.EDGE_PAIR, n, lambda: comb(self.rooted(n) + 1, 2)
        )

    def vertex_centroid_sum(self, n: int) -> int:
        """Trees with n tips whose leaf-centroid is a vertex: every branch at it has < n/2 tips"""
        require_positive(n)
        if n == 1:
            return 1
        # ceil(n/2) - 1 is the largest integer strictly below n/2
        max_part = (n + 1) // 2 - 1
        return self._partition_sum(n, min_parts=3, max_part=max_part)

    def unrooted_exact(self, n: int) -> int:
        """u(n): homeomorphism classes of trees with n tips"""
        require_positive(n)

        def compute() -> int:
            total = self.vertex_centroid_sum(n)
            if n % 2 == 0:
                # Trees with a balanced edge: one half hangs on each end
                total += self.edge_pair(n // 2)
            return total

        return self._memoized(TableKind.UNROOTED_EXACT, n, compute)

    def paper_total(self, max_tips: int = CountingConstants.PAPER_MAX_TIPS) -> PaperTotal:
        """S = sum of P[i] for i <= max_tips; S1 = S + sum of Q[i] for i <= max_tips // 2"""
        require_positive(max_tips, "max_tips")
        s = sum(self.vertex_pointed_paper(i) for i in range(1, max_tips + 1))
        s1 = s + sum(self.edge_pair(i) for i in range(1, max_tips // 2 + 1))
        return PaperTotal(max_tips=max_tips, S=s, S1=s1)

    def homeomorphism_classes_upto(self, max_tips: int) -> int:
        require_positive(max_tips, "max_tips")
        return sum(self.unrooted_exact(i) for i in range(1, max_tips + 1))

    def overcount_audit(self, max_tips: int) -> List[AuditRow]:
        """One row per tip count comparing P[n] + Q[n/2] with u(n)"""
        require_positive(max_tips, "max_tips")
        return [
            AuditRow(
                n=n,
                vertex_pointed=self.vertex_pointed_paper(n),
                edge_pair=self.edge_pair(n // 2) if n % 2 == 0 else 0,
                exact=self.unrooted_exact(n),
            )
            for n in range(1, max_tips + 1)
        ]

    def count_table(self, kind: TableKind, max_n: int) -> List[Tuple[int, int]]:
        """(n, value) rows for n = 1..max_n"""
        require_positive(max_n, "max_n")
        method = {
            TableKind.ROOTED: self.rooted,
            TableKind.VERTEX_POINTED: self.vertex_pointed_paper,
            TableKind.EDGE_PAIR: self.edge_pair,
            TableKind.UNROOTED_EXACT: self.unrooted_exact,
        }[kind]
        return [(n, method(n)) for n in range(1, max_n + 1)]

    # Internals

    def _memoized(self, kind: TableKind, n: int, compute: Callable[[], int]) -> int:
        table = self.tables[kind]
        value = table.get(n)
        if value is None:
            value = table.store(n, compute())
            logger.debug("%s[%d] = %d", kind.value, n, value)
        return value

    def _weight(self, p: Partition) -> int:
        """Ways to fill the parts of `p` with rooted trees: a multiset of T[v] trees per distinct part v"""
        return prod(
            multiset_coefficient(self.rooted(part), mult) for part, mult in conv_part(p)
        )

    def _partition_sum(
        self, n: int, min_parts: int, max_part: Optional[int] = None
    ) -> int:
        return sum(
            self._weight(p)
            for p in partitions_of(n, min_parts=min_parts, max_part=max_part)
        )


# Shared by the module-level functions below
_counter = TreeCounter()


def count_rooted(n: int) -> int:
    return _counter.rooted(n)


def count_vertex_pointed_paper(n: int) -> int:
    return _counter.vertex_pointed_paper(n)


def count_edge_pair(n: int) -> int:
    return _counter.edge_pair(n)


def count_unrooted_exact(n: int) -> int:
    return _counter.unrooted_exact(n)


def vertex_centroid_sum(n: int) -> int:
    return _counter.vertex_centroid_sum(n)


def paper_total(max_tips: int = CountingConstants.PAPER_MAX_TIPS) -> PaperTotal:
    return _counter.paper_total(max_tips)


def homeomorphism_classes_upto(max_tips: int) -> int:
    return _counter.homeomorphism_classes_upto(max_tips)


def overcount_audit(max_tips: int) -> List[AuditRow]:
    return _counter.overcount_audit(max_tips)


def count_table(kind: TableKind, max_n: int) -> List[Tuple[int, int]]:
    return _counter.count_table(kind, max_n)
