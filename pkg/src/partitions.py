"""Integer partitions and the part-multiplicity view used by every counting recursion.

Partitions are generated largest-first in reverse-lexicographic order, so
`partitions_of(4)` gives 4, 3+1, 2+2, 2+1+1, 1+1+1+1.
"""

__all__ = [
    "Partition",
    "PartMultiplicity",
    "partitions_of",
    "conv_part",
    "multiset_coefficient",
]

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterator, Optional, Tuple

from util import DomainError, require_positive, require_non_negative


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing, non-empty tuple of positive integers"""

    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts:
            raise DomainError("A partition needs at least one part")
        if any(p < 1 for p in parts):
            raise DomainError(f"Partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise DomainError(f"Partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        """The integer being partitioned"""
        return sum(self.parts)

    def multiplicities(self) -> "PartMultiplicity":
        return conv_part(self)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)


@dataclass(frozen=True)
class PartMultiplicity:
    """(part, multiplicity) pairs, strictly increasing by part"""

    entries: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        entries = tuple((int(p), int(m)) for p, m in self.entries)
        if not entries:
            raise DomainError("A part-multiplicity view needs at least one entry")
        for part, mult in entries:
            if part < 1 or mult < 1:
                raise DomainError(f"Parts and multiplicities must be positive: {entries}")
        if any(a[0] >= b[0] for a, b in zip(entries, entries[1:])):
            raise DomainError(f"Parts must be strictly increasing: {entries}")
        object.__setattr__(self, "entries", entries)

    @property
    def n(self) -> int:
        return sum(part * mult for part, mult in self.entries)

    def expand(self) -> Partition:
        """Rebuild the partition this view was taken from"""
        parts = []
        for part, mult in reversed(self.entries):
            parts.extend([part] * mult)
        return Partition(tuple(parts))

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(self.entries)


def partitions_of(
    n: int, *, min_parts: int = 1, max_part: Optional[int] = None
) -> Iterator[Partition]:
    """Every partition of `n` exactly once, in reverse-lexicographic order

    :param n: The integer to partition, >= 1
    :param min_parts: Skip partitions with fewer parts than this
    :param max_part: Skip partitions with a part larger than this (None for no limit)
    """
    require_positive(n)
    if max_part is None:
        max_part = n
    require_non_negative(max_part, "max_part")

    # The argument check runs eagerly; the partitions themselves are produced lazily
    return (
        Partition(parts)
        for parts in _descending(n, min(n, max_part))
        if len(parts) >= min_parts
    )


def _descending(n: int, largest: int) -> Iterator[Tuple[int, ...]]:
    if n == 0:
        yield ()
        return

    for head in range(min(n, largest), 0, -1):
        for tail in _descending(n - head, head):
            yield (head,) + tail


def conv_part(p: Partition) -> PartMultiplicity:
    """Distinct parts of `p` in ascending order with their multiplicities.

    [3, 3, 2, 1, 1] becomes [(1, 2), (2, 1), (3, 2)]
    """
    # Walk the partition from its smallest part upwards, grouping equal parts
    return PartMultiplicity(
        tuple(
            (part, len(list(group)))
            for part, group in itertools.groupby(reversed(p.parts))
        )
    )


def multiset_coefficient(t: int, m: int) -> int:
    """The number of size-`m` multisets drawn from `t` types, C(t + m - 1, m)

    :param t: Number of types, >= 0. May be arbitrarily large
    :param m: Multiset size, >= 1
    """
    require_non_negative(t, "t")
    require_positive(m, "m")
    return comb(t + m - 1, m)
