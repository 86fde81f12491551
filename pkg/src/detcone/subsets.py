"""Bitmask conventions for subsets of the ground set {1..n}.

Ground-set indices are 1-based. A subset is a bitmask in [0, 2**n) where
bit i-1 stands for index i, so 0b101 = {1, 3}. Set functions are stored as
vectors of length 2**n indexed by mask. JSON spells a subset as its sorted
comma-separated indices ("1,3"); the empty set is never written and is
implied to carry value 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

MAX_GROUND = 12  # 2**n tables; beyond this the toolkit is the wrong shape


def check_ground(n: int) -> int:
    if not isinstance(n, int) or not 1 <= n <= MAX_GROUND:
        raise ValueError(f"ground-set size must be an integer in 1..{MAX_GROUND}, got {n!r}")
    return n


@dataclass(frozen=True)
class GroundSet:
    """The index set {1..n}."""

    n: int

    def __post_init__(self) -> None:
        check_ground(self.n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def subsets(self) -> Iterator[int]:
        """All 2**n subset masks, empty set first."""
        return iter(range(1 << self.n))

    def nonempty_subsets(self) -> Iterator[int]:
        return iter(range(1, 1 << self.n))

    def singletons(self) -> Iterator[int]:
        return (1 << i for i in range(self.n))


def full_mask(n: int) -> int:
    return (1 << n) - 1


def mask_of(indices: Iterable[int], n: int) -> int:
    """Bitmask of a collection of 1-based indices."""
    m = 0
    for i in indices:
        if not 1 <= i <= n:
            raise ValueError(f"index {i} out of range 1..{n}")
        m |= 1 << (i - 1)
    return m


def indices_of(mask: int) -> tuple[int, ...]:
    """Sorted 1-based indices of a mask."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def subset_key(mask: int) -> str:
    """JSON key for a nonempty mask, e.g. 0b101 -> "1,3"."""
    if mask == 0:
        raise ValueError("the empty set has no JSON key")
    return ",".join(str(i) for i in indices_of(mask))


def parse_subset_key(key: str, n: int) -> int:
    """Inverse of subset_key; validates indices against the ground set."""
    parts = key.replace(" ", "").split(",")
    try:
        indices = [int(p) for p in parts]
    except ValueError:
        raise ValueError(f"bad subset key {key!r}") from None
    if len(set(indices)) != len(indices):
        raise ValueError(f"repeated index in subset key {key!r}")
    return mask_of(indices, n)


def popcount(mask: int) -> int:
    return mask.bit_count()
