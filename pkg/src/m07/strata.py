"""Blown-up strata of P^4 and their affine cone data.

The six base points are the four coordinate points, [0:0:0:0:1], and
[1:1:1:1:1]; strata are the spans of 1, 2 or 3 of them.  A stratum is
"5-free" when it avoids the all-ones point p_5; 5-free spans are
coordinate subspaces, so incidence and vanishing conditions are monomial.
Spans through p_5 become coordinate after one of the frame changes
x_c -> x_alpha - x_c, which swaps p_alpha with p_5.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import List, Sequence, Tuple

from .fields import Field

KINDS = {1: "point", 2: "line", 3: "plane"}


@dataclass(frozen=True)
class Stratum:
    indices: Tuple[int, ...]  # sorted subset of {0..5}, size 1..3

    def __post_init__(self):
        idx = self.indices
        if not 1 <= len(idx) <= 3 or list(idx) != sorted(set(idx)) or \
                not all(0 <= i <= 5 for i in idx):
            raise ValueError(f"bad stratum {idx}")

    @property
    def kind(self) -> str:
        return KINDS[len(self.indices)]

    @property
    def contains5(self) -> bool:
        return 5 in self.indices

    def __repr__(self):
        return "S" + "".join(map(str, self.indices))


ALL_STRATA: Tuple[Stratum, ...] = tuple(
    Stratum(tuple(s)) for size in (1, 2, 3) for s in combinations(range(6), size))


def stratum(indices: Sequence[int]) -> Stratum:
    return Stratum(tuple(sorted(indices)))


def base_point(F: Field, i: int) -> List:
    """Affine 5-vector of the i-th base point."""
    if i < 5:
        return [F.one if j == i else F.zero for j in range(5)]
    return [F.one] * 5


def condition_coords(st: Stratum) -> List[int]:
    """For a 5-free stratum: the coordinates that vanish on its span."""
    if st.contains5:
        raise ValueError("5-containing strata have difference conditions")
    return [c for c in range(5) if c not in st.indices]


def difference_pairs(st: Stratum) -> List[Tuple[int, int]]:
    """For a 5-containing stratum: pairs (a, b) with x_a = x_b on the span."""
    if not st.contains5:
        raise ValueError("5-free strata have coordinate conditions")
    free = [c for c in range(5) if c not in st.indices]
    return [(free[i], free[j]) for i in range(len(free)) for j in range(i + 1, len(free))]


def anchored_pairs(st: Stratum) -> List[Tuple[int, int]]:
    """A spanning subset of difference conditions: (a_0, b) for b != a_0."""
    free = [c for c in range(5) if c not in st.indices]
    a0 = free[0]
    return [(a0, b) for b in free[1:]]


def cone_directions(F: Field, st: Stratum) -> List[List]:
    """Constant vectors spanning the affine cone over the stratum's span."""
    dirs = []
    for i in st.indices:
        if i < 5:
            dirs.append([F.one if j == i else F.zero for j in range(5)])
    if st.contains5:
        dirs.append([F.one] * 5)
    return dirs


def codim(st: Stratum) -> int:
    """Codimension of the span inside P^4 (= number of independent conditions)."""
    return 5 - len(st.indices) - 1 + 1  # span dim = |idx|-1, codim = 4-(|idx|-1)
