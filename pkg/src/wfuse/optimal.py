"""Optimal non-recycling preparation costs via dynamic programming.

For every target index the cheapest way to build it from two freshly
prepared parts is

    R[w_n]_opt = min_{k=1..n-1} (R[w_k]_opt + R[w_{n-k}]_opt) / P_s(w_k, w_{n-k})

with ``R[w_1] = 1``.  The table records the minimizing split so the full
fusion tree can be reconstructed.  Costs grow super-polynomially (the
entry at index 64 already exceeds 10^6), hence exact big-integer rationals
end to end.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .growth_costs import compose_cost

__all__ = ["CostEntry", "CostTable", "FusionTree", "optimal_costs", "optimal_plan"]


@dataclass(frozen=True)
class CostEntry:
    """Optimal cost of one target plus the split that attains it."""

    cost: Fraction
    best_split: Optional[int]  # smallest minimizing k; None for the base state


@dataclass(frozen=True)
class CostTable:
    """Optimal costs for every index 1..max_n."""

    entries: dict[int, CostEntry]
    max_n: int

    def __getitem__(self, n: int) -> CostEntry:
        if not 1 <= n <= self.max_n:
            raise KeyError(f"index {n} outside table range 1..{self.max_n}")
        return self.entries[n]

    def cost(self, n: int) -> Fraction:
        return self[n].cost


def optimal_costs(max_n: int) -> CostTable:
    """Fill the optimal-cost table bottom-up for indices 1..max_n.

    Ties between equal-cost splits break toward the smallest k, so the
    table (and everything derived from it) is deterministic.
    """
    if max_n < 1:
        raise ValueError(f"max_n must be >= 1, got {max_n}")
    entries = {1: CostEntry(Fraction(1), None)}
    for n in range(2, max_n + 1):
        best_cost = None
        best_k = None
        for k in range(1, n // 2 + 1):  # split (k, n-k) == (n-k, k)
            cost = compose_cost(entries[k].cost, entries[n - k].cost, k, n - k)
            if best_cost is None or cost < best_cost:
                best_cost = cost
                best_k = k
        entries[n] = CostEntry(best_cost, best_k)
    return CostTable(entries, max_n)


@dataclass(frozen=True)
class FusionTree:
    """Binary fusion plan; leaves are the unit-cost ``w_1`` states."""

    size: int
    left: Optional["FusionTree"] = None
    right: Optional["FusionTree"] = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    def cost(self) -> Fraction:
        """Composed bottom-up cost of executing this plan."""
        if self.is_leaf:
            return Fraction(1)
        return compose_cost(
            self.left.cost(), self.right.cost(), self.left.size, self.right.size
        )

    def shape(self):
        """Nested-tuple rendering, e.g. ``((1, 1), (1, (1, 1)))``."""
        if self.is_leaf:
            return 1
        return (self.left.shape(), self.right.shape())


def optimal_plan(table: CostTable, n: int) -> FusionTree:
    """Fusion tree realizing ``table[n]``; its cost equals the table entry."""
    entry = table[n]  # raises KeyError when out of range
    if entry.best_split is None:
        return FusionTree(size=n)
    k = entry.best_split
    return FusionTree(
        size=n,
        left=optimal_plan(table, k),
        right=optimal_plan(table, n - k),
    )
