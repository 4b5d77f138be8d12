"""Upper and lower Strahler limits of a dependency tree over all binarizations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .tree_core import DepTree


@dataclass(frozen=True, order=True)
class LimitPair:
    lower: int
    upper: int

    def __post_init__(self):
        if not 1 <= self.lower <= self.upper:
            raise ValueError(f"invalid limits ({self.lower}, {self.upper})")

    def __iter__(self):
        return iter((self.lower, self.upper))


def it(x: int, y: int) -> int:
    """One Strahler merge step: ``x+1`` on a tie, otherwise the larger value."""
    return x + 1 if x == y else max(x, y)


def fold_max(values: Iterable[int]) -> int:
    """Largest value a head can reach when attaching children with these limits."""
    acc = it(0, 1)
    for value in sorted(values):
        acc = it(acc, value)
    return acc


def fold_min(values: Iterable[int]) -> int:
    """Smallest value a head can reach when attaching children with these limits."""
    acc = 0
    for value in sorted(values, reverse=True):
        acc = it(acc, value)
    return it(acc, 1)


def _node_limits(t: DepTree, fold) -> list[int]:
    value = [1] * len(t)
    for v in t.order:
        if t.children[v]:
            value[v] = fold(value[c] for c in t.children[v])
    return value


def f_max(t: DepTree) -> int:
    return _node_limits(t, fold_max)[t.root]


def f_min(t: DepTree) -> int:
    return _node_limits(t, fold_min)[t.root]


def limit_pair(t: DepTree) -> LimitPair:
    return LimitPair(f_min(t), f_max(t))
