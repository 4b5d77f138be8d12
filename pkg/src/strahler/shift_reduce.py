"""Shift-reduce evaluation of binary trees and stack-depth accounting.

Leaves are shifted onto a stack; an inner node reduces the top two entries
into one.  Which child is evaluated first at each inner node decides how deep
the stack gets; the minimum over all choices is the Strahler number.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

from .tree_core import LEAF, BinTree, strahler_labels

SHIFT = "shift"
REDUCE = "reduce"


class CapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Step:
    op: str
    stack_depth_after: int
    node: int


@dataclass(frozen=True)
class EvalTrace:
    steps: tuple[Step, ...]
    max_depth: int

    def __str__(self) -> str:
        lines = [f"{s.op:<6} depth={s.stack_depth_after}" for s in self.steps]
        lines.append(f"max_depth={self.max_depth}")
        return "\n".join(lines)


# inner node index -> True when its right child is evaluated first
TraversalOrder = Mapping[int, bool]


def left_first(t: BinTree) -> dict[int, bool]:
    return {i: False for i in t.inner_nodes}


def right_first(t: BinTree) -> dict[int, bool]:
    return {i: True for i in t.inner_nodes}


def evaluate(t: BinTree, order: TraversalOrder | None = None) -> EvalTrace:
    """Run shift-reduce over ``t``; every subtree is finished before its parent reduces.

    Inner nodes missing from ``order`` evaluate their left child first.
    """
    order = order or {}
    steps = []
    depth = 0
    deepest = 0
    stack: list[tuple[int, bool]] = [(t.root, False)]
    while stack:
        v, children_done = stack.pop()
        if t.left[v] == LEAF:
            depth += 1
            steps.append(Step(SHIFT, depth, v))
        elif children_done:
            depth -= 1
            steps.append(Step(REDUCE, depth, v))
        else:
            first, second = t.left[v], t.right[v]
            if order.get(v, False):
                first, second = second, first
            stack.append((v, True))
            stack.append((second, False))
            stack.append((first, False))
        deepest = max(deepest, depth)
    return EvalTrace(tuple(steps), deepest)


def sethi_ullman_order(t: BinTree) -> dict[int, bool]:
    """Evaluate the child with the larger label first; ties go left."""
    label = strahler_labels(t)
    return {i: label[t.right[i]] > label[t.left[i]] for i in t.inner_nodes}


def min_stack_depth(t: BinTree, exhaustive_cap: int = 16) -> int:
    """Smallest ``evaluate`` depth over every traversal order, by brute force."""
    inner = t.inner_nodes
    if len(inner) > exhaustive_cap:
        raise CapExceeded(f"{len(inner)} inner nodes exceed exhaustive cap {exhaustive_cap}")
    best = None
    for flags in itertools.product((False, True), repeat=len(inner)):
        d = evaluate(t, dict(zip(inner, flags))).max_depth
        if best is None or d < best:
            best = d
    return best
