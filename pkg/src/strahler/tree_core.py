"""Tree types and the Strahler number of binary trees.

Both tree kinds are stored as flat index arenas.  A :class:`BinTree` keeps its
nodes in post-order (children always have smaller indices than their parent,
the root is the last node), so every bottom-up quantity is a single forward
loop and no recursion is needed even for very deep trees.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterator, Sequence

LEAF = -1


class TreeError(ValueError):
    """Head links do not form a single rooted tree."""

    def __init__(self, message: str, ids: Sequence[int] = ()):
        super().__init__(message)
        self.ids = tuple(ids)


class EmptyTree(TreeError):
    pass


class MultipleRoots(TreeError):
    pass


class Cycle(TreeError):
    pass


class OrphanNode(TreeError):
    pass


# ---------------------------------------------------------------------------
# dependency trees


@dataclass(frozen=True)
class DepNode:
    id: int
    head: int
    relation: str = "dep"
    form: str = "_"


@dataclass(frozen=True, eq=False)
class DepTree:
    """A validated dependency tree.

    Use :func:`validate_dep_tree` to build one.  ``nodes`` is sorted by
    surface position; ``children[i]`` lists the child indices of ``nodes[i]``
    in surface order and ``order`` is a bottom-up (children first) ordering
    of all node indices.
    """

    nodes: tuple[DepNode, ...]
    root: int
    parent: tuple[int, ...]
    children: tuple[tuple[int, ...], ...]
    order: tuple[int, ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def forms(self) -> list[str]:
        return [node.form for node in self.nodes]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DepTree) and self.nodes == other.nodes

    def __hash__(self) -> int:
        return hash(self.nodes)


def validate_dep_tree(nodes: Sequence[DepNode]) -> DepTree:
    """Check that the head links of ``nodes`` form one rooted tree."""
    if not nodes:
        raise EmptyTree("tree has no nodes")
    nodes = tuple(sorted(nodes, key=lambda node: node.id))
    index = {}
    for i, node in enumerate(nodes):
        if node.id in index:
            raise TreeError(f"duplicate id {node.id}", [node.id])
        index[node.id] = i

    roots = [node.id for node in nodes if node.head == 0]
    if len(roots) > 1:
        raise MultipleRoots(f"multiple roots: {roots}", roots)
    orphans = [n.id for n in nodes if n.head != 0 and n.head not in index]
    orphans += [n.id for n in nodes if n.head == n.id]
    if orphans:
        raise OrphanNode(f"nodes with invalid head: {sorted(orphans)}", sorted(orphans))

    parent = [index[n.head] if n.head else -1 for n in nodes]
    # every non-root node has a valid parent here, so an unreachable node lies on a cycle
    if not roots:
        raise Cycle(f"no root; cycle among {_cycle_ids(parent, nodes)}",
                    _cycle_ids(parent, nodes))
    root = index[roots[0]]

    children: list[list[int]] = [[] for _ in nodes]
    for i, p in enumerate(parent):
        if p >= 0:
            children[p].append(i)

    seen = [False] * len(nodes)
    preorder = []
    stack = [root]
    while stack:
        v = stack.pop()
        seen[v] = True
        preorder.append(v)
        stack.extend(children[v])
    if len(preorder) != len(nodes):
        unreached = [nodes[i].id for i in range(len(nodes)) if not seen[i]]
        raise Cycle(f"cycle among {unreached}", unreached)

    return DepTree(
        nodes=nodes,
        root=root,
        parent=tuple(parent),
        children=tuple(tuple(c) for c in children),
        order=tuple(reversed(preorder)),
    )


def _cycle_ids(parent: list[int], nodes: Sequence[DepNode]) -> list[int]:
    v = 0
    seen = set()
    while v not in seen:
        seen.add(v)
        v = parent[v]
    cycle = [v]
    u = parent[v]
    while u != v:
        cycle.append(u)
        u = parent[u]
    return sorted(nodes[i].id for i in cycle)


def dep_tree_from_heads(heads: Sequence[int], relations: Sequence[str] | None = None,
                        forms: Sequence[str] | None = None) -> DepTree:
    """Build a tree from a 1-based head list (``heads[i]`` is the head of word ``i+1``)."""
    n = len(heads)
    relations = relations or ["dep"] * n
    forms = forms or [f"w{i + 1}" for i in range(n)]
    return validate_dep_tree(
        [DepNode(i + 1, h, r, f) for i, (h, r, f) in enumerate(zip(heads, relations, forms))]
    )


# ---------------------------------------------------------------------------
# binary trees


@dataclass(frozen=True)
class BinTree:
    """Binary tree in a post-order arena.

    ``left[i] == right[i] == LEAF`` marks a leaf whose payload is
    ``payload[i]``; otherwise ``payload[i]`` is ``None``.  The root is the
    last node.
    """

    left: tuple[int, ...]
    right: tuple[int, ...]
    payload: tuple[str | None, ...]

    @property
    def root(self) -> int:
        return len(self.left) - 1

    def __len__(self) -> int:
        return len(self.left)

    def is_leaf(self, i: int) -> bool:
        return self.left[i] == LEAF

    @property
    def n_leaves(self) -> int:
        return (len(self.left) + 1) // 2

    @property
    def inner_nodes(self) -> list[int]:
        return [i for i in range(len(self.left)) if self.left[i] != LEAF]

    def leaves(self) -> list[str]:
        """Leaf payloads from left to right."""
        out = []
        stack = [self.root]
        while stack:
            v = stack.pop()
            if self.left[v] == LEAF:
                out.append(self.payload[v])
            else:
                stack.append(self.right[v])
                stack.append(self.left[v])
        return out

    @classmethod
    def leaf(cls, payload: str) -> BinTree:
        return cls((LEAF,), (LEAF,), (payload,))

    @classmethod
    def join(cls, a: BinTree, b: BinTree) -> BinTree:
        """New tree whose root has ``a`` on the left and ``b`` on the right."""
        off = len(a)
        left = a.left + tuple(x + off if x != LEAF else LEAF for x in b.left) + (a.root,)
        right = a.right + tuple(x + off if x != LEAF else LEAF for x in b.right) + (b.root + off,)
        return cls(left, right, a.payload + b.payload + (None,))

    def mirror(self) -> BinTree:
        return BinTree(self.right, self.left, self.payload)

    def subtree(self, i: int) -> BinTree:
        builder = BinTreeBuilder()
        new = {}
        for v in self._postorder(i):
            if self.left[v] == LEAF:
                new[v] = builder.leaf(self.payload[v])
            else:
                new[v] = builder.join(new[self.left[v]], new[self.right[v]])
        return builder.build(new[i])

    def _postorder(self, start: int) -> list[int]:
        out = []
        stack = [start]
        while stack:
            v = stack.pop()
            out.append(v)
            if self.left[v] != LEAF:
                stack.append(self.left[v])
                stack.append(self.right[v])
        return out[::-1]

    def to_literal(self) -> str:
        """Parenthesized form, e.g. ``((1,2),(3,4))``."""
        parts: list[str | None] = [None] * len(self)
        for i in range(len(self)):
            if self.left[i] == LEAF:
                parts[i] = self.payload[i]
            else:
                parts[i] = f"({parts[self.left[i]]},{parts[self.right[i]]})"
        return parts[self.root]

    @classmethod
    def from_literal(cls, text: str) -> BinTree:
        return parse_literal(text)

    def __str__(self) -> str:
        return self.to_literal()


class BinTreeBuilder:
    """Append-only arena; :meth:`build` extracts the tree under a chosen root."""

    def __init__(self):
        self.left: list[int] = []
        self.right: list[int] = []
        self.payload: list[str | None] = []

    def leaf(self, payload: str) -> int:
        self.left.append(LEAF)
        self.right.append(LEAF)
        self.payload.append(payload)
        return len(self.left) - 1

    def join(self, a: int, b: int) -> int:
        self.left.append(a)
        self.right.append(b)
        self.payload.append(None)
        return len(self.left) - 1

    def build(self, root: int | None = None) -> BinTree:
        if root is None:
            root = len(self.left) - 1
        if root == len(self.left) - 1 and 2 * sum(x == LEAF for x in self.left) - 1 == len(self.left):
            # every node is reachable from the last one
            return BinTree(tuple(self.left), tuple(self.right), tuple(self.payload))
        order = []
        stack = [root]
        while stack:
            v = stack.pop()
            order.append(v)
            if self.left[v] != LEAF:
                stack.append(self.left[v])
                stack.append(self.right[v])
        order.reverse()
        new = {v: i for i, v in enumerate(order)}
        return BinTree(
            tuple(new[self.left[v]] if self.left[v] != LEAF else LEAF for v in order),
            tuple(new[self.right[v]] if self.right[v] != LEAF else LEAF for v in order),
            tuple(self.payload[v] for v in order),
        )


_TOKEN = re.compile(r"\s*(?:([(),])|([^(),\s]+))")


def parse_literal(text: str) -> BinTree:
    """Parse ``(a,(b,c))``-style literals; atoms are any runs without ``(),``."""
    builder = BinTreeBuilder()
    stack: list[list[int]] = []
    last = None
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad tree literal at {pos}: {text!r}")
        pos = m.end()
        punct, atom = m.groups()
        if not stack and last is not None:
            raise ValueError(f"trailing input after complete tree at {pos}: {text!r}")
        if atom is not None:
            last = builder.leaf(atom)
            if stack:
                stack[-1].append(last)
        elif punct == "(":
            stack.append([])
        elif punct == ")":
            if not stack or len(stack[-1]) != 2:
                raise ValueError(f"inner nodes need exactly two children: {text!r}")
            a, b = stack.pop()
            last = builder.join(a, b)
            if stack:
                stack[-1].append(last)
    if stack or last is None:
        raise ValueError(f"unbalanced tree literal: {text!r}")
    return builder.build(last)


# ---------------------------------------------------------------------------
# Strahler number


def strahler_labels(t: BinTree) -> list[int]:
    """Strahler number of every node, indexed like the arena."""
    s = [1] * len(t)
    for i in range(len(t)):
        a, b = t.left[i], t.right[i]
        if a != LEAF:
            sa, sb = s[a], s[b]
            s[i] = sa + 1 if sa == sb else max(sa, sb)
    return s


def strahler(t: BinTree) -> int:
    return strahler_labels(t)[t.root]


def depth(t: BinTree) -> int:
    """Number of nodes on the longest root-to-leaf path."""
    d = [1] * len(t)
    for i in range(len(t)):
        if t.left[i] != LEAF:
            d[i] = 1 + max(d[t.left[i]], d[t.right[i]])
    return d[t.root]


# ---------------------------------------------------------------------------
# constructors and exhaustive enumeration


def caterpillar(n: int, prefix: str = "") -> BinTree:
    """Left spine with ``n`` leaves; every inner node has a leaf on its right."""
    builder = BinTreeBuilder()
    acc = builder.leaf(f"{prefix}1")
    for i in range(2, n + 1):
        acc = builder.join(acc, builder.leaf(f"{prefix}{i}"))
    return builder.build(acc)


def complete_tree(levels: int) -> BinTree:
    """Perfect binary tree with ``2**(levels-1)`` leaves."""
    builder = BinTreeBuilder()
    layer = [builder.leaf(str(i + 1)) for i in range(2 ** (levels - 1))]
    while len(layer) > 1:
        layer = [builder.join(layer[i], layer[i + 1]) for i in range(0, len(layer), 2)]
    return builder.build(layer[0])


def binary_trees(n_leaves: int) -> Iterator[BinTree]:
    """All binary tree shapes with ``n_leaves`` leaves (Catalan many).

    Leaves are labelled 1..n from left to right.
    """
    for shape in _binary_shapes(n_leaves):
        builder = BinTreeBuilder()
        counter = itertools.count(1)
        # shapes are nested pairs with None for leaves
        ids: list[int] = []
        for s in _preorder_to_postorder(shape):
            if s is None:
                ids.append(builder.leaf(str(next(counter))))
            else:
                b = ids.pop()
                a = ids.pop()
                ids.append(builder.join(a, b))
        yield builder.build(ids[0])


def _preorder_to_postorder(shape) -> list:
    out = []
    stack = [(shape, False)]
    while stack:
        s, done = stack.pop()
        if s is None or done:
            out.append(s)
        else:
            stack.append((s, True))
            stack.append((s[1], False))
            stack.append((s[0], False))
    return out


_SHAPES: dict[int, list] = {1: [None]}


def _binary_shapes(n: int) -> list:
    if n not in _SHAPES:
        _SHAPES[n] = [(a, b) for k in range(1, n)
                      for a in _binary_shapes(k) for b in _binary_shapes(n - k)]
    return _SHAPES[n]


def plane_trees(n: int) -> Iterator[tuple[int, ...]]:
    """All ordered rooted trees with ``n`` nodes as parent arrays.

    Nodes are numbered in pre-order (0 is the root, whose parent is -1);
    siblings appear in increasing index order.
    """
    if n == 1:
        yield (-1,)
        return
    for forest in _plane_forests(n - 1):
        parent = [-1]
        for sub in forest:
            off = len(parent)
            parent.extend(0 if p == -1 else p + off for p in sub)
        yield tuple(parent)


def _plane_forests(n: int) -> Iterator[list[tuple[int, ...]]]:
    if n == 0:
        yield []
        return
    for k in range(1, n + 1):
        for first in plane_trees(k):
            for rest in _plane_forests(n - k):
                yield [first] + rest


def plane_tree_as_dep(parent: Sequence[int], head_slot: str = "first") -> DepTree:
    """Linearize a plane tree projectively into a :class:`DepTree`.

    ``head_slot="first"`` puts every head before its dependents;
    ``"middle"`` puts it after the first half of them.
    """
    n = len(parent)
    children: list[list[int]] = [[] for _ in range(n)]
    for v, p in enumerate(parent):
        if p >= 0:
            children[p].append(v)
    root = parent.index(-1)
    sequence = []
    stack: list[tuple[int, bool]] = [(root, False)]
    while stack:
        v, emit = stack.pop()
        if emit:
            sequence.append(v)
            continue
        ch = children[v]
        k = 0 if head_slot == "first" else len(ch) // 2
        items = [(c, False) for c in ch[:k]] + [(v, True)] + [(c, False) for c in ch[k:]]
        stack.extend(reversed(items))
    position = {v: i + 1 for i, v in enumerate(sequence)}
    return validate_dep_tree(
        [DepNode(position[v], position[parent[v]] if parent[v] >= 0 else 0, "dep", f"w{position[v]}")
         for v in range(n)]
    )
