"""Dependency tree to binary tree conversion.

Each dependency node is turned into a constituent bottom-up: the head word
starts as a leaf and its dependents' constituents are attached one at a time,
every attachment creating one inner node.  Only the attachment order differs
between methods:

* ``Binary2`` (head-distance heuristics): dependents before the head attach
  before those after it; on each side, closer dependents attach first so the
  farthest ones end up nearest the root.  ``order="far-first"`` flips the
  within-side order.
* ``Binary1`` (relation priority): ascending rank of the relation label in a
  :class:`PriorityTable`, ties broken by the Binary2 order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .tree_core import BinTree, BinTreeBuilder, DepNode, DepTree, validate_dep_tree

NEAR_FIRST = "near-first"
FAR_FIRST = "far-first"

# Function words bind tightest, clausal and loosely attached material last.
DEFAULT_PRIORITY = (
    "fixed", "flat", "compound", "goeswith",
    "det", "clf", "case", "nummod", "amod", "nmod", "aux", "cop", "mark",
    "advmod", "neg", "obj", "iobj", "xcomp", "ccomp", "obl", "expl",
    "nsubj", "csubj", "acl", "advcl", "appos", "cc", "conj", "dislocated",
    "vocative", "discourse", "orphan", "list", "reparandum", "parataxis",
    "dep", "punct", "root",
)


class CapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class PriorityTable:
    """Relation label -> rank; lower ranks attach closer to the head.

    Labels are matched on their universal part (``nmod:poss`` -> ``nmod``)
    when the full subtype is not listed.
    """

    ranks: Mapping[str, int]
    default: int | None = None

    def rank(self, relation: str) -> int:
        if relation in self.ranks:
            return self.ranks[relation]
        base = relation.split(":", 1)[0]
        if base in self.ranks:
            return self.ranks[base]
        if self.default is not None:
            return self.default
        return max(self.ranks.values(), default=-1) + 1

    @classmethod
    def default_table(cls) -> PriorityTable:
        return cls({label: i for i, label in enumerate(DEFAULT_PRIORITY)})

    @classmethod
    def parse(cls, text: str) -> PriorityTable:
        """Read ``label<TAB>rank`` lines; ``#`` starts a comment."""
        ranks = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split("\t") if "\t" in line else line.split()
            if len(parts) != 2:
                raise ValueError(f"priority table line {lineno}: expected 'label<TAB>rank'")
            try:
                ranks[parts[0]] = int(parts[1])
            except ValueError:
                raise ValueError(f"priority table line {lineno}: rank must be an integer") from None
        return cls(ranks)

    @classmethod
    def load(cls, path: str | Path) -> PriorityTable:
        return cls.parse(Path(path).read_text(encoding="utf-8"))

    def dumps(self) -> str:
        return "".join(f"{label}\t{rank}\n" for label, rank in sorted(self.ranks.items(), key=lambda kv: (kv[1], kv[0])))


@dataclass(frozen=True)
class Binary2:
    order: str = NEAR_FIRST

    def __post_init__(self):
        if self.order not in (NEAR_FIRST, FAR_FIRST):
            raise ValueError(f"binary2 order must be {NEAR_FIRST!r} or {FAR_FIRST!r}, got {self.order!r}")

    def attach_order(self, t: DepTree, v: int) -> list[int]:
        head = t.nodes[v].id
        before = [c for c in t.children[v] if t.nodes[c].id < head]
        after = [c for c in t.children[v] if t.nodes[c].id > head]
        # children are in surface order: nearest-first means reversed on the left side
        before.reverse()
        if self.order == FAR_FIRST:
            before.reverse()
            after.reverse()
        return before + after


@dataclass(frozen=True)
class Binary1:
    table: PriorityTable = field(default_factory=PriorityTable.default_table)
    order: str = NEAR_FIRST

    def attach_order(self, t: DepTree, v: int) -> list[int]:
        fallback = Binary2(self.order).attach_order(t, v)
        slot = {c: i for i, c in enumerate(fallback)}
        return sorted(fallback, key=lambda c: (self.table.rank(t.nodes[c].relation), slot[c], t.nodes[c].id))


BinarizeMethod = Binary1 | Binary2


def binarize(t: DepTree, method: BinarizeMethod) -> BinTree:
    """Binarize ``t``; leaves are the word forms, one per node."""
    builder = BinTreeBuilder()
    built: list[int] = [-1] * len(t)
    for v in t.order:
        head_id = t.nodes[v].id
        acc = builder.leaf(t.nodes[v].form)
        for c in method.attach_order(t, v):
            if t.nodes[c].id < head_id:
                acc = builder.join(built[c], acc)
            else:
                acc = builder.join(acc, built[c])
        built[v] = acc
    return builder.build(built[t.root])


def count_binarizations(t: DepTree) -> int:
    """Size of :func:`all_binarizations`: product of (number of dependents)! per node."""
    return math.prod(math.factorial(len(ch)) for ch in t.children)


def all_binarizations(t: DepTree, cap: int = 100_000) -> list[BinTree]:
    """Every binarization obtained by any attachment order at every node.

    Word order is ignored for the order itself; each dependent still lands on
    its surface side of the current constituent.
    """
    total = count_binarizations(t)
    if total > cap:
        raise CapExceeded(f"{total} binarizations exceed cap {cap}")
    options: list[list[BinTree]] = [[] for _ in range(len(t))]
    for v in t.order:
        head_id = t.nodes[v].id
        ch = t.children[v]
        leaf = BinTree.leaf(t.nodes[v].form)
        trees = []
        for perm in itertools.permutations(ch):
            for parts in itertools.product(*(options[c] for c in perm)):
                acc = leaf
                for c, sub in zip(perm, parts):
                    acc = BinTree.join(sub, acc) if t.nodes[c].id < head_id else BinTree.join(acc, sub)
                trees.append(acc)
        options[v] = trees
    return options[t.root]


def drop_relations(t: DepTree, relations: Iterable[str] = ("punct",)) -> DepTree:
    """Remove nodes with the given relations; their dependents move to the removed node's head.

    The root is never removed, and a tree that would become empty is returned unchanged.
    """
    drop = set(relations)
    removed = {n.id for n in t.nodes if n.relation in drop and n.head != 0}
    if not removed:
        return t
    by_id = {n.id: n for n in t.nodes}

    def new_head(h: int) -> int:
        while h in removed:
            h = by_id[h].head
        return h

    kept = [DepNode(n.id, new_head(n.head), n.relation, n.form) for n in t.nodes if n.id not in removed]
    return validate_dep_tree(kept)


def leaf_multiset(trees: Sequence[BinTree]) -> list[list[str]]:
    return [sorted(tree.leaves()) for tree in trees]
