"""Exact Strahler statistics of random tree ensembles.

``R2(n)``: all binary trees with ``n`` leaves.  ``R(n)``: all plane (ordered
rooted) trees with ``n`` nodes, scored by their upper/lower limits.  Counts are
Python integers throughout; averages are exact :class:`~fractions.Fraction`
objects until the caller asks for floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .limits import LimitPair, fold_max, fold_min
from .tree_core import BinTree, BinTreeBuilder

MAX = "max"
MIN = "min"
DEFAULT_N_MAX = 300


class NMaxExceeded(ValueError):
    pass


def catalan(k: int) -> int:
    return math.comb(2 * k, k) // (k + 1)


def catalan_binary_count(n: int) -> int:
    """|R2(n)| = C(2n-2, n-1) / n."""
    if n < 1:
        raise ValueError("n must be positive")
    return math.comb(2 * n - 2, n - 1) // n


def plane_tree_count(n: int) -> int:
    """|R(n)|: plane trees with ``n`` nodes, the Catalan number C_{n-1}."""
    if n < 1:
        raise ValueError("n must be positive")
    return catalan(n - 1)


def r2_limits(n: int) -> LimitPair:
    if n < 1:
        raise ValueError("n must be positive")
    return LimitPair(1 if n == 1 else 2, n.bit_length())


# ---------------------------------------------------------------------------
# R2(n): Strahler distribution of binary trees by leaf count


@dataclass
class R2Table:
    """``counts[n][s]``: number of ``n``-leaf binary trees with Strahler ``s``.

    Row ``n`` is an object array indexed by ``s`` (index 0 unused).
    """

    n_max: int
    counts: list = field(repr=False)

    def distribution(self, n: int) -> dict[int, int]:
        self._check(n)
        return {s: int(c) for s, c in enumerate(self.counts[n]) if c}

    def mean(self, n: int) -> Fraction:
        dist = self.distribution(n)
        return Fraction(sum(s * c for s, c in dist.items()), sum(dist.values()))

    def variance(self, n: int) -> Fraction:
        dist = self.distribution(n)
        total = sum(dist.values())
        m = Fraction(sum(s * c for s, c in dist.items()), total)
        return Fraction(sum(s * s * c for s, c in dist.items()), total) - m * m

    def probabilities(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        dist = self.distribution(n)
        total = sum(dist.values())
        values = np.array(sorted(dist), dtype=np.int64)
        probs = np.array([float(Fraction(dist[s], total)) for s in values])
        return values, probs / probs.sum()

    def _check(self, n: int) -> None:
        if not 1 <= n <= self.n_max:
            raise NMaxExceeded(f"n={n} outside table range 1..{self.n_max}")


def r2_table(n_max: int) -> R2Table:
    """Convolution over root splits, with prefix sums over Strahler values.

    A root with subtrees of ``k`` and ``n-k`` leaves has Strahler ``s`` iff its
    children are ``(s, <s)``, ``(<s, s)`` or ``(s-1, s-1)``.
    """
    if n_max < 1:
        raise ValueError("n_max must be positive")
    width = n_max.bit_length() + 2
    counts = np.zeros((n_max + 1, width), dtype=object)
    below = np.zeros((n_max + 1, width), dtype=object)  # below[n][s] = #trees with Strahler < s
    counts[1, 1] = 1
    below[1, 2:] = 1
    for n in range(2, n_max + 1):
        top = n.bit_length()
        for s in range(2, top + 1):
            a = counts[1:n, s]
            b = counts[n - 1:0:-1, s]
            la = below[1:n, s]
            lb = below[n - 1:0:-1, s]
            a1 = counts[1:n, s - 1]
            b1 = counts[n - 1:0:-1, s - 1]
            counts[n, s] = np.dot(a, lb) + np.dot(la, b) + np.dot(a1, b1)
        running = 0
        for s in range(1, width):
            below[n, s] = running
            running += counts[n, s]
    return R2Table(n_max, [counts[n] for n in range(n_max + 1)])


@lru_cache(maxsize=8)
def _cached_r2_table(n_max: int) -> R2Table:
    return r2_table(n_max)


def r2_strahler_distribution(n: int, n_max: int = 4096) -> dict[int, int]:
    if n > n_max:
        raise NMaxExceeded(f"n={n} exceeds n_max={n_max}")
    return _cached_r2_table(_bucket(n)).distribution(n)


def r2_mean(n: int, n_max: int = 4096) -> Fraction:
    if n > n_max:
        raise NMaxExceeded(f"n={n} exceeds n_max={n_max}")
    return _cached_r2_table(_bucket(n)).mean(n)


def _bucket(n: int) -> int:
    # reuse tables across nearby requests
    return max(64, 1 << (n - 1).bit_length())


def sample_binary_tree(n: int, rng: np.random.Generator) -> BinTree:
    """Uniformly random binary tree with ``n`` leaves (labelled 1..n left to right)."""
    builder = BinTreeBuilder()
    label = iter(range(1, n + 1))
    # explicit stack of (size, state); state 0 = expand, 1 = join
    stack: list[tuple[int, int]] = [(n, 0)]
    built: list[int] = []
    while stack:
        size, state = stack.pop()
        if state == 1:
            b = built.pop()
            a = built.pop()
            built.append(builder.join(a, b))
        elif size == 1:
            built.append(builder.leaf(str(next(label))))
        else:
            weights = np.array([float(Fraction(catalan(k - 1) * catalan(size - k - 1), catalan(size - 1)))
                                for k in range(1, size)])
            k = int(rng.choice(np.arange(1, size), p=weights / weights.sum()))
            stack.append((size, 1))
            stack.append((size - k, 0))
            stack.append((k, 0))
    return builder.build(built[0])


# ---------------------------------------------------------------------------
# R(n): plane trees, limits through reduced child-limit states

State = tuple[int, ...]


def _fold(mode: str):
    if mode == MAX:
        return fold_max
    if mode == MIN:
        return fold_min
    raise ValueError(f"mode must be 'max' or 'min', got {mode!r}")


def reduce_state(values: Iterable[int]) -> State:
    """Sort and keep at most two copies of each value."""
    out: list[int] = []
    for v in sorted(values):
        if len(out) < 2 or not (out[-1] == v and out[-2] == v):
            out.append(v)
    return tuple(out)


def state_of(child_limits: Sequence[int]) -> State:
    return reduce_state(child_limits)


def st(q: Sequence[int], mode: str) -> int:
    """Limit of a head whose children have the limits in ``q`` (empty -> leaf -> 1)."""
    if not q:
        return 1
    return _fold(mode)(q)


def combine(q1: State, q2: State, mode: str) -> State:
    """State after attaching a subtree in state ``q2`` as a new child of ``q1``'s root."""
    return reduce_state(q1 + (st(q2, mode),))


@dataclass
class LimitTable:
    """Exact state counts ``S[n][q]`` and limit counts ``R[n][p]`` for ``R(n)``."""

    mode: str
    n_max: int
    states: list[dict[State, int]] = field(repr=False)
    limits: list[dict[int, int]] = field(repr=False)

    def counts(self, n: int) -> dict[int, int]:
        self._check(n)
        return dict(self.limits[n])

    def total(self, n: int) -> int:
        self._check(n)
        return sum(self.states[n].values())

    def average(self, n: int) -> Fraction:
        row = self.counts(n)
        return Fraction(sum(p * c for p, c in row.items()), sum(row.values()))

    def averages(self) -> list[float]:
        """Float averages for n = 1..n_max."""
        return [float(self.average(n)) for n in range(1, self.n_max + 1)]

    def _check(self, n: int) -> None:
        if not 1 <= n <= self.n_max:
            raise NMaxExceeded(f"n={n} outside table range 1..{self.n_max}")


def r_limit_table(n_max: int, mode: str, guard: int = 5000) -> LimitTable:
    """Count plane trees of every size by reduced root state.

    A tree of ``n >= 2`` nodes splits uniquely into its root with all but the
    last child (``n - m`` nodes, state ``q1``) and the last child's subtree
    (``m`` nodes, limit ``p``).  Its state is ``q1`` with ``p`` added.
    """
    _fold(mode)
    if n_max < 1:
        raise ValueError("n_max must be positive")
    if n_max > guard:
        raise NMaxExceeded(f"n_max={n_max} exceeds guard {guard}")

    index: dict[State, int] = {(): 0}
    state_list: list[State] = [()]
    st_of: list[int] = [1]
    successor: dict[tuple[int, int], int] = {}

    def state_id(q: State) -> int:
        if q not in index:
            index[q] = len(state_list)
            state_list.append(q)
            st_of.append(st(q, mode))
        return index[q]

    def step(i: int, p: int) -> int:
        key = (i, p)
        if key not in successor:
            successor[key] = state_id(reduce_state(state_list[i] + (p,)))
        return successor[key]

    # S[k]: object array over the state ids known when row k was finished
    S: list[np.ndarray] = [np.zeros(0, dtype=object), np.array([1], dtype=object)]
    R: list[dict[int, int]] = [{}, {1: 1}]
    succ: dict[int, list[int]] = {}
    for n in range(2, n_max + 1):
        width = len(S[n - 1])
        by_limit: dict[int, np.ndarray] = {}
        for m in range(1, n):
            rest = S[n - m]
            for p, c2 in R[m].items():
                acc = by_limit.get(p)
                if acc is None:
                    acc = by_limit[p] = np.zeros(width, dtype=object)
                acc[:len(rest)] += rest * c2
        targets = {}
        for p in by_limit:
            table = succ.setdefault(p, [])
            while len(table) < width:
                table.append(step(len(table), p))
            targets[p] = np.asarray(table[:width], dtype=np.intp)
        row = np.zeros(len(state_list), dtype=object)
        for p, acc in by_limit.items():
            np.add.at(row, targets[p], acc)
        S.append(row)
        lim: dict[int, int] = {}
        for j in np.flatnonzero(row):
            p = st_of[j]
            lim[p] = lim.get(p, 0) + row[j]
        R.append(lim)

    states = [{state_list[i]: int(row[i]) for i in np.flatnonzero(row)} for row in S]
    return LimitTable(mode, n_max, states, R)
