"""Order-statistic multiset over canonical edges.

Edges are fixed-arity vertex tuples; undirected edges are canonicalized
by sorting.  The multiset is a binary search tree keyed by the canonical
tuple with subtree count sums, supporting the rank / select queries the
coder needs for sampling without replacement.
"""

from __future__ import annotations

import random
from array import array
from typing import Dict, Iterable, Tuple

from .ans import SymbolRange
from .errors import BoundsError, GrecError

Edge = Tuple[int, ...]


def canonical_edge(edge: Iterable[int], directed: bool = False) -> Edge:
    e = tuple(edge)
    if len(e) < 2:
        raise BoundsError(f"edge arity must be >= 2, got {len(e)}")
    return e if directed else tuple(sorted(e))


class EdgeMultiset:
    """Counted edge collection with O(log u) rank and select."""

    __slots__ = ("size", "_key", "_pri", "_left", "_right", "_cnt", "_sub",
                 "_root", "_rand")

    def __init__(self, seed: int = 0xED6E):
        self.size = 0
        # keys may be tuples or packed ints, so they live in a plain
        # list; the structural fields are flat arrays for compactness
        self._key = [()]       # index 0 is the nil sentinel
        self._pri = array("d", [0.0])
        self._left = array("q", [0])
        self._right = array("q", [0])
        self._cnt = array("q", [0])
        self._sub = array("q", [0])
        self._root = 0
        self._rand = random.Random(seed).random

    @classmethod
    def from_counts(cls, counts: Dict[Edge, int]) -> "EdgeMultiset":
        """Bulk-build a balanced tree from an edge -> multiplicity map."""
        t = cls()
        items = sorted(counts.items())
        key, pri, left, right, cnt, sub = (
            t._key, t._pri, t._left, t._right, t._cnt, t._sub,
        )
        for e, c in items:
            if c < 0:
                raise BoundsError(f"negative multiplicity for edge {e}")

        def build(lo: int, hi: int) -> int:
            if lo >= hi:
                return 0
            mid = (lo + hi) // 2
            e, c = items[mid]
            idx = len(key)
            key.append(e)
            pri.append(0.0)
            left.append(0)
            right.append(0)
            cnt.append(c)
            sub.append(0)
            left[idx] = build(lo, mid)
            right[idx] = build(mid + 1, hi)
            sub[idx] = c + sub[left[idx]] + sub[right[idx]]
            return idx

        t._root = build(0, len(items))
        t.size = sum(c for _, c in items)
        return t

    def count(self, edge: Edge) -> int:
        key, left, right = self._key, self._left, self._right
        node = self._root
        while node:
            k = key[node]
            if edge < k:
                node = left[node]
            elif edge > k:
                node = right[node]
            else:
                return self._cnt[node]
        return 0

    def symbol_range(self, edge: Edge) -> SymbolRange:
        """Slot range of an edge currently in the multiset."""
        key, left, right, cnt, sub = (
            self._key, self._left, self._right, self._cnt, self._sub,
        )
        acc = 0
        node = self._root
        while node:
            k = key[node]
            if edge < k:
                node = left[node]
            elif edge > k:
                acc += sub[left[node]] + cnt[node]
                node = right[node]
            else:
                c = cnt[node]
                if c < 1:
                    raise GrecError(f"edge {edge} not in multiset")
                return SymbolRange(c, acc + sub[left[node]], self.size)
        raise GrecError(f"edge {edge} not in multiset")

    def find_slot(self, slot: int) -> Tuple[Edge, SymbolRange]:
        """Select by rank: the edge whose slot range covers ``slot``."""
        if not (0 <= slot < self.size):
            raise BoundsError(f"slot {slot} outside [0, {self.size})")
        key, left, right, cnt, sub = (
            self._key, self._left, self._right, self._cnt, self._sub,
        )
        acc = 0
        node = self._root
        while node:
            lo = acc + sub[left[node]]
            if slot < lo:
                node = left[node]
            elif slot < lo + cnt[node]:
                return key[node], SymbolRange(cnt[node], lo, self.size)
            else:
                acc = lo + cnt[node]
                node = right[node]
        raise GrecError("slot walk fell off the tree")  # unreachable

    def pop_slot(self, slot: int) -> Tuple[Edge, SymbolRange]:
        """`find_slot` plus removal of one copy, in a single walk.

        The returned range describes the multiset before the removal.
        """
        if not (0 <= slot < self.size):
            raise BoundsError(f"slot {slot} outside [0, {self.size})")
        key, left, right, cnt, sub = (
            self._key, self._left, self._right, self._cnt, self._sub,
        )
        acc = 0
        path = []
        node = self._root
        while node:
            lo = acc + sub[left[node]]
            if slot < lo:
                path.append(node)
                node = left[node]
            elif slot < lo + cnt[node]:
                r = SymbolRange(cnt[node], lo, self.size)
                cnt[node] -= 1
                sub[node] -= 1
                for p in path:
                    sub[p] -= 1
                self.size -= 1
                return key[node], r
            else:
                acc = lo + cnt[node]
                path.append(node)
                node = right[node]
        raise GrecError("slot walk fell off the tree")  # unreachable

    def push_and_range(self, edge: Edge) -> SymbolRange:
        """Insert one copy and return its range after the insertion."""
        key, left, right, cnt, sub = (
            self._key, self._left, self._right, self._cnt, self._sub,
        )
        acc = 0
        path = []
        node = self._root
        while node:
            k = key[node]
            if edge < k:
                path.append(node)
                node = left[node]
            elif edge > k:
                acc += sub[left[node]] + cnt[node]
                path.append(node)
                node = right[node]
            else:
                c = cnt[node] + 1
                cnt[node] = c
                sub[node] += 1
                for p in path:
                    sub[p] += 1
                self.size += 1
                return SymbolRange(c, acc + sub[left[node]], self.size)
        self._insert_new(edge, path)
        self.size += 1
        return SymbolRange(1, acc, self.size)

    def insert_one(self, edge: Edge) -> None:
        key, left, right, sub = self._key, self._left, self._right, self._sub
        path = []
        node = self._root
        while node:
            path.append(node)
            k = key[node]
            if edge < k:
                node = left[node]
            elif edge > k:
                node = right[node]
            else:
                self._cnt[node] += 1
                for p in path:
                    sub[p] += 1
                self.size += 1
                return
        self._insert_new(edge, path)
        self.size += 1

    def remove_one(self, edge: Edge) -> None:
        """Decrement multiplicity; the node stays even at zero count."""
        key, left, right, sub = self._key, self._left, self._right, self._sub
        path = []
        node = self._root
        while node:
            path.append(node)
            k = key[node]
            if edge < k:
                node = left[node]
            elif edge > k:
                node = right[node]
            else:
                if self._cnt[node] < 1:
                    raise GrecError(f"remove of absent edge {edge}")
                self._cnt[node] -= 1
                for p in path:
                    sub[p] -= 1
                self.size -= 1
                return
        raise GrecError(f"remove of absent edge {edge}")

    def _insert_new(self, edge: Edge, path: list) -> None:
        key, pri, left, right = self._key, self._pri, self._left, self._right
        cnt, sub = self._cnt, self._sub
        idx = len(key)
        key.append(edge)
        pri.append(self._rand())
        left.append(0)
        right.append(0)
        cnt.append(1)
        sub.append(1)
        if not path:
            self._root = idx
            return
        parent = path[-1]
        if edge < key[parent]:
            left[parent] = idx
        else:
            right[parent] = idx
        for p in path:
            sub[p] += 1
        i = len(path) - 1
        child = idx
        while i >= 0 and pri[child] < pri[path[i]]:
            parent = path[i]
            if left[parent] == child:
                left[parent] = right[child]
                right[child] = parent
            else:
                right[parent] = left[child]
                left[child] = parent
            sub[parent] = cnt[parent] + sub[left[parent]] + sub[right[parent]]
            sub[child] = cnt[child] + sub[left[child]] + sub[right[child]]
            if i == 0:
                self._root = child
            else:
                gp = path[i - 1]
                if left[gp] == parent:
                    left[gp] = child
                else:
                    right[gp] = child
            i -= 1

    def items(self) -> Iterable[Tuple[Edge, int]]:
        """Yield (edge, multiplicity) in canonical order, skipping zeros."""
        stack = []
        node = self._root
        while stack or node:
            while node:
                stack.append(node)
                node = self._left[node]
            node = stack.pop()
            if self._cnt[node]:
                yield self._key[node], self._cnt[node]
            node = self._right[node]


class StaticEdgeMultiset:
    """Drain-only multiset over a fixed edge universe.

    An encoder holds the whole multiset before emitting anything, so a
    flat prefix-sum tree over the sorted distinct edges replaces the
    node-based tree; slot ranges come out identical.
    """

    __slots__ = ("size", "_keys", "_cnt", "_tree", "_dim", "_hibit")

    def __init__(self, counts: Dict):
        keys = sorted(counts)
        self._keys = keys
        self._cnt = array("q", (counts[k] for k in keys))
        self.size = sum(self._cnt)
        dim = len(keys)
        tree = array("q", bytes(8 * (dim + 1)))
        for i, c in enumerate(self._cnt, 1):
            tree[i] += c
            j = i + (i & -i)
            if j <= dim:
                tree[j] += tree[i]
        self._tree = tree
        self._dim = dim
        self._hibit = 1 << (dim.bit_length() - 1) if dim else 0

    def pop_slot(self, slot: int):
        if not (0 <= slot < self.size):
            raise BoundsError(f"slot {slot} outside [0, {self.size})")
        tree = self._tree
        dim = self._dim
        # descend: largest index i with prefix(i) <= slot
        i = 0
        rest = slot
        step = self._hibit
        while step:
            j = i + step
            if j <= dim and tree[j] <= rest:
                i = j
                rest -= tree[j]
            step >>= 1
        c = self._cnt[i]
        r = SymbolRange(c, slot - rest, self.size)
        self._cnt[i] = c - 1
        j = i + 1
        while j <= dim:
            tree[j] -= 1
            j += j & -j
        self.size -= 1
        return self._keys[i], r
