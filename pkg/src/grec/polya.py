"""Urn-style conditional distribution over vertices.

A vertex's weight is its current degree plus a global integer bias, so
the distribution over ``[1..n]`` at any moment has integer total
``n*beta + sum(degrees)``.  The table stores only vertices that have been
touched, in a binary search tree keyed by vertex id with subtree degree
sums; the base weight ``beta`` of untouched vertices is carried
analytically, so memory never scales with ``n``.
"""

from __future__ import annotations

import random
from array import array
from typing import Dict, Iterable, Tuple

from .ans import SymbolRange
from .errors import BoundsError, GrecError


class DegreeWeightTable:
    """Degree-plus-bias weights with prefix-sum and inverse-CDF queries.

    All queries and updates cost O(log u) for u touched vertices.  A
    vertex whose degree returns to zero keeps its (weightless beyond
    ``beta``) node, so the tree only grows with distinct touched
    vertices.
    """

    __slots__ = (
        "n", "beta", "degree_sum",
        "_key", "_pri", "_left", "_right", "_deg", "_sub", "_root", "_rand",
    )

    def __init__(self, n: int, beta: int = 1, seed: int = 0x5EED):
        if n < 1:
            raise BoundsError(f"need n >= 1, got {n}")
        if beta < 1:
            raise BoundsError(f"need integer beta >= 1, got {beta}")
        self.n = n
        self.beta = beta
        self.degree_sum = 0
        # index 0 is the nil sentinel; flat arrays keep the node pool
        # compact, which matters once millions of vertices are touched
        self._key = array("q", [0])
        self._pri = array("d", [0.0])
        self._left = array("q", [0])
        self._right = array("q", [0])
        self._deg = array("q", [0])
        self._sub = array("q", [0])
        self._root = 0
        self._rand = random.Random(seed).random

    @classmethod
    def from_degrees(
        cls, n: int, degrees: Dict[int, int], beta: int = 1
    ) -> "DegreeWeightTable":
        """Bulk-build a balanced tree from a vertex -> degree mapping."""
        t = cls(n, beta)
        items = sorted(degrees.items())
        for v, d in items:
            if not (1 <= v <= n):
                raise BoundsError(f"vertex {v} outside [1, {n}]")
            if d < 0:
                raise BoundsError(f"negative degree for vertex {v}")
        key, pri, left, right, deg, sub = (
            t._key, t._pri, t._left, t._right, t._deg, t._sub,
        )

        def build(lo: int, hi: int) -> int:
            if lo >= hi:
                return 0
            mid = (lo + hi) // 2
            v, d = items[mid]
            idx = len(key)
            key.append(v)
            pri.append(0.0)
            left.append(0)
            right.append(0)
            deg.append(d)
            sub.append(0)
            left[idx] = build(lo, mid)
            right[idx] = build(mid + 1, hi)
            sub[idx] = d + sub[left[idx]] + sub[right[idx]]
            return idx

        t._root = build(0, len(items))
        t.degree_sum = sum(d for _, d in items)
        return t

    def total(self) -> int:
        return self.n * self.beta + self.degree_sum

    def degree(self, v: int) -> int:
        key, left, right = self._key, self._left, self._right
        node = self._root
        while node:
            k = key[node]
            if v < k:
                node = left[node]
            elif v > k:
                node = right[node]
            else:
                return self._deg[node]
        return 0

    def cum_weight_below(self, v: int) -> int:
        """Total weight of all vertices with id < v."""
        if not (1 <= v <= self.n + 1):
            raise BoundsError(f"vertex {v} outside [1, {self.n + 1}]")
        key, left, right, deg, sub = (
            self._key, self._left, self._right, self._deg, self._sub,
        )
        acc = 0
        node = self._root
        while node:
            k = key[node]
            if v <= k:
                node = left[node]
            else:
                acc += sub[left[node]] + deg[node]
                node = right[node]
        return (v - 1) * self.beta + acc

    def symbol_range(self, v: int) -> SymbolRange:
        """Slot range of vertex v under the current weights."""
        if not (1 <= v <= self.n):
            raise BoundsError(f"vertex {v} outside [1, {self.n}]")
        key, left, right, deg, sub = (
            self._key, self._left, self._right, self._deg, self._sub,
        )
        acc = 0
        d = 0
        node = self._root
        while node:
            k = key[node]
            if v < k:
                node = left[node]
            elif v > k:
                acc += sub[left[node]] + deg[node]
                node = right[node]
            else:
                acc += sub[left[node]]
                d = deg[node]
                break
        beta = self.beta
        return SymbolRange(d + beta, (v - 1) * beta + acc, self.total())

    def find_slot(self, slot: int) -> Tuple[int, SymbolRange]:
        """Inverse CDF: the unique vertex whose range covers ``slot``."""
        total = self.total()
        if not (0 <= slot < total):
            raise BoundsError(f"slot {slot} outside [0, {total})")
        key, left, right, deg, sub = (
            self._key, self._left, self._right, self._deg, self._sub,
        )
        beta = self.beta
        base = 0        # degree mass of touched vertices left of the subtree
        node = self._root
        while node:
            k = key[node]
            cum = (k - 1) * beta + base + sub[left[node]]
            if slot < cum:
                node = left[node]
            elif slot < cum + beta + deg[node]:
                return k, SymbolRange(beta + deg[node], cum, total)
            else:
                base += sub[left[node]] + deg[node]
                node = right[node]
        # fell into a gap of untouched vertices
        v = (slot - base) // beta + 1
        return v, SymbolRange(beta, (v - 1) * beta + base, total)

    def remove_and_range(self, v: int) -> SymbolRange:
        """Decrement d(v) and return its slot range after the decrement.

        One walk instead of a `remove` followed by `symbol_range`; the
        range of v is unaffected by v's own weight change.
        """
        if not (1 <= v <= self.n):
            raise BoundsError(f"vertex {v} outside [1, {self.n}]")
        key, left, right, deg, sub = (
            self._key, self._left, self._right, self._deg, self._sub,
        )
        acc = 0
        path = []
        node = self._root
        while node:
            k = key[node]
            if v < k:
                path.append(node)
                node = left[node]
            elif v > k:
                acc += sub[left[node]] + deg[node]
                path.append(node)
                node = right[node]
            else:
                d = deg[node]
                if d < 1:
                    raise GrecError(f"remove of zero-degree vertex {v}")
                deg[node] = d - 1
                sub[node] -= 1
                for p in path:
                    sub[p] -= 1
                self.degree_sum -= 1
                beta = self.beta
                return SymbolRange(
                    d - 1 + beta,
                    (v - 1) * beta + acc + sub[left[node]],
                    self.total(),
                )
        raise GrecError(f"remove of untouched vertex {v}")

    def pull_slot(self, slot: int) -> Tuple[int, SymbolRange]:
        """`find_slot` plus an increment of the found vertex, one walk.

        The returned range describes the weights before the increment.
        """
        total = self.total()
        if not (0 <= slot < total):
            raise BoundsError(f"slot {slot} outside [0, {total})")
        key, left, right, deg, sub = (
            self._key, self._left, self._right, self._deg, self._sub,
        )
        beta = self.beta
        base = 0
        path = []
        node = self._root
        while node:
            k = key[node]
            cum = (k - 1) * beta + base + sub[left[node]]
            if slot < cum:
                path.append(node)
                node = left[node]
            elif slot < cum + beta + deg[node]:
                r = SymbolRange(beta + deg[node], cum, total)
                deg[node] += 1
                sub[node] += 1
                for p in path:
                    sub[p] += 1
                self.degree_sum += 1
                return k, r
            else:
                base += sub[left[node]] + deg[node]
                path.append(node)
                node = right[node]
        v = (slot - base) // beta + 1
        r = SymbolRange(beta, (v - 1) * beta + base, total)
        self._insert_new(v, path)
        self.degree_sum += 1
        return v, r

    def add(self, v: int) -> None:
        """Increment d(v); touches (inserts) the vertex if needed."""
        if not (1 <= v <= self.n):
            raise BoundsError(f"vertex {v} outside [1, {self.n}]")
        key, left, right, sub = self._key, self._left, self._right, self._sub
        path = []
        node = self._root
        while node:
            path.append(node)
            k = key[node]
            if v < k:
                node = left[node]
            elif v > k:
                node = right[node]
            else:
                self._deg[node] += 1
                for p in path:
                    sub[p] += 1
                self.degree_sum += 1
                return
        self._insert_new(v, path)
        self.degree_sum += 1

    def remove(self, v: int) -> None:
        """Decrement d(v); requires d(v) >= 1 (coder logic error if not)."""
        key, left, right, sub = self._key, self._left, self._right, self._sub
        path = []
        node = self._root
        while node:
            path.append(node)
            k = key[node]
            if v < k:
                node = left[node]
            elif v > k:
                node = right[node]
            else:
                if self._deg[node] < 1:
                    raise GrecError(f"remove of zero-degree vertex {v}")
                self._deg[node] -= 1
                for p in path:
                    sub[p] -= 1
                self.degree_sum -= 1
                return
        raise GrecError(f"remove of untouched vertex {v}")

    def _insert_new(self, v: int, path: list) -> None:
        # fresh node with degree 1, then rotate up by random priority
        key, pri, left, right = self._key, self._pri, self._left, self._right
        deg, sub = self._deg, self._sub
        idx = len(key)
        key.append(v)
        pri.append(self._rand())
        left.append(0)
        right.append(0)
        deg.append(1)
        sub.append(1)
        if not path:
            self._root = idx
            return
        parent = path[-1]
        if v < key[parent]:
            left[parent] = idx
        else:
            right[parent] = idx
        for p in path:
            sub[p] += 1
        # restore heap order on priorities
        i = len(path) - 1
        child = idx
        while i >= 0 and pri[child] < pri[path[i]]:
            parent = path[i]
            if left[parent] == child:
                # rotate right
                left[parent] = right[child]
                right[child] = parent
            else:
                # rotate left
                right[parent] = left[child]
                left[child] = parent
            sub[parent] = deg[parent] + sub[left[parent]] + sub[right[parent]]
            sub[child] = deg[child] + sub[left[child]] + sub[right[child]]
            if i == 0:
                self._root = child
            else:
                gp = path[i - 1]
                if left[gp] == parent:
                    left[gp] = child
                else:
                    right[gp] = child
            i -= 1

    def touched(self) -> Iterable[Tuple[int, int]]:
        """Yield (vertex, degree) for touched vertices in id order."""
        stack = []
        node = self._root
        while stack or node:
            while node:
                stack.append(node)
                node = self._left[node]
            node = stack.pop()
            if self._deg[node]:
                yield self._key[node], self._deg[node]
            node = self._right[node]


class StaticDegreeWeightTable:
    """Drain-only variant over a fixed vertex set.

    An encoder knows every touched vertex up front and only ever
    decrements, so a flat prefix-sum tree over the sorted vertex ids
    beats the node-based table; it produces identical slot ranges.
    """

    __slots__ = ("n", "beta", "degree_sum", "_ids", "_rank", "_deg",
                 "_tree", "_size")

    def __init__(self, n: int, degrees: Dict[int, int], beta: int = 1):
        if n < 1:
            raise BoundsError(f"need n >= 1, got {n}")
        if beta < 1:
            raise BoundsError(f"need integer beta >= 1, got {beta}")
        self.n = n
        self.beta = beta
        ids = sorted(v for v, d in degrees.items() if d)
        if ids and not (1 <= ids[0] and ids[-1] <= n):
            raise BoundsError("vertex outside [1, n]")
        self._ids = ids
        self._rank = {v: i for i, v in enumerate(ids)}
        self._deg = array("q", (degrees[v] for v in ids))
        self.degree_sum = sum(self._deg)
        size = len(ids)
        tree = array("q", bytes(8 * (size + 1)))
        for i, d in enumerate(self._deg, 1):
            tree[i] += d
            j = i + (i & -i)
            if j <= size:
                tree[j] += tree[i]
        self._tree = tree
        self._size = size

    def total(self) -> int:
        return self.n * self.beta + self.degree_sum

    def remove_and_range(self, v: int) -> SymbolRange:
        i = self._rank.get(v)
        if i is None or self._deg[i] < 1:
            raise GrecError(f"remove of zero-degree vertex {v}")
        tree = self._tree
        acc = 0
        j = i
        while j > 0:
            acc += tree[j]
            j -= j & -j
        j = i + 1
        size = self._size
        while j <= size:
            tree[j] -= 1
            j += j & -j
        d = self._deg[i] - 1
        self._deg[i] = d
        self.degree_sum -= 1
        beta = self.beta
        return SymbolRange(d + beta, (v - 1) * beta + acc, self.total())


