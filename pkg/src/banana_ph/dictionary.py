"""Position-ordered dictionaries of critical items.

One dictionary holds the minima, one the maxima.  Backed by a treap keyed by
item position label, which gives O(log n) insert/remove/nearest plus the
split and concatenate the topological operations need.  Position labels may
be renumbered in place by the item list; renumbering preserves order, so the
treap never needs rebalancing for it.
"""

from __future__ import annotations

import random


class _TNode:
    __slots__ = ("item", "prio", "left", "right", "cnt")

    def __init__(self, item, prio):
        self.item = item
        self.prio = prio
        self.left = None
        self.right = None
        self.cnt = 1


def _cnt(node):
    return 0 if node is None else node.cnt


def _pull(node):
    node.cnt = 1 + _cnt(node.left) + _cnt(node.right)
    return node


_prio = random.Random(0xBA17A).random


class CriticalityDictionary:
    def __init__(self):
        self.root = None

    def __len__(self):
        return _cnt(self.root)

    def __iter__(self):
        stack, node = [], self.root
        while stack or node:
            while node:
                stack.append(node)
                node = node.left
            node = stack.pop()
            yield node.item
            node = node.right

    def __contains__(self, item):
        node = self.root
        while node is not None:
            if node.item is item:
                return True
            node = node.left if item.label < node.item.label else node.right
        return False

    # -- core treap operations ----------------------------------------------

    def _split(self, node, label, into_left_if_equal):
        """Split by label; returns (left, right) subtrees."""
        if node is None:
            return None, None
        key = node.item.label
        if key < label or (into_left_if_equal and key == label):
            l, r = self._split(node.right, label, into_left_if_equal)
            node.right = l
            return _pull(node), r
        l, r = self._split(node.left, label, into_left_if_equal)
        node.left = r
        return l, _pull(node)

    def _merge(self, a, b):
        if a is None:
            return b
        if b is None:
            return a
        if a.prio < b.prio:
            a.right = self._merge(a.right, b)
            return _pull(a)
        b.left = self._merge(a, b.left)
        return _pull(b)

    # -- public operations ---------------------------------------------------

    def insert(self, item, counters=None):
        if counters is not None:
            counters.dict_ops += 1
        l, r = self._split(self.root, item.label, True)
        self.root = self._merge(self._merge(l, _TNode(item, _prio())), r)

    def remove(self, item, counters=None):
        if counters is not None:
            counters.dict_ops += 1
        l, r = self._split(self.root, item.label, False)   # item goes right
        lr, rr = self._split(r, item.label, True)          # item goes left
        if lr is None or lr.item is not item or lr.left or lr.right:
            self.root = self._merge(self._merge(l, lr), rr)
            raise KeyError(f"item {item!r} not in dictionary")
        self.root = self._merge(l, rr)

    def discard(self, item, counters=None):
        if item in self:
            self.remove(item, counters)

    def nearest_left(self, label, counters=None):
        """Member with the largest label strictly below the given label."""
        if counters is not None:
            counters.dict_ops += 1
        best, node = None, self.root
        while node is not None:
            if node.item.label < label:
                best = node.item
                node = node.right
            else:
                node = node.left
        return best

    def nearest_right(self, label, counters=None):
        if counters is not None:
            counters.dict_ops += 1
        best, node = None, self.root
        while node is not None:
            if node.item.label > label:
                best = node.item
                node = node.left
            else:
                node = node.right
        return best

    def split_at(self, label, counters=None):
        """Members with label <= given label go left; returns (left, right)."""
        if counters is not None:
            counters.dict_ops += 1
        l, r = self._split(self.root, label, True)
        left, right = CriticalityDictionary(), CriticalityDictionary()
        left.root, right.root = l, r
        self.root = None
        return left, right

    def concat(self, other, counters=None):
        """Append other (all labels must exceed ours); other is consumed."""
        if counters is not None:
            counters.dict_ops += 1
        if self.root is not None and other.root is not None:
            lmax = self.root
            while lmax.right is not None:
                lmax = lmax.right
            rmin = other.root
            while rmin.left is not None:
                rmin = rmin.left
            if lmax.item.label >= rmin.item.label:
                raise ValueError("concat with interleaved positions")
        self.root = self._merge(self.root, other.root)
        other.root = None
        return self


def dict_nearest(dct, from_item, direction, counters=None):
    """Nearest member strictly on the given side of from_item in list order."""
    if direction == "left":
        return dct.nearest_left(from_item.label, counters)
    if direction == "right":
        return dct.nearest_right(from_item.label, counters)
    raise ValueError(direction)
