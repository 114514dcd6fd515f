"""Items and the doubly-linked list they live in.

The list is the ground truth: every real item plus one hook at each end.
Hooks are artificial items that turn the end items into proper extrema; their
values are derived from the two outermost real values and are refreshed
eagerly after any edit that touches them.

Items carry integer position labels so that "is u left of v" is a single
comparison.  Labels are spaced out on build and renumbered locally when an
insertion exhausts a gap.
"""

from __future__ import annotations

import itertools

from .values import ExtValue, neg_key

MINIMUM = "minimum"
MAXIMUM = "maximum"
NON_CRITICAL = "non-critical"
UP_HOOK = "up-hook"
DOWN_HOOK = "down-hook"

LABEL_GAP = 1 << 20

_next_id = itertools.count(1)


class Item:
    __slots__ = (
        "id", "label", "value", "prev", "next", "criticality",
        "up_node", "down_node", "is_hook", "is_dummy", "ku", "kd",
    )

    def __init__(self, value: ExtValue, label=0, is_hook=False, is_dummy=False):
        self.id = next(_next_id)
        self.label = label
        self.prev = None
        self.next = None
        self.criticality = NON_CRITICAL
        self.up_node = None
        self.down_node = None
        self.is_hook = is_hook
        self.is_dummy = is_dummy
        self.set_value(value)

    def set_value(self, value: ExtValue):
        self.value = value
        self.ku = value.key()
        self.kd = neg_key(self.ku)

    def node(self, sign):
        return self.up_node if sign > 0 else self.down_node

    def set_node(self, sign, node):
        if sign > 0:
            self.up_node = node
        else:
            self.down_node = node

    def __repr__(self):
        kind = "hook" if self.is_hook else ("dummy" if self.is_dummy else "item")
        return f"<{kind} #{self.id} {self.value!r}>"


class ItemList:
    """Doubly-linked list of items in interval order, hooks at the ends."""

    def __init__(self):
        self.head = None          # leftmost item (a hook once hooks exist)
        self.tail = None
        self.count = 0            # real items only

    # -- traversal ---------------------------------------------------------

    def __iter__(self):
        it = self.head
        while it is not None:
            yield it
            it = it.next

    def real_items(self):
        return [it for it in self if not it.is_hook]

    def real_values(self):
        return [it.value.real for it in self if not it.is_hook]

    @property
    def left_hook(self):
        return self.head if self.head is not None and self.head.is_hook else None

    @property
    def right_hook(self):
        return self.tail if self.tail is not None and self.tail.is_hook else None

    def first_real(self):
        it = self.head
        while it is not None and it.is_hook:
            it = it.next
        return it

    def last_real(self):
        it = self.tail
        while it is not None and it.is_hook:
            it = it.prev
        return it

    # -- construction ------------------------------------------------------

    @classmethod
    def from_values(cls, values):
        return cls.from_keyed_values([(float(v), None) for v in values])

    @classmethod
    def from_keyed_values(cls, keyed):
        """Build from (real, tie) pairs; tie None means the item's own id."""
        lst = cls()
        prev = None
        for i, (v, tie) in enumerate(keyed):
            it = Item(ExtValue(float(v)))
            it.set_value(ExtValue(float(v), tie=it.id if tie is None else tie))
            it.label = (i + 1) * LABEL_GAP
            it.prev = prev
            if prev is None:
                lst.head = it
            else:
                prev.next = it
            prev = it
        lst.tail = prev
        lst.count = len(keyed)
        return lst

    # -- linking -----------------------------------------------------------

    def link_after(self, anchor, item):
        """Insert item right after anchor (anchor None = front)."""
        if anchor is None:
            item.prev = None
            item.next = self.head
            if self.head is not None:
                self.head.prev = item
            self.head = item
            if self.tail is None:
                self.tail = item
        else:
            item.prev = anchor
            item.next = anchor.next
            anchor.next = item
            if item.next is not None:
                item.next.prev = item
            else:
                self.tail = item
        if not item.is_hook:
            self.count += 1
        self._assign_label(item)

    def unlink(self, item):
        if item.prev is not None:
            item.prev.next = item.next
        else:
            self.head = item.next
        if item.next is not None:
            item.next.prev = item.prev
        else:
            self.tail = item.prev
        item.prev = item.next = None
        if not item.is_hook:
            self.count -= 1

    def _assign_label(self, item):
        lo = item.prev.label if item.prev is not None else None
        hi = item.next.label if item.next is not None else None
        if lo is None and hi is None:
            item.label = LABEL_GAP
            return
        if lo is None:
            item.label = hi - LABEL_GAP
            return
        if hi is None:
            item.label = lo + LABEL_GAP
            return
        mid = (lo + hi) // 2
        if mid != lo and mid != hi:
            item.label = mid
            return
        self._renumber_around(item)

    def _renumber_around(self, item):
        # Gap exhausted: respace a doubling window around item, then retry.
        window = [item]
        left, right = item.prev, item.next
        need = 4
        while True:
            while left is not None and len(window) < need:
                window.insert(0, left)
                left = left.prev
            while right is not None and len(window) < 2 * need:
                window.append(right)
                right = right.next
            lo = left.label if left is not None else window[0].label - len(window) * LABEL_GAP
            hi = right.label if right is not None else window[-1].label + len(window) * LABEL_GAP
            if hi - lo > len(window) + 1:
                step = (hi - lo) // (len(window) + 1)
                lab = lo
                for w in window:
                    lab += step
                    w.label = lab
                return
            need *= 2
            if left is None and right is None:
                step = LABEL_GAP
                lab = 0
                for w in window:
                    lab += step
                    w.label = lab
                return

    def renumber_all(self, base=0):
        lab = base
        for it in self:
            lab += LABEL_GAP
            it.label = lab

    def real_at(self, pos):
        """1-based position among real items."""
        if pos < 1:
            raise IndexError(pos)
        i = 0
        for it in self:
            if it.is_hook:
                continue
            i += 1
            if i == pos:
                return it
        raise IndexError(pos)

    def position_of(self, item):
        i = 0
        for it in self:
            if it.is_hook:
                continue
            i += 1
            if it is item:
                return i
        raise ValueError("item not in list")


def hook_value(end_item, inward_item):
    """Value of the hook beyond end_item: one eps step toward the neighbor."""
    sign = 1 if inward_item.ku > end_item.ku else -1
    return end_item.value.shifted(sign)


def assign_hooks(lst: ItemList):
    """Create or refresh the two hooks; needs at least 2 real items."""
    if lst.count < 2:
        raise ValueError("need at least 2 real items to assign hooks")
    first, last = lst.first_real(), lst.last_real()
    lh = lst.left_hook
    if lh is None:
        lh = Item(hook_value(first, first.next if not first.next.is_hook else first.next), is_hook=True)
        lh.set_value(hook_value(first, first.next))
        lst.link_after(None, lh)
    else:
        lh.set_value(hook_value(first, first.next))
    rh = lst.right_hook
    if rh is None:
        rh = Item(hook_value(last, last.prev), is_hook=True)
        lst.link_after(lst.tail, rh)
        rh.set_value(hook_value(last, last.prev))
    else:
        rh.set_value(hook_value(last, last.prev))
    refresh_criticality(lst, first)
    refresh_criticality(lst, last)
    lh.criticality = UP_HOOK if first.criticality == MINIMUM else DOWN_HOOK
    rh.criticality = UP_HOOK if last.criticality == MINIMUM else DOWN_HOOK
    return lst


def compute_criticality(item):
    """Local criticality of a non-hook item from its two neighbors."""
    p, n = item.prev, item.next
    if p is None or n is None:
        # No hooks yet: ends compare against the single real neighbor.
        other = n if p is None else p
        return MINIMUM if item.ku < other.ku else MAXIMUM
    below_p = item.ku < p.ku
    below_n = item.ku < n.ku
    if below_p and below_n:
        return MINIMUM
    if not below_p and not below_n:
        return MAXIMUM
    return NON_CRITICAL


def refresh_criticality(lst, item):
    item.criticality = compute_criticality(item)
    return item.criticality
