"""The maintained structure: item list, two dictionaries, two banana trees."""

from __future__ import annotations

from .counters import CostCounters
from .dictionary import CriticalityDictionary
from .diagram import extract
from .items import (MAXIMUM, MINIMUM, ItemList, assign_hooks,
                    refresh_criticality)
from .construct import build_tree
from .nodes import validate_tree


class BananaStructure:
    """A linear list with its augmented persistence diagram kept current.

    Lists shorter than two items are held as a bare list; the trees and
    dictionaries exist from two items on.
    """

    def __init__(self):
        self.list = ItemList()
        self.minima = CriticalityDictionary()
        self.maxima = CriticalityDictionary()
        self.up_tree = None
        self.dn_tree = None
        self.counters = CostCounters()

    # -- construction --------------------------------------------------------

    @classmethod
    def from_values(cls, values):
        s = cls()
        s.list = ItemList.from_values(values)
        if s.list.count >= 2:
            s._build_trees()
        return s

    @classmethod
    def from_keyed_values(cls, keyed):
        s = cls()
        s.list = ItemList.from_keyed_values(keyed)
        if s.list.count >= 2:
            s._build_trees()
        return s

    def _build_trees(self):
        assign_hooks(self.list)
        for it in self.list.real_items():
            refresh_criticality(self.list, it)
            it.up_node = it.down_node = None
        self.minima = CriticalityDictionary()
        self.maxima = CriticalityDictionary()
        for it in self.list.real_items():
            if it.criticality == MINIMUM:
                self.minima.insert(it)
            elif it.criticality == MAXIMUM:
                self.maxima.insert(it)
        self.up_tree = build_tree(self.list, +1, self.counters)
        self.dn_tree = build_tree(self.list, -1, self.counters)

    def rebuilt(self):
        """Fresh structure over the same values (canonical form).

        Value ties are carried over so tie-broken orderings stay identical.
        """
        keyed = [(it.value.real, it.value.tie) for it in self.list.real_items()]
        return BananaStructure.from_keyed_values(keyed)

    # -- edits -------------------------------------------------------------------

    def change_value(self, pos, new_value):
        from .local_ops import change_value
        item = pos if not isinstance(pos, int) else self.list.real_at(pos)
        return change_value(self, item, new_value)

    def insert(self, after_pos, value):
        from .local_ops import insert_item
        outcome, _item = insert_item(self, after_pos, value)
        return outcome

    def delete(self, pos):
        from .local_ops import delete_item
        item = pos if not isinstance(pos, int) else self.list.real_at(pos)
        return delete_item(self, item)

    # -- queries ---------------------------------------------------------------

    def values(self):
        return self.list.real_values()

    def size(self):
        return self.list.count

    def diagram(self, include_hooks=False):
        if self.up_tree is None:
            raise ValueError("structure too small for a diagram")
        return extract(self, include_hooks=True).filtered(include_hooks)

    def digest(self):
        """Canonical link-for-link form, item ids as names."""
        items = tuple(
            ("hookL" if it is self.list.left_hook else
             "hookR" if it is self.list.right_hook else it.id,
             it.value.key())
            for it in self.list
        )
        return {
            "items": items,
            "minima": tuple(it.id for it in self.minima),
            "maxima": tuple(it.id for it in self.maxima),
            "up": self.up_tree.digest() if self.up_tree else None,
            "down": self.dn_tree.digest() if self.dn_tree else None,
        }

    def equivalent_digest(self, other):
        """Structural equality against another structure over the same values.

        Item ids differ between independently built structures, so compare
        after renaming ids by list position.
        """
        return _renamed(self.digest()) == _renamed(other.digest())

    def validate(self):
        """All invariants; empty list means the structure is consistent."""
        v = []
        if self.list.count < 2:
            if self.up_tree is not None or self.dn_tree is not None:
                v.append(("structure", "size", "", "trees exist below 2 items"))
            return v
        # hooks present with correct values
        from .items import hook_value
        lh, rh = self.list.left_hook, self.list.right_hook
        first, last = self.list.first_real(), self.list.last_real()
        if lh is None or rh is None:
            v.append(("structure", "hooks", "", "missing hooks"))
        else:
            if lh.value.key() != hook_value(first, first.next).key():
                v.append(("structure", "hooks", repr(lh), "left hook value stale"))
            if rh.value.key() != hook_value(last, last.prev).key():
                v.append(("structure", "hooks", repr(rh), "right hook value stale"))
        # criticality tags and dictionary membership
        from .items import compute_criticality, NON_CRITICAL
        expect_min, expect_max = set(), set()
        for it in self.list.real_items():
            want = compute_criticality(it)
            if it.criticality != want:
                v.append(("structure", "criticality", repr(it),
                          f"tag {it.criticality} expected {want}"))
            if want == MINIMUM:
                expect_min.add(it.id)
            elif want == MAXIMUM:
                expect_max.add(it.id)
        got_min = {it.id for it in self.minima}
        got_max = {it.id for it in self.maxima}
        if got_min != expect_min:
            v.append(("structure", "dict-minima", "",
                      f"members {sorted(got_min)} expected {sorted(expect_min)}"))
        if got_max != expect_max:
            v.append(("structure", "dict-maxima", "",
                      f"members {sorted(got_max)} expected {sorted(expect_max)}"))
        labels = [it.label for it in self.list]
        if labels != sorted(labels):
            v.append(("structure", "labels", "", "position labels out of order"))
        v.extend(validate_tree(self.up_tree, self.list))
        v.extend(validate_tree(self.dn_tree, self.list))
        return v


def _renamed(digest):
    """Digest with item ids and value ties renamed to positions."""
    mapping = {}
    tie_map = {}
    pos = 0
    for name, key in digest["items"]:
        if isinstance(name, int):
            pos += 1
            mapping[name] = pos
            tie_map.setdefault(key[2], pos)

    def rn(x):
        return mapping.get(x, x) if isinstance(x, int) else x

    def rn_key(key):
        return (key[0], key[1], tie_map.get(key[2], key[2]), key[3])

    def rn_tree(tree_digest):
        if tree_digest is None:
            return None
        return {rn(k): tuple(rn(e) for e in row) for k, row in tree_digest.items()}

    return {
        "items": tuple((rn(name), rn_key(key)) for name, key in digest["items"]),
        "minima": tuple(sorted(rn(i) for i in digest["minima"])),
        "maxima": tuple(sorted(rn(i) for i in digest["maxima"])),
        "up": rn_tree(digest["up"]),
        "down": rn_tree(digest["down"]),
    }
