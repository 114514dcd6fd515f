"""Augmented persistence diagrams: points, nesting arrows, extraction, diff.

A point records birth and death values plus the items that span them.  The
essential point pairs the global minimum with the global maximum.  Arrows
encode immediate nesting of windows: for ordinary points they form the merge
tree (rooted at the essential point), for relative points the mirror relation
from the negated map (roots have no arrow).  Points spanned by a hook are
kept internally but flagged, and excluded from default output and from the
symmetric-difference size k.
"""

from __future__ import annotations

ORDINARY = "ordinary"
RELATIVE = "relative"
ESSENTIAL = "essential"

_SUB_RANK = {ORDINARY: 0, RELATIVE: 1, ESSENTIAL: 2}


class DiagramPoint:
    __slots__ = ("birth", "death", "subdiagram", "birth_item", "death_item",
                 "from_hook", "birth_key", "death_key")

    def __init__(self, birth_key, death_key, subdiagram, birth_item, death_item, from_hook):
        self.birth_key = birth_key
        self.death_key = death_key
        self.birth = birth_key[1]
        self.death = death_key[1]
        self.subdiagram = subdiagram
        self.birth_item = birth_item      # item id
        self.death_item = death_item
        self.from_hook = from_hook

    def key(self):
        return (self.subdiagram, self.birth_item, self.death_item,
                self.birth_key, self.death_key)

    def __repr__(self):
        tag = {ORDINARY: "Ord", RELATIVE: "Rel", ESSENTIAL: "Ess"}[self.subdiagram]
        h = " hook" if self.from_hook else ""
        return f"<{tag} ({self.birth}, {self.death}) items ({self.birth_item},{self.death_item}){h}>"


class Arrow:
    __slots__ = ("child", "parent", "tree")

    def __init__(self, child, parent, tree):
        self.child = child        # DiagramPoint
        self.parent = parent      # DiagramPoint
        self.tree = tree          # "up" | "down"

    def key(self):
        return (self.tree, self.child.key(), self.parent.key())

    def __repr__(self):
        return f"<Arrow[{self.tree}] {self.child!r} -> {self.parent!r}>"


class AugmentedPersistenceDiagram:
    def __init__(self, points=None, arrows=None):
        self.points = points or []
        self.arrows = arrows or []

    def canonicalize(self):
        self.points.sort(key=lambda p: (_SUB_RANK[p.subdiagram], p.birth_item))
        index = {id(p): i for i, p in enumerate(self.points)}
        self.arrows.sort(key=lambda a: (index[id(a.child)], index[id(a.parent)]))
        return self

    def filtered(self, include_hooks=False):
        """Drop hook-flagged points (and arrows touching them) unless asked."""
        if include_hooks:
            return self
        pts = [p for p in self.points if not p.from_hook]
        arrs = [a for a in self.arrows
                if not a.child.from_hook and not a.parent.from_hook]
        return AugmentedPersistenceDiagram(pts, arrs).canonicalize()

    def by_subdiagram(self, sub):
        return [p for p in self.points if p.subdiagram == sub]

    def point_keys(self):
        return {p.key() for p in self.points}

    def arrow_keys(self):
        return {a.key() for a in self.arrows}

    def to_document(self, meta=None):
        """Serializable dict: point arrays, eps offsets aside, arrow indices."""
        self.canonicalize()
        doc = {"ordinary": [], "relative": [], "essential": [],
               "ordinary_eps": [], "relative_eps": [], "essential_eps": [],
               "arrows": [], "meta": meta or {}}
        index = {}
        for p in self.points:
            index[id(p)] = len(index)
            doc[p.subdiagram].append([p.birth, p.death, p.birth_item, p.death_item])
            doc[p.subdiagram + "_eps"].append([p.birth_key[3], p.death_key[3]])
        for a in self.arrows:
            doc["arrows"].append([index[id(a.child)], index[id(a.parent)], a.tree])
        return doc

    def __repr__(self):
        o = len(self.by_subdiagram(ORDINARY))
        r = len(self.by_subdiagram(RELATIVE))
        e = len(self.by_subdiagram(ESSENTIAL))
        return f"<APD ord={o} rel={r} ess={e} arrows={len(self.arrows)}>"


def diff(d1, d2, include_hooks=False):
    """Size k of the symmetric difference between two diagrams.

    Points keyed by (subdiagram, spanning items, birth, death); arrows by
    their endpoint keys and tree tag.  Hook-flagged points are excluded by
    default.  Either argument may be a sequence of diagrams, in which case
    their disjoint union is compared (the two sides of a cut count as one
    diagram on two intervals).
    """
    def keysets(d):
        ds = d if isinstance(d, (list, tuple)) else [d]
        pk, ak = set(), set()
        for one in ds:
            f = one.filtered(include_hooks)
            pk |= f.point_keys()
            ak |= f.arrow_keys()
        return pk, ak

    p1, a1 = keysets(d1)
    p2, a2 = keysets(d2)
    return len(p1 ^ p2) + len(a1 ^ a2)


def extract(structure, include_hooks=True):
    """Augmented persistence diagram read off the two banana trees.

    One ordinary point per up-tree banana (the special banana gives the
    essential point), one relative point per down-tree banana except its
    special banana.  Arrows follow trail nesting per tree; the down-tree's
    top-level points have no arrow.
    """
    points = []
    arrows = []

    up = structure.up_tree
    dn = structure.dn_tree

    def is_hooky(*items):
        return any(it is not None and it.is_hook for it in items)

    def walk(tree, tag):
        beta = tree.special_root
        # Essential point only from the up-tree's special banana.
        root_point = None
        if tag == "up":
            gmin = tree.birth(beta)
            in_top, mid_top = beta.in_, beta.mid
            cands = [n for n in (in_top, mid_top) if n is not None and n is not gmin]
            gmax = max(cands, key=lambda n: tree.key(n.item)) if cands else None
            if gmax is not None:
                root_point = DiagramPoint(
                    gmin.item.ku, gmax.item.ku, ESSENTIAL,
                    gmin.item.id, gmax.item.id,
                    is_hooky(gmin.item, gmax.item))
                points.append(root_point)
        stack = [(beta, root_point)]
        while stack:
            b, parent_pt = stack.pop()
            a = tree.birth(b)
            if b is beta:
                pt = root_point
            else:
                if tag == "up":
                    bk, dk = a.item.ku, b.item.ku
                else:
                    bk, dk = a.item.ku, b.item.ku   # relative: birth above death
                pt = DiagramPoint(bk, dk,
                                  ORDINARY if tag == "up" else RELATIVE,
                                  a.item.id, b.item.id,
                                  is_hooky(a.item, b.item))
                points.append(pt)
                if parent_pt is not None:
                    arrows.append(Arrow(pt, parent_pt, tag))
            for first in (a.in_, a.mid):
                x = first
                while x is not b:
                    stack.append((x, pt))
                    x = x.up

        return points

    walk(up, "up")
    walk(dn, "down")
    d = AugmentedPersistenceDiagram(points, arrows).canonicalize()
    if not include_hooks:
        return d.filtered(False)
    return d
