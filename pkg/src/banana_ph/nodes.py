"""Banana tree nodes, link discipline, traversals, and invariant validation.

One tree stores the extrema of the signed map (up-tree: of f, down-tree: of
-f; all value comparisons in the down-tree are negated).  Leaves are minima
of the signed map, internal nodes are maxima, plus one special root above
everything.  Each banana is the pair of trails connecting a minimum to its
paired maximum.

Link slots (kind-dependent, matching the six-pointer discipline):

* leaf ``a``:      in_/mid = first node up each trail (the banana's upper end
                   when the trail is empty); low = a itself; dth = upper end.
* internal ``q``:  in_/mid = topmost interior node of each trail of the
                   banana below q (the lower-end leaf when empty);
                   up/dn = neighbors along the trail q is interior to;
                   low = lower end of the banana q is interior to.
* special root:    like an internal node without up/dn/low.

``in_`` is the trail on the lower end's side of the upper end (the left trail
when the lower end lies left of the upper end), ``mid`` the other.
"""

from __future__ import annotations

from .counters import CostCounters
from .items import MAXIMUM, MINIMUM

LEAF = "leaf"
INTERNAL = "internal"
SPECIAL = "special-root"

POS_INF_LABEL = float("inf")
NEG_INF_LABEL = float("-inf")


class Node:
    __slots__ = ("item", "kind", "in_", "mid", "up", "dn", "low", "dth",
                 "on_left_spine", "on_right_spine")

    def __init__(self, item, kind):
        self.item = item
        self.kind = kind
        self.in_ = None
        self.mid = None
        self.up = None
        self.dn = None
        self.low = None
        self.dth = None
        self.on_left_spine = False
        self.on_right_spine = False

    def on_spine(self):
        return self.kind == SPECIAL or self.on_left_spine or self.on_right_spine

    def __repr__(self):
        if self.kind == SPECIAL:
            return "<beta>"
        return f"<{self.kind} {self.item!r}>"


class BananaTree:
    """Up-tree (sign +1) or down-tree (sign -1) over one item list."""

    def __init__(self, sign, counters=None):
        self.sign = sign
        self.special_root = Node(None, SPECIAL)
        self.special_root.on_left_spine = True
        self.special_root.on_right_spine = True
        self.beta_low = False      # True: special root placed at -infinity
        self.beta_eps = 0          # tie-break between two special roots
        self.counters = counters if counters is not None else CostCounters()

    # -- ordering ------------------------------------------------------------

    def key(self, item):
        return item.ku if self.sign > 0 else item.kd

    def nkey(self, node):
        if node.kind == SPECIAL:
            return (2, 0.0, 0, self.beta_eps)
        return self.key(node.item)

    def label(self, node):
        if node.kind == SPECIAL:
            return NEG_INF_LABEL if self.beta_low else POS_INF_LABEL
        return node.item.label

    def left_of(self, u, v):
        return self.label(u) < self.label(v)

    # -- basic structure -----------------------------------------------------

    def birth(self, q):
        """Lower end of the banana whose upper end is q."""
        if q.kind == LEAF:
            raise ValueError("birth of a leaf")
        return q.in_.low

    def is_upper_end(self, q, x):
        """True if x is the upper end reached from interior node chains."""
        return x is q

    def trail_tops(self, b):
        """(left_top, right_top) interior tops of b's banana; None if empty."""
        a = self.birth(b)
        if self.label(a) < self.label(b):
            lt, rt = b.in_, b.mid
        else:
            lt, rt = b.mid, b.in_
        return (None if lt is a else lt), (None if rt is a else rt)

    def ls_top(self, b):
        return self.trail_tops(b)[0]

    def rs_top(self, b):
        return self.trail_tops(b)[1]

    # -- whole-tree traversal --------------------------------------------------

    def bananas(self):
        """Yield (lower end, upper end) of every banana, top-down."""
        stack = [self.special_root]
        while stack:
            b = stack.pop()
            a = self.birth(b)
            yield a, b
            for first in (b.in_, b.mid):
                x = first
                while x is not a:
                    stack.append(x)
                    x = x.dn

    def nodes(self):
        for a, b in self.bananas():
            yield b
            yield a

    def internal_nodes(self):
        for a, b in self.bananas():
            if b.kind != SPECIAL:
                yield b

    def leaves(self):
        for a, b in self.bananas():
            yield a

    def string(self):
        """Items in interval order; maxima listed at the mid-trail end."""
        out = []
        stack = [("banana", self.special_root)]
        while stack:
            op, x = stack.pop()
            if op == "item":
                out.append(x)
                continue
            b = x
            a = self.birth(b)
            b_left = self.left_of(b, a)
            work = []
            if b_left and b.kind != SPECIAL:
                work.append(("item", b.item))
            lt, rt = self.trail_tops(b)
            chain = []
            y = lt
            while y is not None:
                chain.append(y)
                y = y.dn if y.dn is not a else None
            for y in chain:                    # top-down the left trail
                work.append(("banana", y))
            work.append(("item", a.item))
            chain = []
            y = rt
            while y is not None:
                chain.append(y)
                y = y.dn if y.dn is not a else None
            for y in reversed(chain):          # bottom-up the right trail
                work.append(("banana", y))
            if not b_left and b.kind != SPECIAL:
                work.append(("item", b.item))
            stack.extend(reversed(work))
        return out

    # -- spine ---------------------------------------------------------------

    def recompute_spine(self):
        """Recompute both spine labelings from scratch."""
        for n in self.nodes():
            n.on_left_spine = n.on_right_spine = False
        self.special_root.on_left_spine = True
        self.special_root.on_right_spine = True
        b = self.special_root
        t = self.ls_top(b)
        while t is not None:
            t.on_left_spine = True
            b = t
            t = self.ls_top(b)
        b = self.special_root
        t = self.rs_top(b)
        while t is not None:
            t.on_right_spine = True
            b = t
            t = self.rs_top(b)

    def refresh_spine_at(self, nodes):
        """Re-derive spine flags for the given nodes and cascade real changes."""
        work = [n for n in nodes if n is not None and n.kind == INTERNAL]
        seen = set()
        while work:
            n = work.pop()
            if id(n) in seen:
                continue
            seen.add(id(n))
            up_end = n.low.dth if n.low is not None else None
            if up_end is None:
                continue
            ls = bool(up_end.kind == SPECIAL or up_end.on_left_spine) and \
                self.ls_top(up_end) is n
            rs = bool(up_end.kind == SPECIAL or up_end.on_right_spine) and \
                self.rs_top(up_end) is n
            if ls != n.on_left_spine or rs != n.on_right_spine:
                n.on_left_spine, n.on_right_spine = ls, rs
                self.counters.visit()
                for child in (self.ls_top(n), self.rs_top(n)):
                    if child is not None:
                        seen.discard(id(child))
                        work.append(child)

    # -- debug dump ------------------------------------------------------------

    def dump(self):
        """Deterministic text rendering in string order, for golden tests."""
        def name(n):
            if n is None:
                return "-"
            if n.kind == SPECIAL:
                return "beta"
            it = n.item
            if it.is_hook:
                return "hookL" if it.prev is None else "hookR"
            if it.is_dummy:
                return "alpha"
            return f"i{it.id}"

        nodes_in_order = []
        emitted = set()
        for item in self.string():
            n = item.up_node if self.sign > 0 else item.down_node
            if n is not None and id(n) not in emitted:
                emitted.add(id(n))
                nodes_in_order.append(n)
        nodes_in_order.append(self.special_root)
        lines = []
        for n in nodes_in_order:
            spine = ("L" if n.on_left_spine else "") + ("R" if n.on_right_spine else "")
            lines.append(
                f"{name(n)} kind={n.kind} in={name(n.in_)} mid={name(n.mid)} "
                f"up={name(n.up)} dn={name(n.dn)} low={name(n.low)} "
                f"dth={name(n.dth)} spine={spine or '-'}"
            )
        return "\n".join(lines)

    # -- canonical form ----------------------------------------------------------

    def digest(self):
        """Link-for-link canonical form keyed by stable item names."""
        def name(n):
            if n is None:
                return None
            if n.kind == SPECIAL:
                return "beta"
            it = n.item
            if it.is_hook:
                return "hookL" if it.prev is None else "hookR"
            if it.is_dummy:
                return "alpha"
            return it.id

        d = {}
        for n in self.nodes():
            d[name(n)] = (n.kind, name(n.in_), name(n.mid), name(n.up),
                          name(n.dn), name(n.low), name(n.dth),
                          n.on_left_spine, n.on_right_spine)
        return d


def validate_tree(tree, lst):
    """All invariant checks for one tree; returns a list of violations."""
    v = []
    sign_name = "up" if tree.sign > 0 else "down"

    def bad(node, inv, msg=""):
        v.append((sign_name, inv, repr(node), msg))

    # expected critical items of the signed map
    expected = {}
    if lst.count >= 2:
        from .construct import signed_critical_sequence
        for item, is_max in signed_critical_sequence(lst, tree.sign):
            expected[item.id] = is_max

    seen = {}
    beta = tree.special_root
    if beta.up is not None or beta.dn is not None:
        bad(beta, "special-root", "special root has trail neighbors")

    for a, b in tree.bananas():
        if a.kind != LEAF:
            bad(a, "kind", "lower end of a banana is not a leaf")
            continue
        if b.in_.low is not b.mid.low:
            bad(b, "birth", "Low(In) != Low(Mid)")
        if a.low is not a:
            bad(a, "low", "leaf low must be itself")
        if a.dth is not b:
            bad(a, "dth", "leaf dth must be its banana's upper end")
        # walk both trails: values increase upward, positions monotone
        a_left = tree.left_of(a, b)
        for slot in ("in_", "mid"):
            top = getattr(b, slot)
            chain = []
            x = top
            guard = 0
            while x is not a:
                chain.append(x)
                if x.kind != INTERNAL:
                    bad(x, "kind", "trail interior not internal")
                    break
                x = x.dn
                guard += 1
                if guard > 10_000_000:
                    bad(b, "trail", "unterminated trail")
                    break
            # chain is top..bottom
            prev = b
            for x in chain:
                if x.up is not prev:
                    bad(x, "link", "up pointer does not match trail")
                if not tree.nkey(x) < tree.nkey(prev):
                    bad(x, "III-value", "values not increasing along trail")
                if x.low is not a:
                    bad(x, "low", "interior low must be banana's lower end")
                seen[id(x)] = x
                prev = x
            bottom = chain[-1] if chain else b
            if getattr(a, slot) is not bottom:
                bad(a, "link", f"leaf {slot} does not meet the trail bottom")
            # III.1 / III.2 positions: in-trail heads away from the upper end
            # on the lower end's side; all trail nodes sit between properly.
            is_in = slot == "in_"
            on_lower_side = is_in  # in-trail is the trail on a's side of b
            want_between = not on_lower_side
            for x in chain:
                if want_between:
                    ok = (tree.left_of(a, x) and tree.left_of(x, b)) if a_left \
                        else (tree.left_of(b, x) and tree.left_of(x, a))
                else:
                    ok = tree.left_of(x, a) if a_left else tree.left_of(a, x)
                if not ok:
                    bad(x, "III-position", f"node out of place on {slot} trail")
            # positions strictly monotone along the trail (chain is top-down:
            # for a left of b, in-interiors move right going down, mid-
            # interiors move left; mirrored otherwise)
            seqp = [tree.label(x) for x in chain]
            increasing = all(seqp[i] < seqp[i + 1] for i in range(len(seqp) - 1))
            decreasing = all(seqp[i] > seqp[i + 1] for i in range(len(seqp) - 1))
            mono = (increasing if is_in else decreasing) if a_left \
                else (decreasing if is_in else increasing)
            if not mono:
                bad(b, "III-position", f"{slot} trail positions not monotone")
        seen[id(a)] = a
        seen[id(b)] = b
        # A-II
        if a.dth.kind != SPECIAL:
            outer_low = a.dth.low
            if outer_low is not None and not tree.nkey(a) > tree.nkey(outer_low):
                bad(a, "A-II", "leaf not above the low of its death's banana")
        # A-III on interior nodes handled via trail walk (values) + below

    # A-III side conditions and A-I via subtree ranges.
    # contents[b] = label range of b's banana contents (lower end, trail
    # interiors and their full subtrees), excluding b itself.
    contents = {}
    order = list(tree.bananas())
    for a, b in reversed(order):      # bottom-up
        lo = hi = tree.label(a)
        for first in (b.in_, b.mid):
            x = first
            while x is not a:
                clo, chi = contents[id(x)]
                lo = min(lo, clo, tree.label(x))
                hi = max(hi, chi, tree.label(x))
                x = x.dn
        contents[id(b)] = (lo, hi)

    for a, b in order:
        for slot in ("in_", "mid"):
            x = getattr(b, slot)
            chain = []
            while x is not a:
                chain.append(x)
                x = x.dn
            # descendant ranges along the trail, bottom-up
            desc = {}
            acc = (tree.label(a), tree.label(a))
            for x in reversed(chain):
                clo, chi = contents[id(x)]
                acc = (min(acc[0], clo, tree.label(x)),
                       max(acc[1], chi, tree.label(x)))
                desc[id(x)] = acc
            for i, x in enumerate(chain):
                xl = tree.label(x)
                clo, chi = contents[id(x)]
                dn_node = x.dn
                if dn_node is a:
                    dlo = dhi = tree.label(a)
                else:
                    dlo, dhi = desc[id(dn_node)]
                if tree.label(tree.birth(x)) < xl:
                    if chi > xl:
                        bad(x, "A-I", "banana subtree crosses node (birth left)")
                    if dlo < xl:
                        bad(x, "A-I", "dn descendants on wrong side (birth left)")
                else:
                    if clo < xl:
                        bad(x, "A-I", "banana subtree crosses node (birth right)")
                    if dhi > xl:
                        bad(x, "A-I", "dn descendants on wrong side (birth right)")
                up_node = x.up
                if not tree.nkey(up_node) > tree.nkey(x):
                    bad(x, "A-III", "up not above")
                if not (dn_node is a or tree.nkey(dn_node) < tree.nkey(x)):
                    bad(x, "A-III", "dn not below")
                if up_node.in_ is x:
                    ok = (tree.left_of(up_node, x) and tree.left_of(dn_node, x)) or \
                         (tree.left_of(x, up_node) and tree.left_of(x, dn_node))
                    if not ok:
                        bad(x, "A-III", "in-top side condition violated")
                else:
                    ok = (tree.left_of(up_node, x) and tree.left_of(x, dn_node)) or \
                         (tree.left_of(dn_node, x) and tree.left_of(x, up_node))
                    if not ok:
                        bad(x, "A-III", "interior side condition violated")

    # item <-> node consistency and coverage
    count = 0
    for n in seen.values():
        count += 1
        if n.kind == SPECIAL:
            continue
        node_back = n.item.up_node if tree.sign > 0 else n.item.down_node
        if node_back is not n:
            bad(n, "item-link", "item does not point back at node")
        if n.item.id not in expected:
            bad(n, "membership", "node for a non-critical item")
        else:
            want_max = expected[n.item.id]
            if want_max != (n.kind == INTERNAL):
                bad(n, "membership", "leaf/internal does not match criticality")
    if expected and count != len(expected) + 1:
        v.append((sign_name, "count",
                  f"{count - 1} nodes for {len(expected)} critical items", ""))

    # spine labels
    saved = [(n, n.on_left_spine, n.on_right_spine) for n in tree.nodes()]
    tree.recompute_spine()
    for n, ls, rs in saved:
        if (n.on_left_spine, n.on_right_spine) != (ls, rs):
            bad(n, "spine", f"stored {ls, rs} recomputed {n.on_left_spine, n.on_right_spine}")
    for n, ls, rs in saved:
        n.on_left_spine, n.on_right_spine = ls, rs
    return v
