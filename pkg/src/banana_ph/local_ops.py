"""Value adjustment, insertion and deletion, and the primitive moves.

A value change follows the straight-line homotopy between the old and new
value.  The stored value jumps to the target up front; the structure is then
repaired by firing primitives in crossing order, which the trees expose
directly: the next maximum above (for a rising maximum), the largest of the
three nodes below (for a falling one), and the coupled twin in the other
tree.  Interchanges of maxima in one tree are always performed together with
the interchange of the same two items as minima of the other tree, which is
a no-op there unless the pairing actually changes.

All trail surgery is slot-role based (in_/mid/up/dn) and therefore works
unchanged for both trees and both left/right mirror cases.
"""

from __future__ import annotations

from .counters import CostCounters
from .diagram import diff, extract
from .items import (MAXIMUM, MINIMUM, NON_CRITICAL, Item, assign_hooks,
                    hook_value, refresh_criticality)
from .nodes import INTERNAL, LEAF, SPECIAL, Node
from .values import ExtValue


class EditOutcome:
    __slots__ = ("k", "k_prime", "counters", "primitives")

    def __init__(self, k=0, k_prime=0, counters=None, primitives=None):
        self.k = k
        self.k_prime = k_prime
        self.counters = counters
        self.primitives = primitives or []

    def __repr__(self):
        return (f"EditOutcome(k={self.k}, k'={self.k_prime}, "
                f"primitives={self.primitives})")


# -- low-level trail surgery --------------------------------------------------


def _down_slot_set(above, x, new):
    """Redirect above's pointer that runs down the trail to x."""
    if above.in_ is x:
        above.in_ = new
    elif above.mid is x:
        above.mid = new
    else:
        assert above.dn is x, "above does not point at x"
        above.dn = new


def splice_out(tree, x):
    """Remove interior node x from the trail it sits on."""
    above, below = x.up, x.dn
    _down_slot_set(above, x, below)
    if below.kind == INTERNAL:
        below.up = above
    else:
        if below.in_ is x:
            below.in_ = above
        if below.mid is x:
            below.mid = above
    x.up = x.dn = None


def splice_below(tree, upper, slot, new):
    """Insert new directly below `upper` as the top of its `slot` trail."""
    old = getattr(upper, slot)
    setattr(upper, slot, new)
    new.up = upper
    new.dn = old
    if old.kind == INTERNAL:
        old.up = new
    else:
        if getattr(old, slot) is upper:
            setattr(old, slot, new)


def splice_above_leaf(tree, leaf, slot, new):
    """Insert new directly above `leaf` at the bottom of its `slot` trail."""
    old = getattr(leaf, slot)
    setattr(leaf, slot, new)
    new.dn = leaf
    new.up = old
    if old.kind == INTERNAL and old.dn is leaf:
        old.dn = new
    else:
        # trail was empty: old is the upper end whose slot held the leaf
        setattr(old, slot, new)


def _leaf_trail_slot(tree, leaf, toward_label):
    """Which of the leaf's trails runs toward the given position.

    Mid-trail interiors lie between the leaf and its death, in-trail
    interiors on the other side of the leaf.
    """
    dth_right = tree.label(leaf.dth) > tree.label(leaf)
    q_right = toward_label > tree.label(leaf)
    return "mid" if q_right == dth_right else "in_"


def _relabel(tree, node, new_item):
    old = node.item
    node.item = new_item
    new_item.set_node(tree.sign, node)
    if old is not None and old.node(tree.sign) is node:
        old.set_node(tree.sign, None)


def _drop_node(tree, node):
    if node.item is not None and node.item.node(tree.sign) is node:
        node.item.set_node(tree.sign, None)
    node.item = None
    node.in_ = node.mid = node.up = node.dn = node.low = node.dth = None


# -- primitives on one tree ---------------------------------------------------


def max_interchange(tree, j, q):
    """Rotate j above q = Up(j); values already reflect f(j) > f(q)."""
    cnt = tree.counters
    cnt.interchanges_max += 1
    cnt.visit(2)
    assert j.up is q, "max interchange requires q = Up(j)"
    i = tree.birth(j)
    p = tree.birth(q)

    if q.in_ is j or q.mid is j:
        slot = "in_" if q.in_ is j else "mid"
        if slot == "in_":
            # pairs preserved: j pops out and lands directly above q
            splice_out(tree, j)
            up_q = q.up
            _down_slot_set(up_q, q, j)
            j.up = up_q
            j.dn = q
            q.up = j
            j.low = q.low
        else:
            # pairs swap to (i, q), (p, j); j takes q's spot on the parent
            # trail with q spliced in directly below it
            up_q, dn_q = q.up, q.dn
            old_in, old_mid = j.in_, j.mid
            new_mid_top = j.dn          # rest of the old mid-trail below j
            j.in_ = q.in_
            if j.in_.kind == INTERNAL:
                j.in_.up = j
            elif j.in_ is p and p.in_ is q:
                p.in_ = j
            j.mid = new_mid_top
            # (new_mid_top's up/dn and p's mid slot already fit)
            j.up = up_q
            _down_slot_set(up_q, q, j)
            j.dn = q
            q.up = j
            q.dn = dn_q
            # q adopts j's old trails, roles swapped
            q.in_ = old_mid
            q.mid = old_in
            for top, owner in ((old_mid, q), (old_in, q)):
                if top.kind == INTERNAL:
                    top.up = owner
            i.in_, i.mid = i.mid, i.in_
            if i.in_ is j:
                i.in_ = q
            if i.mid is j:
                i.mid = q
            j.low = q.low
            i.dth = q
            p.dth = j
    else:
        assert q.dn is j, "j must be adjacent to q on a trail"
        ki, kp = tree.nkey(i), tree.nkey(p)
        up_q = q.up
        if ki < kp:
            # pairs preserved: q drops onto the top of j's in-trail
            _down_slot_set(up_q, q, j)
            j.up = up_q
            splice_below(tree, j, "in_", q)
            q.low = i
        else:
            # pairs swap: q drops onto the top of j's mid-trail, j adopts
            # q's banana, their trails swap roles at the leaf
            old_in, old_mid = j.in_, j.mid
            _down_slot_set(up_q, q, j)
            j.up = up_q
            j.in_ = q.in_
            if j.in_.kind == INTERNAL:
                j.in_.up = j
            elif j.in_ is p and p.in_ is q:
                p.in_ = j
            old_q_mid = q.mid
            j.mid = q
            q.up = j
            q.dn = old_q_mid
            if old_q_mid.kind == INTERNAL:
                old_q_mid.up = q
            elif old_q_mid is p and p.mid is q:
                p.mid = q
            q.in_ = old_mid
            q.mid = old_in
            for top in (old_mid, old_in):
                if top.kind == INTERNAL:
                    top.up = q
            i.in_, i.mid = i.mid, i.in_
            if i.in_ is j:
                i.in_ = q
            if i.mid is j:
                i.mid = q
            q.low = p
            j.low = j.low  # unchanged: j stays on the parent trail
            i.dth = q
            p.dth = j
    tree.refresh_spine_at([j, q, j.in_, j.mid, q.in_, q.mid, j.up, q.up])


def min_interchange(tree, i_item, p_item):
    """Interchange of minima; no-op unless p = Low(Dth(i)).  Returns whether
    a structural change happened."""
    cnt = tree.counters
    cnt.visit()
    i = i_item.node(tree.sign)
    p = p_item.node(tree.sign)
    if i is None or p is None or i.dth is None:
        return False
    if i.dth.low is not p:
        return False
    cnt.interchanges_min += 1
    j = i.dth
    q = p.dth
    u_j, d_j, i_j, m_j = j.up, j.dn, j.in_, j.mid
    lj, lp, lq = tree.label(j), tree.label(p), tree.label(q)
    j_on_mid = (lq < lj < lp) or (lp < lj < lq)
    other_slot = "in_" if j_on_mid else "mid"
    s_plus = q
    cur = getattr(q, other_slot)
    kj = tree.nkey(j)
    while cur is not p and tree.nkey(cur) > kj:
        cnt.visit()
        s_plus = cur
        cur = cur.dn
    s_minus = cur

    j.dn = m_j
    j.mid = d_j
    j.in_ = s_minus
    j.up = s_plus
    if j_on_mid:
        i.in_, i.mid = i.mid, i.in_
        if i_j is i:
            i.mid = u_j
        else:
            i_j.up = u_j
        if u_j is q:
            q.mid = i_j
        else:
            u_j.dn = i_j
        if s_plus is q:
            q.in_ = j
        else:
            s_plus.dn = j
        if s_minus is p:
            p.in_ = j
        else:
            s_minus.up = j
    else:
        p.in_, p.mid = p.mid, p.in_
        if i_j is i:
            i.in_ = u_j
        else:
            i_j.up = u_j
        if u_j is q:
            q.in_ = i_j
        else:
            u_j.dn = i_j
        if s_plus is q:
            q.mid = j
        else:
            s_plus.dn = j
        if s_minus is p:
            p.in_ = j
        else:
            s_minus.up = j
    i.dth = q
    p.dth = j
    touched = [j, q, u_j, d_j, i_j, m_j, s_plus, s_minus]
    for start in (u_j, j):
        x = start
        while x is not q and x.kind == INTERNAL:
            cnt.visit()
            x.low = i
            touched.append(x)
            x = x.up
    tree.refresh_spine_at(touched)
    return True


def cancel(tree, p_item, j_item):
    """Remove the minimal banana spanned by leaf p and max j."""
    cnt = tree.counters
    cnt.cancellations += 1
    cnt.visit(2)
    p = p_item.node(tree.sign)
    j = j_item.node(tree.sign)
    assert j.in_ is p and j.mid is p, "cancellation needs empty trails"
    assert p.in_ is j and p.mid is j
    splice_out(tree, j)
    _drop_node(tree, j)
    _drop_node(tree, p)
    tree.refresh_spine_at([])


def anti_cancel(tree, p_item, q_item, b):
    """Introduce the minimal banana (p, q); b is the nearest maximum of this
    tree's map beyond p, away from q.  Returns the number of walked nodes
    (the growth k' of the nesting transitive closure)."""
    cnt = tree.counters
    cnt.visit(2)
    pn = Node(p_item, LEAF)
    qn = Node(q_item, INTERNAL)
    p_item.set_node(tree.sign, pn)
    q_item.set_node(tree.sign, qn)

    lb = tree.label(b)
    birth_b = tree.birth(b)
    same_side = (tree.label(birth_b) > lb) == (tree.label(pn) > lb)
    t = b.mid if same_side else b.dn
    kq = tree.key(q_item)
    walked = 0
    while tree.nkey(t) > kq:
        cnt.visit()
        walked += 1
        t = t.in_
    if t.kind == LEAF:
        slot = _leaf_trail_slot(tree, t, tree.label(qn))
        splice_above_leaf(tree, t, slot, qn)
    else:
        up_t = t.up
        _down_slot_set(up_t, t, qn)
        qn.up = up_t
        qn.dn = t
        t.up = qn
    qn.low = qn.dn.low
    qn.in_ = qn.mid = pn
    pn.in_ = pn.mid = qn
    pn.low = pn
    pn.dth = qn
    tree.refresh_spine_at([qn, qn.up if qn.up is not None else None])
    return walked


def slide(tree, old_item, new_item):
    """Criticality transfer: the node for old_item now represents new_item."""
    cnt = tree.counters
    cnt.slides += 1
    cnt.visit()
    node = old_item.node(tree.sign)
    _relabel(tree, node, new_item)
    tree.refresh_spine_at([node])


# -- endpoint transitions -------------------------------------------------------


def _endpoint_transition(s, a_item, e_item):
    """Endpoint e crossed its neighbor a (values already in the new order).

    In the tree where e turns up-type its hook banana disappears; in the
    other tree a hook banana materializes.  Which of the two sub-cases runs
    is decided by a's other neighbor.
    """
    lst = s.list
    left_end = e_item is lst.first_real()
    hook = lst.left_hook if left_end else lst.right_hook
    hook.set_value(hook_value(e_item, a_item))
    w = a_item.next if left_end else a_item.prev
    for tree in (s.up_tree, s.dn_tree):
        k_e, k_a, k_w = tree.key(e_item), tree.key(a_item), tree.key(w)
        if k_e < k_a:
            # e now up-type here: hook banana goes away
            en = e_item.node(tree.sign)
            hn = hook.node(tree.sign)
            assert en is not None and en.kind == INTERNAL
            if k_a > k_w:
                # a becomes a maximum of this map: pure relabels
                _relabel(tree, en, a_item)
                _relabel(tree, hn, e_item)
            else:
                # a becomes non-critical: drop the banana, a's leaf becomes e's
                an = a_item.node(tree.sign)
                splice_out(tree, en)
                _drop_node(tree, en)
                _drop_node(tree, hn)
                _relabel(tree, an, e_item)
            tree.refresh_spine_at([e_item.node(tree.sign), a_item.node(tree.sign)])
        else:
            # e now down-type here: it becomes a maximum over a fresh hook leaf
            en = e_item.node(tree.sign)
            assert en is not None and en.kind == LEAF
            if k_a < k_w:
                # a becomes a minimum of this map
                _relabel(tree, en, a_item)
                _attach_end_max(tree, en, e_item, hook)
            else:
                # a was this map's maximum and becomes non-critical
                an = a_item.node(tree.sign)
                assert an is not None and an.kind == INTERNAL
                _relabel(tree, en, hook)
                _relabel(tree, an, e_item)
                tree.refresh_spine_at([a_item.node(tree.sign), e_item.node(tree.sign)])
        s.counters.visit(2)


# -- coupled events ---------------------------------------------------------------


def _nearest_max_node(s, tree, from_item, direction):
    """Nearest maximum of the tree's map strictly beyond from_item."""
    dct = s.maxima if tree.sign > 0 else s.minima
    it = (dct.nearest_left(from_item.label, s.counters) if direction == "left"
          else dct.nearest_right(from_item.label, s.counters))
    assert it is not None, "anti-cancellation without an enclosing maximum"
    return it.node(tree.sign)


def _rise_as_max(s, item, outcome):
    """A-loop: item is a maximum of f; interchange up while needed."""
    up = s.up_tree
    while True:
        jn = item.up_node
        q = jn.up
        if q.kind == SPECIAL:
            break
        if up.nkey(q) > item.ku:
            break
        max_interchange(up, jn, q)
        min_interchange(s.dn_tree, item, q.item)
        outcome.primitives.append("max_interchange")


def _fall_as_max(s, item, floor_key, outcome):
    """B-loop in the up-tree: item's value fell; pull larger nodes above it."""
    up = s.up_tree
    while True:
        jn = item.up_node
        cands = [jn.dn, jn.in_, jn.mid]
        q = max(cands, key=up.nkey)
        if up.nkey(q) <= max(item.ku, floor_key):
            break
        if q.kind != INTERNAL:
            break
        max_interchange(up, q, jn)
        min_interchange(s.dn_tree, q.item, item)
        outcome.primitives.append("max_interchange")


def _rise_as_min(s, item, ceil_key, outcome):
    """B-loop in the down-tree: item is a minimum of f rising in value."""
    dn = s.dn_tree
    while True:
        jn = item.down_node
        cands = [jn.dn, jn.in_, jn.mid]
        q = max(cands, key=dn.nkey)
        if dn.nkey(q) <= max(item.kd, ceil_key):
            break
        if q.kind != INTERNAL:
            break
        max_interchange(dn, q, jn)
        min_interchange(s.up_tree, q.item, item)
        outcome.primitives.append("min_interchange")


def _fall_as_min(s, item, outcome):
    """A-loop mirror in the down-tree: item is a minimum of f falling."""
    dn = s.dn_tree
    while True:
        jn = item.down_node
        q = jn.up
        if q.kind == SPECIAL:
            break
        if dn.nkey(q) > item.kd:
            break
        max_interchange(dn, jn, q)
        min_interchange(s.up_tree, item, q.item)
        outcome.primitives.append("min_interchange")


def _set_crit(s, it, new_tag):
    old = it.criticality
    if old == new_tag:
        return
    if old == MINIMUM:
        s.minima.discard(it, s.counters)
    elif old == MAXIMUM:
        s.maxima.discard(it, s.counters)
    it.criticality = new_tag
    if new_tag == MINIMUM:
        s.minima.insert(it, s.counters)
    elif new_tag == MAXIMUM:
        s.maxima.insert(it, s.counters)


def _coupled_slide(s, old_item, new_item, outcome):
    cls = MAXIMUM if old_item.up_node.kind == INTERNAL else MINIMUM
    slide(s.up_tree, old_item, new_item)
    slide(s.dn_tree, old_item, new_item)
    s.counters.slides += 1
    outcome.primitives.append("slide")
    _set_crit(s, old_item, NON_CRITICAL)
    _set_crit(s, new_item, cls)


def _coupled_cancel(s, p_item, j_item, outcome):
    cancel(s.up_tree, p_item, j_item)
    cancel(s.dn_tree, j_item, p_item)
    outcome.primitives.append("cancel")
    _set_crit(s, p_item, NON_CRITICAL)
    _set_crit(s, j_item, NON_CRITICAL)


def _coupled_anti_cancel(s, p_item, q_item, outcome):
    """p becomes a minimum and q a maximum of f (both non-critical before)."""
    away_up = "left" if p_item.label < q_item.label else "right"
    b_up = _nearest_max_node(s, s.up_tree, p_item, away_up)
    k1 = anti_cancel(s.up_tree, p_item, q_item, b_up)
    away_dn = "left" if q_item.label < p_item.label else "right"
    b_dn = _nearest_max_node(s, s.dn_tree, q_item, away_dn)
    k2 = anti_cancel(s.dn_tree, q_item, p_item, b_dn)
    s.counters.anticancellations += 1
    outcome.k_prime += max(k1, k2)
    outcome.primitives.append("anti_cancel")
    _set_crit(s, p_item, MINIMUM)
    _set_crit(s, q_item, MAXIMUM)


def _coupled_endpoint(s, a_item, e_item, outcome):
    _endpoint_transition(s, a_item, e_item)
    outcome.primitives.append("endpoint")
    w = a_item.next if e_item.label < a_item.label else a_item.prev
    e_cls = MINIMUM if e_item.ku < a_item.ku else MAXIMUM
    if a_item.ku > e_item.ku and a_item.ku > w.ku:
        a_cls = MAXIMUM
    elif a_item.ku < e_item.ku and a_item.ku < w.ku:
        a_cls = MINIMUM
    else:
        a_cls = NON_CRITICAL
    _set_crit(s, e_item, e_cls)
    _set_crit(s, a_item, a_cls)


# -- the public edit operations ------------------------------------------------


def _upper_neighbor(item):
    p, n = item.prev, item.next
    pk = p.ku if p is not None and not p.is_hook else None
    nk = n.ku if n is not None and not n.is_hook else None
    if pk is None:
        return n
    if nk is None:
        return p
    return p if pk > nk else n


def _lower_neighbor(item):
    p, n = item.prev, item.next
    pk = p.ku if p is not None and not p.is_hook else None
    nk = n.ku if n is not None and not n.is_hook else None
    if pk is None:
        return n
    if nk is None:
        return p
    return p if pk < nk else n


def _is_endpoint(s, item):
    return item is s.list.first_real() or item is s.list.last_real()


def _change_interior(s, item, target, outcome):
    rising = target.key() > item.ku
    item.set_value(target)
    while True:
        un = item.up_node
        dnn = item.down_node
        if rising:
            if un is not None and un.kind == INTERNAL:
                _rise_as_max(s, item, outcome)
                return
            if dnn is not None and dnn.kind == INTERNAL:
                ns = _lower_neighbor(item)
                _rise_as_min(s, item, ns.kd, outcome)
                if item.ku < ns.ku:
                    return
                if _is_endpoint(s, ns):
                    _coupled_endpoint(s, item, ns, outcome)
                elif ns.up_node is not None and ns.up_node.kind == INTERNAL:
                    _coupled_cancel(s, item, ns, outcome)
                else:
                    _coupled_slide(s, item, ns, outcome)
                continue
            u = _upper_neighbor(item)
            if item.ku < u.ku:
                return
            if _is_endpoint(s, u):
                _coupled_endpoint(s, item, u, outcome)
            elif u.up_node is not None and u.up_node.kind == INTERNAL:
                _coupled_slide(s, u, item, outcome)
            else:
                _coupled_anti_cancel(s, u, item, outcome)
            continue
        else:
            if dnn is not None and dnn.kind == INTERNAL:
                _fall_as_min(s, item, outcome)
                return
            if un is not None and un.kind == INTERNAL:
                nb = _upper_neighbor(item)
                _fall_as_max(s, item, nb.ku, outcome)
                if item.ku > nb.ku:
                    return
                if _is_endpoint(s, nb):
                    _coupled_endpoint(s, item, nb, outcome)
                elif nb.down_node is not None and nb.down_node.kind == INTERNAL:
                    _coupled_cancel(s, nb, item, outcome)
                else:
                    _coupled_slide(s, item, nb, outcome)
                continue
            d = _lower_neighbor(item)
            if item.ku > d.ku:
                return
            if _is_endpoint(s, d):
                _coupled_endpoint(s, item, d, outcome)
            elif d.down_node is not None and d.down_node.kind == INTERNAL:
                _coupled_slide(s, d, item, outcome)
            else:
                _coupled_anti_cancel(s, item, d, outcome)
            continue


def _change_endpoint(s, item, target, outcome):
    lst = s.list
    left_end = item is lst.first_real()
    hook = lst.left_hook if left_end else lst.right_hook
    a = item.next if left_end else item.prev
    rising = target.key() > item.ku
    was_up_type = item.down_node is not None and item.down_node.kind == INTERNAL
    item.set_value(target)
    # the hook rides along, one eps step on the side matching the current
    # endpoint type; the transition resets it when the type flips
    hook.set_value(item.value.shifted(1 if was_up_type else -1))
    if rising:
        if item.down_node is not None and item.down_node.kind == INTERNAL:
            # up-type endpoint rising: interchanges with minima first
            dn = s.dn_tree
            while True:
                jn = item.down_node
                q = jn.dn
                if q is None or q.kind != INTERNAL:
                    break
                if dn.nkey(q) < item.kd:
                    break
                max_interchange(dn, q, jn)
                min_interchange(s.up_tree, q.item, item)
                outcome.primitives.append("min_interchange")
            if item.ku > a.ku:
                _coupled_endpoint(s, a, item, outcome)
        if item.up_node is not None and item.up_node.kind == INTERNAL:
            _rise_as_max(s, item, outcome)
    else:
        if item.up_node is not None and item.up_node.kind == INTERNAL:
            up = s.up_tree
            while True:
                jn = item.up_node
                q = jn.dn
                if q is None or q.kind != INTERNAL:
                    break
                if up.nkey(q) < item.ku:
                    break
                max_interchange(up, q, jn)
                min_interchange(s.dn_tree, q.item, item)
                outcome.primitives.append("max_interchange")
            if item.ku < a.ku:
                _coupled_endpoint(s, a, item, outcome)
        if item.down_node is not None and item.down_node.kind == INTERNAL:
            _fall_as_min(s, item, outcome)
    hook.set_value(hook_value(item, a))


def change_value(s, item, new_value):
    """Adjust one item's value; both trees follow the homotopy."""
    s.counters.reset()
    outcome = EditOutcome()
    if isinstance(new_value, ExtValue):
        target = new_value
    else:
        target = ExtValue(float(new_value), tie=item.id)
    if target.key() == item.ku:
        outcome.counters = s.counters.snapshot()
        return outcome
    if s.up_tree is None:
        item.set_value(target)
        outcome.counters = s.counters.snapshot()
        return outcome
    before = extract(s)
    if _is_endpoint(s, item):
        _change_endpoint(s, item, target, outcome)
    else:
        _change_interior(s, item, target, outcome)
    refresh_criticality(s.list, item)
    after = extract(s)
    outcome.k = diff(before, after)
    outcome.counters = s.counters.snapshot()
    return outcome


# -- insertion and deletion ------------------------------------------------------


def _attach_end_max(tree, a_node, q_item, hook_item):
    """Materialize a down-type end: q becomes a maximum over a fresh hook
    leaf, nested at the bottom of leaf a's trail on q's side."""
    qn = Node(q_item, INTERNAL)
    hn = Node(hook_item, LEAF)
    q_item.set_node(tree.sign, qn)
    hook_item.set_node(tree.sign, hn)
    slot = _leaf_trail_slot(tree, a_node, q_item.label)
    splice_above_leaf(tree, a_node, slot, qn)
    qn.low = a_node
    qn.in_ = qn.mid = hn
    hn.in_ = hn.mid = qn
    hn.low = hn
    hn.dth = qn
    tree.refresh_spine_at([qn])
    return qn


def _detach_end_max(tree, q_item, hook_item):
    """Inverse of _attach_end_max: drop the (hook, q) banana."""
    qn = q_item.node(tree.sign)
    hn = hook_item.node(tree.sign)
    assert qn is not None and qn.kind == INTERNAL
    assert qn.in_ is hn and qn.mid is hn, "end banana must have empty trails"
    splice_out(tree, qn)
    _drop_node(tree, qn)
    _drop_node(tree, hn)


def insert_item(s, after_pos, value):
    """Insert a new item after 1-based position after_pos (0 = at the front).

    The item enters non-critically next to a neighbor, then its value is
    adjusted to the target.
    """
    s.counters.reset()
    outcome = EditOutcome()
    lst = s.list
    n = lst.count
    if after_pos < 0 or after_pos > n:
        raise IndexError(f"insert position {after_pos} out of range 0..{n}")
    if n < 2:
        anchor = None if after_pos == 0 else lst.real_at(after_pos)
        it = Item(ExtValue(float(value)))
        it.set_value(ExtValue(float(value), tie=it.id))
        lst.link_after(anchor, it)
        if lst.count >= 2:
            s._build_trees()
            outcome.k = diff(extract(s), _EMPTY)
        outcome.counters = s.counters.snapshot()
        return outcome, it
    before = extract(s)
    target_holder = []
    if after_pos == 0 or after_pos == n:
        it = _insert_at_end(s, after_pos, value, outcome)
    else:
        prev = lst.real_at(after_pos)
        nxt = prev.next
        lo = prev if prev.ku < nxt.ku else nxt
        prov = ExtValue(lo.value.real, lo.value.tie, lo.value.eps + 3)
        it = Item(prov)
        lst.link_after(prev, it)
        it.criticality = NON_CRITICAL
        target = ExtValue(float(value), tie=it.id)
        _change_interior(s, it, target, outcome)
    after = extract(s)
    outcome.k = diff(before, after)
    outcome.counters = s.counters.snapshot()
    return outcome, it


def _insert_at_end(s, after_pos, value, outcome):
    lst = s.list
    left_end = after_pos == 0
    e_old = lst.first_real() if left_end else lst.last_real()
    hook = lst.left_hook if left_end else lst.right_hook
    side = 1 if hook.ku > e_old.ku else -1
    prov = e_old.value.shifted(2 * side)
    it = Item(prov)
    lst.link_after(hook if left_end else e_old, it)
    # the old hook's node (present in exactly one tree) becomes the new item
    for tree in (s.up_tree, s.dn_tree):
        hn = hook.node(tree.sign)
        if hn is not None:
            _relabel(tree, hn, it)
            tree.refresh_spine_at([hn.dth])
    # the other tree gains a fresh end banana under the old end's leaf
    tree2 = s.up_tree if side > 0 else s.dn_tree
    a_node = e_old.node(tree2.sign)
    _attach_end_max(tree2, a_node, it, hook)
    hook.set_value(it.value.shifted(-side))
    it.criticality = MAXIMUM if side > 0 else MINIMUM
    (s.maxima if side > 0 else s.minima).insert(it, s.counters)
    from .items import DOWN_HOOK, UP_HOOK
    hook.criticality = DOWN_HOOK if side > 0 else UP_HOOK
    outcome.primitives.append("end_insert")
    target = ExtValue(float(value), tie=it.id)
    if target.key() != it.ku:
        _change_endpoint(s, it, target, outcome)
    return it


def delete_item(s, item):
    """Delete an item: adjust it to non-critical (or hand its end role to the
    hook), then unlink."""
    s.counters.reset()
    outcome = EditOutcome()
    lst = s.list
    if s.up_tree is None:
        lst.unlink(item)
        outcome.counters = s.counters.snapshot()
        return outcome
    before = extract(s)
    if lst.count <= 3:
        # too small for the endpoint machinery to be worthwhile: rebuild
        lst.unlink(item)
        item.up_node = item.down_node = None
        if lst.count >= 2:
            s._build_trees()
            outcome.k = diff(before, extract(s))
        else:
            _teardown(s)
            outcome.k = diff(before, _EMPTY)
        outcome.counters = s.counters.snapshot()
        return outcome
    if _is_endpoint(s, item):
        _delete_endpoint(s, item, outcome)
    else:
        if item.up_node is not None or item.down_node is not None:
            lo = _lower_neighbor(item)
            prov = ExtValue(lo.value.real, lo.value.tie, lo.value.eps + 3)
            _change_interior(s, item, prov, outcome)
        assert item.up_node is None and item.down_node is None
        lst.unlink(item)
    outcome.k = diff(before, extract(s))
    outcome.counters = s.counters.snapshot()
    return outcome


def _delete_endpoint(s, item, outcome):
    lst = s.list
    left_end = item is lst.first_real()
    hook = lst.left_hook if left_end else lst.right_hook
    a = item.next if left_end else item.prev
    w = a.next if left_end else a.prev
    side = 1 if w.ku > a.ku else -1      # future type of the new end item a
    prov = a.value.shifted(2 * side)
    if prov.key() != item.ku:
        _change_endpoint(s, item, prov, outcome)
    # item now mirrors the future hook: down-type iff side > 0
    tree1 = s.up_tree if side > 0 else s.dn_tree   # item internal here
    tree2 = s.dn_tree if side > 0 else s.up_tree   # item a leaf here
    _detach_end_max(tree1, item, hook)
    en = item.node(tree2.sign)
    _relabel(tree2, en, hook)
    _set_crit(s, item, NON_CRITICAL)
    lst.unlink(item)
    hook.set_value(a.value.shifted(side))
    from .items import DOWN_HOOK, UP_HOOK
    hook.criticality = UP_HOOK if side > 0 else DOWN_HOOK
    outcome.primitives.append("end_delete")


def _teardown(s):
    lst = s.list
    for h in (lst.left_hook, lst.right_hook):
        if h is not None:
            lst.unlink(h)
    for it in lst:
        it.up_node = it.down_node = None
    s.up_tree = s.dn_tree = None
    from .dictionary import CriticalityDictionary
    s.minima = CriticalityDictionary()
    s.maxima = CriticalityDictionary()


class _Empty:
    def filtered(self, include_hooks=False):
        return self

    def point_keys(self):
        return set()

    def arrow_keys(self):
        return set()


_EMPTY = _Empty()
