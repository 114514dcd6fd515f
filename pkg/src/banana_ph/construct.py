"""Linear-time construction of a banana tree by a left-to-right stack scan.

The scan keeps a descending staircase of unfinished bananas.  Each new
maximum closes any number of steps (finishing their bananas) and opens one
step, so the whole scan touches each critical item O(1) times.

The sentinels at the two ends carry values above every item (+inf on the
left, +inf minus one step on the right); the right sentinel survives as the
special root.
"""

from __future__ import annotations

from .items import ItemList
from .nodes import INTERNAL, LEAF, SPECIAL, BananaTree, Node


def signed_critical_sequence(lst: ItemList, sign):
    """Critical items of the signed hooked map, in interval order.

    Returns [(item, is_max)] alternating min/max, starting and ending with a
    minimum.  At each end: if the end item is a maximum of the signed map its
    hook is the outermost leaf; otherwise the end item itself is the leaf and
    the hook is skipped.
    """
    first, last = lst.first_real(), lst.last_real()
    if first is None or first is last:
        return []

    def k(it):
        return it.ku if sign > 0 else it.kd

    seq = []
    if k(first) > k(first.next):
        seq.append((lst.left_hook, False))
        seq.append((first, True))
    else:
        seq.append((first, False))
    it = first.next
    while it is not last:
        kk = k(it)
        if kk < k(it.prev) and kk < k(it.next):
            seq.append((it, False))
        elif kk > k(it.prev) and kk > k(it.next):
            seq.append((it, True))
        it = it.next
    if k(last) > k(last.prev):
        seq.append((last, True))
        seq.append((lst.right_hook, False))
    else:
        seq.append((last, False))
    for i in range(len(seq) - 1):
        assert seq[i][1] != seq[i + 1][1], "criticals must alternate"
    return seq


def build_tree(lst: ItemList, sign, counters=None) -> BananaTree:
    """Build the banana tree of the signed hooked map from scratch."""
    tree = BananaTree(sign, counters)
    cnt = tree.counters
    seq = signed_critical_sequence(lst, sign)
    if not seq:
        return tree

    beta = tree.special_root
    left_sent = Node(None, SPECIAL)
    sent_key = {id(left_sent): (2, 0.0, 0, 0), id(beta): (2, 0.0, 0, -1)}

    def key(n):
        sk = sent_key.get(id(n))
        return sk if sk is not None else tree.key(n.item)

    scan = [left_sent]
    maxflag = [True]
    for item, is_max in seq:
        n = Node(item, INTERNAL if is_max else LEAF)
        item.set_node(sign, n)
        scan.append(n)
        maxflag.append(is_max)
    scan.append(beta)
    maxflag.append(True)

    prv = {id(scan[i]): scan[i - 1] for i in range(1, len(scan))}
    nxt = {id(scan[i]): scan[i + 1] for i in range(len(scan) - 1)}
    nxt[id(scan[-1])] = None
    is_max_node = {id(scan[i]): maxflag[i] for i in range(len(scan))}

    def set_up(n, target):
        if n.kind == INTERNAL:
            n.up = target

    def fix_banana(a, b):
        for slot in ("in_", "mid"):
            q = b
            p = getattr(b, slot)
            while p is not a:
                cnt.visit()
                p.low = a
                q = p
                p = p.dn
            setattr(a, slot, q)
        a.low = a
        a.dth = b
        cnt.visit()

    stack = [(left_sent, left_sent)]
    left_sent.dn = scan[1]
    A = None
    j = left_sent
    while True:
        j = nxt[id(j)]
        cnt.visit()
        if not is_max_node[id(j)]:
            A = j
            continue
        while key(j) > key(stack[-1][1]):
            a, b = stack.pop()
            cnt.visit()
            if key(A) < key(a):
                fix_banana(a, b)
            else:
                # attach b below j on the right
                b.up.dn = b.in_
                set_up(b.in_, b.up)
                b.up = j
                b.in_ = prv[id(j)]
                b.dn, b.mid = b.mid, b.dn
                prv[id(j)] = b
                set_up(b.in_, b)
                fix_banana(A, b)
                A = a
        b_top = stack[-1][1]
        j.up = b_top
        j.in_ = b_top.dn
        j.mid = prv[id(j)]
        j.dn = nxt[id(j)]
        b_top.dn = j
        set_up(j.in_, j)
        set_up(j.mid, j)
        stack.append((A, j))
        if j is beta:
            fix_banana(A, beta)
            break

    beta.up = beta.dn = None
    beta.low = None
    tree.recompute_spine()
    return tree
