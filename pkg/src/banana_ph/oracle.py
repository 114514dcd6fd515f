"""Brute-force ground truth, independent of the banana trees.

``naive_diagram`` runs the two-phase sweep with a union-find over item runs.
``naive_windows`` tests every candidate min-max pair directly against the
window conditions on value bands, computing supports, wave types and nesting
from scratch.  The two agree via the window/point bijection and serve as
independent cross-checks for the maintained structure.

Both work on hook-free value lists (plain reals, or (real, tie) keyed items).
"""

from __future__ import annotations

from fractions import Fraction

from .diagram import (ORDINARY, RELATIVE, ESSENTIAL,
                      AugmentedPersistenceDiagram, Arrow, DiagramPoint)


def _keys(values):
    """Keys (kind, real, tie, eps) for plain reals; ties broken by index."""
    return [(0, float(v), i + 1, 0) for i, v in enumerate(values)]


def _neg(k):
    return (-k[0], -k[1], -k[2], -k[3])


class _Comp:
    __slots__ = ("birth_idx", "birth_key", "left", "right", "point", "parent")

    def __init__(self, idx, key):
        self.birth_idx = idx
        self.birth_key = key
        self.left = idx
        self.right = idx
        self.point = None      # DiagramPoint this component dies into
        self.parent = None     # component it merged into


def _sweep(ks, keys, ids, sub):
    """One phase: track components of sublevel sets of the keyed map ks.

    Components are runs of processed cells; ownership is only ever queried at
    run frontiers, so it is maintained there.  Points record the original
    keys.  Returns (points list, dying comps in death order, eldest comp).
    """
    m = len(ks)
    order = sorted(range(m), key=lambda i: ks[i])
    owner = [None] * m
    comps = []
    dying = []
    points = []
    for i in order:
        lc = owner[i - 1] if i > 0 else None
        rc = owner[i + 1] if i + 1 < m else None
        if lc is None and rc is None:
            c = _Comp(i, ks[i])
            comps.append(c)
            owner[i] = c
        elif lc is None or rc is None:
            c = lc or rc
            c.left = min(c.left, i)
            c.right = max(c.right, i)
            owner[i] = c
        else:
            elder, younger = (lc, rc) if lc.birth_key < rc.birth_key else (rc, lc)
            pt = DiagramPoint(keys[younger.birth_idx], keys[i], sub,
                              ids[younger.birth_idx], ids[i], False)
            younger.point = pt
            younger.parent = elder
            dying.append(younger)
            points.append(pt)
            elder.left = min(elder.left, younger.left)
            elder.right = max(elder.right, younger.right)
            owner[elder.left] = owner[elder.right] = owner[i] = elder
    eldest = min(comps, key=lambda c: c.birth_key)
    return points, dying, eldest


def naive_diagram(values, ids=None):
    """Augmented persistence diagram by the two-phase sweep."""
    if len(values) < 2:
        raise ValueError("need at least 2 values")
    if values and isinstance(values[0], tuple):
        keys = [(0, float(r), t, 0) for (r, t) in values]
    else:
        keys = _keys(values)
    if ids is None:
        ids = list(range(1, len(values) + 1))
    neg = [_neg(k) for k in keys]

    ord_points, ord_dying, eldest = _sweep(keys, keys, ids, ORDINARY)
    rel_points, rel_dying, rel_eldest = _sweep(neg, keys, ids, RELATIVE)

    ess = DiagramPoint(keys[eldest.birth_idx], keys[rel_eldest.birth_idx],
                       ESSENTIAL, ids[eldest.birth_idx], ids[rel_eldest.birth_idx],
                       False)
    points = [ess] + ord_points + rel_points
    arrows = []
    for comp in ord_dying:
        target = comp.parent.point if comp.parent.point is not None else ess
        arrows.append(Arrow(comp.point, target, "up"))
    for comp in rel_dying:
        target = comp.parent.point    # eldest of -f carries no point
        if target is not None:
            arrows.append(Arrow(comp.point, target, "down"))
    return AugmentedPersistenceDiagram(points, arrows).canonicalize()


class Window:
    __slots__ = ("min_item", "max_item", "lo", "hi", "wave", "orientation",
                 "sign", "min_idx", "max_idx", "is_global")

    def __init__(self, min_idx, max_idx, min_item, max_item, lo, hi, wave,
                 orientation, sign, is_global=False):
        self.min_idx = min_idx
        self.max_idx = max_idx
        self.min_item = min_item
        self.max_item = max_item
        self.lo = lo              # support left end (exact position)
        self.hi = hi              # support right end
        self.wave = wave          # "simple" | "short-left" | "short-right" | "global"
        self.orientation = orientation  # "left-to-right" if min left of max
        self.sign = sign          # +1: window of f, -1: window of -f
        self.is_global = is_global

    def dp_interval(self):
        """Double-panel support: drop the out-panel."""
        if self.is_global:
            return (self.lo, self.hi)
        if self.min_idx < self.max_idx:
            return (self.lo, Fraction(self.max_idx))
        return (Fraction(self.max_idx), self.hi)

    def __repr__(self):
        return (f"<Window sign={self.sign:+d} min@{self.min_idx} max@{self.max_idx} "
                f"[{self.lo},{self.hi}] {self.wave}>")


def _support(keys, a, b, A, B):
    """Support of the band [A, B] component around items a..b.

    Returns (lo, hi, left_exit, right_exit) with exits in {"A","B","end"} and
    exact fractional crossing positions (indices are 0-based here).
    """
    m = len(keys)
    lo_i = min(a, b)
    while lo_i - 1 >= 0 and A <= keys[lo_i - 1] <= B:
        lo_i -= 1
    if lo_i == 0:
        lo, lexit = Fraction(0), "end"
    else:
        out = keys[lo_i - 1]
        val = A if out < A else B
        lo = Fraction(lo_i - 1) + _cross(out, keys[lo_i], val)
        lexit = "A" if out < A else "B"
    hi_i = max(a, b)
    while hi_i + 1 < m and A <= keys[hi_i + 1] <= B:
        hi_i += 1
    if hi_i == m - 1:
        hi, rexit = Fraction(m - 1), "end"
    else:
        out = keys[hi_i + 1]
        val = A if out < A else B
        hi = Fraction(hi_i) + 1 - _cross(out, keys[hi_i], val)
        rexit = "A" if out < A else "B"
    return lo, hi, lexit, rexit


def classify_cut(window, x_pos):
    """Which panel of the window a cut at exact position x_pos passes through.

    Returns "in", "mid", "out", or None if the support misses x entirely.
    """
    if not (window.lo < x_pos < window.hi):
        return None
    a, b = Fraction(window.min_idx), Fraction(window.max_idx)
    if window.is_global:
        return "mid"
    if a < b:
        if x_pos < a:
            return "in"
        return "mid" if x_pos < b else "out"
    if x_pos > a:
        return "in"
    return "mid" if x_pos > b else "out"


def _cross(out_key, in_key, at_key):
    """Offset from the out-of-band item toward the in-band item where the
    interpolated value crosses at_key; always in (0, 1)."""
    denom = Fraction(in_key[1]) - Fraction(out_key[1])
    if denom == 0:
        return Fraction(1, 2)
    t = (Fraction(at_key[1]) - Fraction(out_key[1])) / denom
    if t <= 0:
        t = Fraction(1, 1000)
    if t >= 1:
        t = Fraction(999, 1000)
    return t


def _signed_windows(keys, ids, sign):
    """All triple-panel windows of the signed map, plus its global window."""
    m = len(keys)
    ks = keys if sign > 0 else [_neg(k) for k in keys]

    def is_min(i):
        lo = ks[i - 1] if i > 0 else None
        hi = ks[i + 1] if i + 1 < m else None
        return all(k is None or ks[i] < k for k in (lo, hi))

    def is_interior_max(i):
        return 0 < i < m - 1 and ks[i] > ks[i - 1] and ks[i] > ks[i + 1]

    wins = []
    mins = [i for i in range(m) if is_min(i)]
    maxes = [i for i in range(m) if is_interior_max(i)]
    gmin = min(range(m), key=lambda i: ks[i])
    gmax = max(range(m), key=lambda i: ks[i])
    for a in mins:
        for b in maxes:
            if a == b or ks[a] >= ks[b]:
                continue
            # component of {f < B} containing a, with b on its edge
            lo = a
            while lo - 1 >= 0 and ks[lo - 1] < ks[b]:
                lo -= 1
            hi = a
            while hi + 1 < m and ks[hi + 1] < ks[b]:
                hi += 1
            if not (b == lo - 1 or b == hi + 1):
                continue
            if min(ks[i] for i in range(lo, hi + 1)) != ks[a]:
                continue
            # other side of b: an elder component must exist
            if b == hi + 1:
                olo = b + 1
                if olo >= m:
                    continue
                ohi = olo
                while ohi + 1 < m and ks[ohi + 1] < ks[b]:
                    ohi += 1
                other_min = min(ks[i] for i in range(olo, ohi + 1))
            else:
                ohi = b - 1
                if ohi < 0:
                    continue
                olo = ohi
                while olo - 1 >= 0 and ks[olo - 1] < ks[b]:
                    olo -= 1
                other_min = min(ks[i] for i in range(olo, ohi + 1))
            if other_min > ks[a]:
                continue        # a's component is the elder; b pairs elsewhere
            slo, shi, lexit, rexit = _support(ks, a, b, ks[a], ks[b])
            if a < b:
                if rexit != "A":
                    continue
                wave = "simple" if lexit == "B" else "short-left"
                orient = "left-to-right"
            else:
                if lexit != "A":
                    continue
                wave = "simple" if rexit == "B" else "short-right"
                orient = "right-to-left"
            wins.append(Window(a, b, ids[a], ids[b], slo, shi, wave, orient, sign))
    wins.append(Window(gmin, gmax, ids[gmin], ids[gmax],
                       Fraction(0), Fraction(m - 1), "global",
                       "left-to-right" if gmin < gmax else "right-to-left",
                       sign, is_global=True))
    return wins


def naive_windows(values, ids=None):
    """Triple-panel and global windows of f and of -f by direct testing."""
    if len(values) < 2:
        raise ValueError("need at least 2 values")
    if values and isinstance(values[0], tuple):
        keys = [(0, float(r), t, 0) for (r, t) in values]
    else:
        keys = _keys(values)
    reals = [k[1] for k in keys]
    if len(set(reals)) != len(reals):
        raise ValueError("windows oracle needs distinct reals")
    if ids is None:
        ids = list(range(1, len(values) + 1))
    return _signed_windows(keys, ids, +1) + _signed_windows(keys, ids, -1)


def structure_diagram(structure):
    """Oracle diagram over a structure's current items (hook-free)."""
    items = structure.list.real_items()
    keyed = [(it.value.real, it.value.tie) for it in items]
    return naive_diagram(keyed, ids=[it.id for it in items])


def structure_windows(structure):
    items = structure.list.real_items()
    keyed = [(it.value.real, it.value.tie) for it in items]
    return naive_windows(keyed, ids=[it.id for it in items])


def rebuild(structure):
    """From-scratch build over the current values; canonical equality target."""
    return structure.rebuilt()


def window_nesting(windows):
    """Immediate-nesting parent per window among one sign's windows.

    Double-panel supports of one sign are nested or disjoint; parent = the
    smallest strictly containing window.  Returns {id(w): parent_or_None}.
    """
    parents = {}
    for w in windows:
        lo, hi = w.dp_interval()
        best = None
        for v in windows:
            if v is w:
                continue
            vlo, vhi = v.dp_interval()
            if vlo <= lo and hi <= vhi and (vlo, vhi) != (lo, hi):
                if best is None:
                    best = v
                else:
                    blo, bhi = best.dp_interval()
                    if blo <= vlo and vhi <= bhi:
                        best = v
        parents[id(w)] = best
    return parents
