from __future__ import annotations

import itertools

import pytest

from banana_ph.diagram import ORDINARY, RELATIVE, ESSENTIAL
from banana_ph.oracle import naive_diagram, naive_windows, window_nesting


def pairs(d, sub):
    return sorted((p.birth, p.death) for p in d.by_subdiagram(sub))


def test_monotone_list_has_only_essential():
    d = naive_diagram([1, 2])
    assert pairs(d, ESSENTIAL) == [(1.0, 2.0)]
    assert pairs(d, ORDINARY) == []
    assert pairs(d, RELATIVE) == []
    assert d.arrows == []


def test_w_shape():
    d = naive_diagram([0, 3, 1, 4])
    assert pairs(d, ORDINARY) == [(1.0, 3.0)]
    assert pairs(d, RELATIVE) == [(3.0, 1.0)]
    assert pairs(d, ESSENTIAL) == [(0.0, 4.0)]
    assert len(d.arrows) == 1
    a = d.arrows[0]
    assert a.tree == "up"
    assert (a.child.birth, a.child.death) == (1.0, 3.0)
    assert (a.parent.birth, a.parent.death) == (0.0, 4.0)


def test_five_items():
    d = naive_diagram([2, 0, 4, 1, 5])
    assert pairs(d, ORDINARY) == [(1.0, 4.0)]
    assert pairs(d, RELATIVE) == [(2.0, 0.0), (4.0, 1.0)]
    assert pairs(d, ESSENTIAL) == [(0.0, 5.0)]


def test_spanning_items():
    d = naive_diagram([0, 3, 1, 4])
    (ordp,) = d.by_subdiagram(ORDINARY)
    assert (ordp.birth_item, ordp.death_item) == (3, 2)
    (ess,) = d.by_subdiagram(ESSENTIAL)
    assert (ess.birth_item, ess.death_item) == (1, 4)
    (rel,) = d.by_subdiagram(RELATIVE)
    assert (rel.birth_item, rel.death_item) == (2, 3)


def test_ties_fall_back_to_index_order():
    d = naive_diagram([(1.0, 5), (1.0, 9)])
    (ess,) = d.by_subdiagram(ESSENTIAL)
    assert (ess.birth_item, ess.death_item) == (1, 2)


def test_windows_counts_match_critical_points():
    # one window of f per minimum of f (incl. endpoint minima), and same for -f
    vals = [5, 1, 3, 0.5, 4, 2, 6]
    wins = naive_windows(vals)
    f_wins = [w for w in wins if w.sign > 0]
    n_minima = sum(
        1 for i, v in enumerate(vals)
        if all(v < vals[j] for j in (i - 1, i + 1) if 0 <= j < len(vals))
    )
    assert len(f_wins) == n_minima


def test_windows_w_shape():
    wins = naive_windows([0, 3, 1, 4])
    f_wins = [w for w in wins if w.sign > 0 and not w.is_global]
    assert len(f_wins) == 1
    (w,) = f_wins
    assert (w.min_item, w.max_item) == (3, 2)
    g = [w for w in wins if w.sign > 0 and w.is_global]
    assert len(g) == 1 and (g[0].min_item, g[0].max_item) == (1, 4)


def test_window_rejects_non_pair():
    # (1, 3) is not a persistence pair here: 1 pairs with 2.
    wins = naive_windows([0.5, 2, 1, 3, 0.2])
    f_pairs = {(w.min_item, w.max_item) for w in wins if w.sign > 0 and not w.is_global}
    assert f_pairs == {(3, 2), (1, 4)}


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_cross_oracle_bijection(n):
    # windows of f <-> Ord + Ess, windows of -f <-> Rel + (global, dropped)
    for perm in itertools.permutations(range(1, n + 1)):
        vals = list(perm)
        d = naive_diagram(vals)
        wins = naive_windows(vals)
        f_items = {(w.min_item, w.max_item) for w in wins if w.sign > 0 and not w.is_global}
        d_items = {(p.birth_item, p.death_item) for p in d.by_subdiagram(ORDINARY)}
        assert f_items == d_items
        (gw,) = [w for w in wins if w.sign > 0 and w.is_global]
        (ess,) = d.by_subdiagram(ESSENTIAL)
        assert (gw.min_item, gw.max_item) == (ess.birth_item, ess.death_item)
        n_items = {(w.max_item, w.min_item) for w in wins if w.sign < 0 and not w.is_global}
        r_items = {(p.death_item, p.birth_item) for p in d.by_subdiagram(RELATIVE)}
        assert n_items == r_items


@pytest.mark.parametrize("n", [4, 5, 6])
def test_nesting_agrees_with_merge_arrows(n):
    for perm in itertools.permutations(range(1, n + 1)):
        vals = list(perm)
        d = naive_diagram(vals)
        wins = naive_windows(vals)
        f_wins = [w for w in wins if w.sign > 0]
        parents = window_nesting(f_wins)
        # map: child pair -> parent pair via windows
        via_windows = {}
        for w in f_wins:
            if w.is_global:
                continue
            par = parents[id(w)]
            assert par is not None, (vals, w)
            via_windows[(w.min_item, w.max_item)] = (par.min_item, par.max_item)
        via_arrows = {
            (a.child.birth_item, a.child.death_item):
                (a.parent.birth_item, a.parent.death_item)
            for a in d.arrows if a.tree == "up"
        }
        assert via_windows == via_arrows
