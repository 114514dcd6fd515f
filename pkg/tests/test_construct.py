from __future__ import annotations

import itertools
import random

import pytest

from banana_ph.diagram import ORDINARY, RELATIVE, ESSENTIAL, diff
from banana_ph.oracle import naive_diagram, structure_diagram
from banana_ph.structure import BananaStructure


def build(vals):
    return BananaStructure.from_values(vals)


def pairs(d, sub):
    return sorted((p.birth, p.death) for p in d.by_subdiagram(sub))


def test_two_items():
    s = build([1, 2])
    assert s.validate() == []
    d = s.diagram()
    assert pairs(d, ESSENTIAL) == [(1.0, 2.0)]
    assert pairs(d, ORDINARY) == []
    assert pairs(d, RELATIVE) == []


def test_two_items_descending():
    s = build([2, 1])
    assert s.validate() == []
    d = s.diagram()
    assert pairs(d, ESSENTIAL) == [(1.0, 2.0)]


def test_w_shape_diagram_and_arrow():
    s = build([0, 3, 1, 4])
    assert s.validate() == []
    d = s.diagram()
    assert pairs(d, ORDINARY) == [(1.0, 3.0)]
    assert pairs(d, RELATIVE) == [(3.0, 1.0)]
    assert pairs(d, ESSENTIAL) == [(0.0, 4.0)]
    assert len(d.arrows) == 1
    (a,) = d.arrows
    assert a.tree == "up"
    assert (a.child.birth, a.child.death) == (1.0, 3.0)
    assert (a.parent.birth, a.parent.death) == (0.0, 4.0)


def test_hook_points_present_when_asked():
    s = build([0, 3, 1, 4])
    d = s.diagram(include_hooks=True)
    hook_pts = [p for p in d.points if p.from_hook]
    assert len(hook_pts) == 2  # one per tree at this shape


def test_five_items():
    s = build([2, 0, 4, 1, 5])
    assert s.validate() == []
    d = s.diagram()
    assert pairs(d, ORDINARY) == [(1.0, 4.0)]
    assert pairs(d, RELATIVE) == [(2.0, 0.0), (4.0, 1.0)]
    assert pairs(d, ESSENTIAL) == [(0.0, 5.0)]


def test_string_order_is_interval_order():
    for perm in itertools.permutations(range(1, 7)):
        s = build(list(perm))
        for tree in (s.up_tree, s.dn_tree):
            items = tree.string()
            labels = [it.label for it in items]
            assert labels == sorted(labels), (perm, tree.sign)


def test_string_covers_all_criticals():
    s = build([0, 3, 1, 4])
    up_items = s.up_tree.string()
    assert [getattr(i, "id") for i in up_items] == \
        [i.id for i in [s.list.real_at(1), s.list.real_at(2),
                        s.list.real_at(3), s.list.real_at(4), s.list.right_hook]]


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_exhaustive_small_against_oracle(n):
    for perm in itertools.permutations(range(1, n + 1)):
        vals = list(perm)
        s = build(vals)
        bad = s.validate()
        assert bad == [], (vals, bad)
        got = s.diagram()
        want = structure_diagram(s)
        assert diff(got, want) == 0, (vals, got.points, want.points)
        # spanning items must match too (diff already keys on them)
        assert got.point_keys() == want.point_keys()
        assert got.arrow_keys() == want.arrow_keys()


def test_random_larger_against_oracle():
    rng = random.Random(7)
    for _ in range(60):
        n = rng.randint(2, 40)
        vals = rng.sample(range(10 * n), n)
        s = build(vals)
        assert s.validate() == [], vals
        assert diff(s.diagram(), structure_diagram(s)) == 0, vals


def test_build_is_canonical_under_rebuild():
    rng = random.Random(9)
    for _ in range(30):
        n = rng.randint(2, 30)
        vals = [rng.uniform(-5, 5) for _ in range(n)]
        s = build(vals)
        assert s.equivalent_digest(s.rebuilt())


def test_ties_are_generic():
    s = build([5.0, 5.0, 5.0])
    assert s.validate() == []
    d = s.diagram()
    assert len(d.by_subdiagram(ESSENTIAL)) == 1


def test_build_linear_node_touches():
    import math
    ratios = []
    rng = random.Random(3)
    for exp in (10, 12, 14):
        n = 1 << exp
        vals = list(itertools.accumulate(rng.choice((-1.0, 1.0)) for _ in range(n)))
        s = BananaStructure()
        s.counters.reset()
        s = BananaStructure.from_values(vals)
        touches = s.counters.nodes_visited
        ratios.append(touches / n)
    assert max(ratios) < 12
    assert max(ratios) / min(ratios) < 2.0
