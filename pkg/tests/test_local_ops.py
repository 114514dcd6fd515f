from __future__ import annotations

import itertools
import random

import pytest

from banana_ph.diagram import ORDINARY, RELATIVE, ESSENTIAL, diff
from banana_ph.oracle import structure_diagram
from banana_ph.structure import BananaStructure


def build(vals):
    return BananaStructure.from_values(vals)


def check(s, context=""):
    bad = s.validate()
    assert bad == [], (context, bad)
    assert s.equivalent_digest(s.rebuilt()), (context, s.values())
    assert diff(s.diagram(), structure_diagram(s)) == 0, (context, s.values())


def pairs(d, sub):
    return sorted((p.birth, p.death) for p in d.by_subdiagram(sub))


def test_noop_change():
    s = build([0, 3, 1, 4])
    out = s.change_value(2, 3.0)
    assert out.k == 0
    assert out.primitives == []
    check(s)


def test_value_change_same_shape():
    s = build([0, 3, 1, 4])
    out = s.change_value(2, 3.5)
    assert s.values() == [0, 3.5, 1, 4]
    check(s, "3->3.5")
    # same structure shape; the ordinary point, the relative point, and the
    # arrow all change a coordinate (two symmetric-difference entries each)
    assert out.k == 6


def test_interior_max_rises_past_global():
    s = build([0, 3, 1, 4])
    out = s.change_value(3, 5)   # the min at 1 rises until non-critical, then max
    assert s.values() == [0, 3, 5, 4]
    check(s, "1->5")
    d = s.diagram()
    assert pairs(d, ORDINARY) == [(4.0, 5.0)]
    assert pairs(d, ESSENTIAL) == [(0.0, 5.0)]
    assert pairs(d, RELATIVE) == []


def test_cancellation():
    s = build([0, 3, 1, 4])
    s.change_value(2, 0.5)      # max at 3 falls below the min at 1: cancel
    assert s.values() == [0, 0.5, 1, 4]
    check(s, "cancel")
    d = s.diagram()
    assert pairs(d, ORDINARY) == []
    assert pairs(d, RELATIVE) == []


def test_anti_cancellation():
    s = build([0, 4, 2, 2.5, 3, 5])
    out = s.change_value(4, 3.5)   # riser in an ascending run: new pair
    check(s, "anti-cancel")
    assert "anti_cancel" in out.primitives
    assert out.k_prime >= 0


def test_slide():
    s = build([0, 3, 1, 4, 2])
    out = s.change_value(4, 1.5)   # max at 4 slides to the end item
    check(s, "slide")
    assert "slide" in out.primitives


def test_slide_then_back_is_involution():
    s = build([0, 3, 1, 4, 2])
    ref = s.digest()
    s.change_value(4, 1.5)
    s.change_value(4, 4.0)
    assert s.digest() == ref


def test_endpoint_rise():
    s = build([1, 2, 0.5, 3])
    s.change_value(1, 2.5)     # left endpoint rises past its neighbor
    check(s, "endpoint rise")


def test_endpoint_fall():
    s = build([2, 1, 3, 0, 4])
    s.change_value(1, 0.5)
    check(s, "endpoint fall")


def test_change_last_endpoint():
    s = build([0, 3, 1, 4])
    s.change_value(4, 0.5)
    check(s, "right endpoint fall")
    s.change_value(4, 9.0)
    check(s, "right endpoint rise")


def test_insert_interior():
    s = build([0, 3])
    out = s.insert(2, 1)    # -> [0, 3, 1]
    assert s.values() == [0, 3, 1]
    check(s, "insert end")
    d = s.diagram()
    assert pairs(d, ORDINARY) == [(1.0, 3.0)]
    assert pairs(d, ESSENTIAL) == [(0.0, 3.0)]


def test_insert_no_change():
    s = build([0, 3, 1])
    out = s.insert(1, 2)    # -> [0, 2, 3, 1]
    assert s.values() == [0, 2, 3, 1]
    check(s, "insert non-critical")
    assert out.k == 0


def test_insert_into_single():
    s = build([5])
    s.insert(1, 7)
    assert s.values() == [5, 7]
    check(s, "lazy build")


def test_delete_interior_max():
    s = build([0, 3, 1, 4])
    s.delete(2)
    assert s.values() == [0, 1, 4]
    check(s, "delete max")
    d = s.diagram()
    assert pairs(d, ORDINARY) == []
    assert pairs(d, ESSENTIAL) == [(0.0, 4.0)]


def test_delete_non_critical():
    s = build([0, 2, 3, 1])
    out = s.delete(2)
    assert s.values() == [0, 3, 1]
    check(s, "delete non-critical")
    assert out.k == 0
    assert out.primitives == []


def test_delete_endpoint():
    s = build([0, 3, 1, 4, 2])
    s.delete(5)
    assert s.values() == [0, 3, 1, 4]
    check(s, "delete right endpoint")
    s2 = build([0, 3, 1, 4, 2])
    s2.delete(1)
    assert s2.values() == [3, 1, 4, 2]
    check(s2, "delete left endpoint")


def test_delete_global_max_of_w():
    s = build([0, 5, 1, 4, 2])
    s.delete(2)
    assert s.values() == [0, 1, 4, 2]
    check(s, "delete global max")
    d = s.diagram()
    assert pairs(d, ESSENTIAL) == [(0.0, 4.0)]


@pytest.mark.parametrize("n", [3, 4, 5])
def test_exhaustive_single_change(n):
    # every permutation, every item, a few targets crossing various regimes
    targets = [-0.5, 1.5, 2.5, 3.5, n + 0.5]
    for perm in itertools.permutations(range(1, n + 1)):
        for pos in range(1, n + 1):
            for t in targets:
                s = build(list(perm))
                s.change_value(pos, t)
                check(s, f"{perm} pos={pos} t={t}")


def test_randomized_edit_storm():
    rng = random.Random(42)
    s = build([rng.uniform(0, 100) for _ in range(8)])
    for step in range(400):
        n = s.size()
        op = rng.random()
        if op < 0.5 or n <= 3:
            if n >= 1:
                pos = rng.randint(1, n)
                s.change_value(pos, rng.uniform(0, 100))
        elif op < 0.75 and n < 40:
            s.insert(rng.randint(0, n), rng.uniform(0, 100))
        elif n > 3:
            s.delete(rng.randint(1, n))
        if s.size() >= 2:
            check(s, f"step {step}")
