"""Totally ordered values: a real plus two scales of symbolic infinitesimals.

Every value in the structure is an ``ExtValue``.  Ordering is lexicographic
on ``(kind, real, tie, eps)``:

* ``kind`` separates -infinity < finite < +infinity,
* ``real`` is the user-supplied number,
* ``tie`` breaks ties between equal reals; it carries the id of the item the
  value is anchored to, so equal reals behave like a consistent tiny
  perturbation (older item = smaller value),
* ``eps`` counts steps of an infinitesimal smaller than any gap left open by
  the tie-break.  Hooks sit one eps step inside their end item, dummy leaves
  one eps step off the value they shadow.

Negating all four components gives the ordering of the negated map, which is
how the down-tree compares values.
"""

from __future__ import annotations

from fractions import Fraction

MINUS_INF = -1
FINITE = 0
PLUS_INF = 1

MAX_EPS = 4


class ExtValue:
    __slots__ = ("kind", "real", "tie", "eps")

    def __init__(self, real=0.0, tie=0, eps=0, kind=FINITE):
        self.kind = kind
        self.real = real
        self.tie = tie
        self.eps = eps

    def key(self):
        return (self.kind, self.real, self.tie, self.eps)

    def shifted(self, d_eps):
        """Same value moved d_eps infinitesimal steps."""
        return ExtValue(self.real, self.tie, self.eps + d_eps, self.kind)

    def __eq__(self, other):
        return self.key() == other.key()

    def __lt__(self, other):
        return self.key() < other.key()

    def __le__(self, other):
        return self.key() <= other.key()

    def __gt__(self, other):
        return self.key() > other.key()

    def __ge__(self, other):
        return self.key() >= other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.kind == PLUS_INF:
            return f"ExtValue(+inf{self.eps:+d})" if self.eps else "ExtValue(+inf)"
        if self.kind == MINUS_INF:
            return "ExtValue(-inf)"
        s = f"{self.real!r}"
        if self.tie:
            s += f"~{self.tie}"
        if self.eps:
            s += f"{self.eps:+d}e"
        return f"ExtValue({s})"


def make_value(real, eps=0, tie=0):
    """Finite ExtValue with the given components; |eps| must stay small."""
    if abs(eps) > MAX_EPS:
        raise ValueError(f"eps offset {eps} out of range [-{MAX_EPS}, {MAX_EPS}]")
    return ExtValue(float(real), tie, eps)


def plus_inf(eps=0):
    return ExtValue(0.0, 0, eps, PLUS_INF)


def minus_inf():
    return ExtValue(0.0, 0, 0, MINUS_INF)


def neg_key(key):
    """Key of the negated value; orders the negated map."""
    return (-key[0], -key[1], -key[2], -key[3])


def cmp_key_midpoint(key, a_key, b_key):
    """Compare a value key against the exact midpoint of two finite keys.

    Returns -1, 0, +1.  Exact: floats are lifted to rationals, so values of
    other items falling precisely on the midpoint are detected rather than
    misordered.
    """
    if key[0] != 0 or a_key[0] != 0 or b_key[0] != 0:
        # Infinities never average with finites here; compare kinds directly.
        mid_kind = (a_key[0] + b_key[0]) / 2.0
        return -1 if key[0] < mid_kind else (1 if key[0] > mid_kind else 0)
    lhs = 2 * Fraction(key[1])
    rhs = Fraction(a_key[1]) + Fraction(b_key[1])
    if lhs != rhs:
        return -1 if lhs < rhs else 1
    lt = 2 * key[2]
    rt = a_key[2] + b_key[2]
    if lt != rt:
        return -1 if lt < rt else 1
    le = 2 * key[3]
    re = a_key[3] + b_key[3]
    if le != re:
        return -1 if le < re else 1
    return 0
