"""Operation cost counters used to check the update-cost claims empirically."""

from __future__ import annotations


class CostCounters:
    __slots__ = ("nodes_visited", "interchanges_max", "interchanges_min",
                 "cancellations", "anticancellations", "slides", "dict_ops")

    FIELDS = ("nodes_visited", "interchanges_max", "interchanges_min",
              "cancellations", "anticancellations", "slides", "dict_ops")

    def __init__(self):
        self.reset()

    def reset(self):
        for f in self.FIELDS:
            setattr(self, f, 0)

    def visit(self, n=1):
        self.nodes_visited += n

    def snapshot(self):
        return {f: getattr(self, f) for f in self.FIELDS}

    def add(self, other):
        for f in self.FIELDS:
            setattr(self, f, getattr(self, f) + getattr(other, f))

    def __repr__(self):
        inner = ", ".join(f"{f}={getattr(self, f)}" for f in self.FIELDS)
        return f"CostCounters({inner})"
