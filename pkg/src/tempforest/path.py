"""Temporal path with a fixed topology.

Vertices are 0..n-1 and edge ``i`` joins vertex ``i`` and ``i + 1``.  Four
successor forests are kept: the path rooted at its right end and at its
left end, each in forward and in mirrored time.  A query between distinct
vertices is an upward earliest-arrival query in exactly one of them.
"""
from __future__ import annotations

from .dynforest import DynamicForest
from .errors import PreconditionError
from .forest import _Twin
from .model import POS_INF, TemporalLabel, TimeValue

RIGHT, LEFT, RIGHT_MIRROR, LEFT_MIRROR = range(4)
_COPY_NAMES = ("right", "left", "right-mirror", "left-mirror")


class _PathTopo:
    """Parent map and labels of one rooted orientation of the path."""

    __slots__ = ("parent", "labels")

    def __init__(self, n, rightward):
        if rightward:
            self.parent = {i: i + 1 for i in range(n - 1)}
        else:
            self.parent = {i + 1: i for i in range(n - 1)}
        self.labels = {v: set() for v in self.parent}


class PathStructure:
    """EA/LD queries on a temporal path under label insertions and deletions.

    Edges may hold no labels at all: the topology is fixed, so deleting the
    last label of an edge is allowed.
    """

    def __init__(self, label_sets=(), n: int | None = None, forest: DynamicForest | None = None):
        label_sets = [list(s) for s in label_sets]
        if n is None:
            n = len(label_sets) + 1
        if n < 1:
            raise PreconditionError("a path needs at least one vertex")
        if len(label_sets) not in (0, n - 1):
            raise PreconditionError(f"expected {n - 1} label sets, got {len(label_sets)}")
        self.n = n
        self.labels: list[set[int]] = [set() for _ in range(n - 1)]
        for i, s in enumerate(label_sets):
            for l in s:
                if l in self.labels[i]:
                    raise PreconditionError(f"duplicate label {l} on edge {i}")
                self.labels[i].add(int(l))
        forest = DynamicForest() if forest is None else forest
        self.copies = []
        for c in range(4):
            topo = _PathTopo(n, c in (RIGHT, RIGHT_MIRROR))
            self.copies.append(_Twin(topo, c >= 2, forest=forest, name=_COPY_NAMES[c]))
        for c, tw in enumerate(self.copies):
            items = []
            for i, s in enumerate(self.labels):
                v = self._vertex(c, i)
                tw.attach(v)
                for l in sorted(s):
                    lab = TemporalLabel(l, l)
                    tw.topo.labels[v].add(lab)
                    items.append((v, lab))
            tw.bulk_load(items)

    @staticmethod
    def _vertex(copy, i):
        """Child vertex of edge ``i`` in the given copy."""
        return i if copy in (RIGHT, RIGHT_MIRROR) else i + 1

    def _edge(self, i):
        if not 0 <= i < self.n - 1:
            raise PreconditionError(f"edge index {i} out of range")

    def _vertex_check(self, i):
        if not 0 <= i < self.n:
            raise PreconditionError(f"vertex index {i} out of range")

    # -- updates -------------------------------------------------------------

    def add_label(self, i: int, l: int):
        self._edge(i)
        if l in self.labels[i]:
            raise PreconditionError(f"duplicate label {l} on edge {i}")
        self.labels[i].add(l)
        lab = TemporalLabel(l, l)
        for c, tw in enumerate(self.copies):
            v = self._vertex(c, i)
            tw.topo.labels[v].add(lab)
            tw.add_label(v, lab)

    def delete_label(self, i: int, l: int):
        self._edge(i)
        if l not in self.labels[i]:
            raise PreconditionError(f"label {l} not on edge {i}")
        self.labels[i].discard(l)
        lab = TemporalLabel(l, l)
        for c, tw in enumerate(self.copies):
            v = self._vertex(c, i)
            tw.topo.labels[v].discard(lab)
            tw.delete_label(v, lab)

    # -- successor forest access (for tests) ---------------------------------

    def sigma(self, i: int, l: int, copy: int = RIGHT):
        """Successor of node (l, i) in a copy as ``((label, edge), color)``
        in original time, or None."""
        self._edge(i)
        tw = self.copies[copy]
        s = tw.sigma(self._vertex(copy, i), tw.sign * l)
        if s is None:
            return None
        (l2, v2), color = s
        return (tw.sign * l2, v2 if copy in (RIGHT, RIGHT_MIRROR) else v2 - 1), color

    def fix_parent(self, copy: int, i: int, l: int):
        self._edge(i)
        tw = self.copies[copy]
        tw.fix_parent((tw.sign * l, self._vertex(copy, i)))

    # -- queries ---------------------------------------------------------------

    def ea(self, i: int, j: int, t: TimeValue) -> TimeValue:
        self._vertex_check(i)
        self._vertex_check(j)
        if i == j:
            return t
        if i < j:
            return self.copies[RIGHT].ea_up(i, j - i, t)
        return self.copies[LEFT].ea_up(i, i - j, t)

    def ld(self, i: int, j: int, t: TimeValue) -> TimeValue:
        self._vertex_check(i)
        self._vertex_check(j)
        if i == j:
            return t
        if i < j:
            return -self.copies[LEFT_MIRROR].ea_up(j, j - i, -t)
        return -self.copies[RIGHT_MIRROR].ea_up(j, i - j, -t)

    def reach(self, i: int, j: int, t_d: TimeValue, t_a: TimeValue) -> bool:
        a = self.ea(i, j, t_d)
        return a != POS_INF and a <= t_a

    # -- introspection ---------------------------------------------------------

    def validation_views(self):
        return self.copies

    def counters(self):
        return {
            "fixparent_calls": sum(tw.fixparent_calls for tw in self.copies),
            "rewires": sum(tw.rewires for tw in self.copies),
        }

    @property
    def label_count(self) -> int:
        return sum(len(s) for s in self.labels)
