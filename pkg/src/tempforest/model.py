"""Shared vocabulary: extended-integer times, labels and the plain forest.

Times are Python ints, with ``POS_INF``/``NEG_INF`` (the float infinities)
as the two sentinels.  Finite times are never reserved integers, so any
64-bit value is usable, and comparisons between ints and the sentinels are
exact.
"""
from __future__ import annotations

import copy
import math
from dataclasses import dataclass
from typing import NamedTuple, Union

from .errors import PreconditionError, UnknownVertexError

TimeValue = Union[int, float]

POS_INF: float = math.inf
NEG_INF: float = -math.inf


def tv_neg(t: TimeValue) -> TimeValue:
    return -t


def is_finite(t: TimeValue) -> bool:
    return t != POS_INF and t != NEG_INF


def parse_time(tok: str) -> TimeValue:
    if tok in ("+inf", "inf"):
        return POS_INF
    if tok == "-inf":
        return NEG_INF
    try:
        return int(tok)
    except ValueError:
        raise ValueError(f"bad time token {tok!r}") from None


def format_time(t: TimeValue) -> str:
    if t == POS_INF:
        return "+inf"
    if t == NEG_INF:
        return "-inf"
    return str(int(t))


class TemporalLabel(NamedTuple):
    """Departure ``dep`` and arrival ``arr``; ``arr == dep`` without latency."""

    dep: int
    arr: int

    @classmethod
    def of(cls, dep: int, arr: int | None = None) -> "TemporalLabel":
        if arr is None:
            arr = dep
        if arr < dep:
            raise PreconditionError(f"arrival {arr} precedes departure {dep}")
        return cls(int(dep), int(arr))

    @property
    def latency(self) -> int:
        return self.arr - self.dep

    def mirrored(self) -> "TemporalLabel":
        """The label read backwards in negated time."""
        return TemporalLabel(-self.arr, -self.dep)


@dataclass(frozen=True)
class Update:
    """One update of the plain forest: ``op`` is one of
    addv, delv, link, cut, addl, dell."""

    op: str
    args: tuple


class ForestTopology:
    """Plain mutable temporal forest; the ground truth for the oracle.

    ``parent[v]`` exists only for non-roots and ``labels[v]`` holds the label
    set of the edge from ``v`` to its parent.
    """

    def __init__(self):
        self.vertices: set[int] = set()
        self.parent: dict[int, int] = {}
        self.children: dict[int, set[int]] = {}
        self.labels: dict[int, set[TemporalLabel]] = {}

    def copy(self) -> "ForestTopology":
        return copy.deepcopy(self)

    def __eq__(self, other):
        if not isinstance(other, ForestTopology):
            return NotImplemented
        return (self.vertices == other.vertices and self.parent == other.parent
                and self.labels == other.labels)

    # -- reads -------------------------------------------------------------

    def require(self, v):
        if v not in self.vertices:
            raise UnknownVertexError(f"unknown vertex {v}")

    def is_root(self, v) -> bool:
        return v not in self.parent

    def is_leaf(self, v) -> bool:
        return not self.children.get(v)

    def root_of(self, v):
        while v in self.parent:
            v = self.parent[v]
        return v

    def depth(self, v) -> int:
        d = 0
        while v in self.parent:
            v = self.parent[v]
            d += 1
        return d

    def lca(self, u, v):
        """Lowest common ancestor, or None when ``u`` and ``v`` lie in different trees."""
        seen = {u}
        x = u
        while x in self.parent:
            x = self.parent[x]
            seen.add(x)
        x = v
        while x not in seen:
            if x not in self.parent:
                return None
            x = self.parent[x]
        return x

    def edge_path(self, u, v):
        """Edges (as child vertices) on the u-v path, in travel order.

        Returns None when the vertices are in different trees.
        """
        w = self.lca(u, v)
        if w is None:
            return None
        up = []
        x = u
        while x != w:
            up.append(x)
            x = self.parent[x]
        down = []
        x = v
        while x != w:
            down.append(x)
            x = self.parent[x]
        down.reverse()
        return up + down

    def edge_count(self) -> int:
        return len(self.parent)

    def label_count(self) -> int:
        return sum(len(s) for s in self.labels.values())

    # -- updates (validate first, then mutate) -----------------------------

    def add_vertex(self, v):
        if v in self.vertices:
            raise PreconditionError(f"vertex {v} already exists")
        self.vertices.add(v)

    def delete_vertex(self, v):
        self.require(v)
        if v in self.parent or self.children.get(v):
            raise PreconditionError(f"vertex {v} is not a singleton")
        self.vertices.discard(v)
        self.children.pop(v, None)

    def check_link(self, u, v, label: TemporalLabel):
        self.require(u)
        self.require(v)
        if u in self.parent:
            raise PreconditionError(f"vertex {u} is not a root")
        if self.root_of(v) == u:
            raise PreconditionError(f"vertices {u} and {v} are in the same tree")

    def link(self, u, v, label: TemporalLabel, check=True):
        if check:
            self.check_link(u, v, label)
        self.parent[u] = v
        self.children.setdefault(v, set()).add(u)
        self.labels[u] = {label}

    def check_cut(self, v):
        self.require(v)
        if v not in self.parent:
            raise PreconditionError(f"vertex {v} is a root")
        if len(self.labels[v]) != 1:
            raise PreconditionError(f"edge of {v} has {len(self.labels[v])} labels; cut needs exactly one")

    def cut(self, v):
        self.check_cut(v)
        p = self.parent.pop(v)
        self.children[p].discard(v)
        del self.labels[v]

    def check_add_label(self, v, label: TemporalLabel):
        self.require(v)
        if v not in self.parent:
            raise PreconditionError(f"vertex {v} is a root; it has no parent edge")
        if label in self.labels[v]:
            raise PreconditionError(f"duplicate label {tuple(label)} on edge of {v}")

    def add_label(self, v, label: TemporalLabel):
        self.check_add_label(v, label)
        self.labels[v].add(label)

    def check_delete_label(self, v, label: TemporalLabel):
        self.require(v)
        if v not in self.parent:
            raise PreconditionError(f"vertex {v} is a root; it has no parent edge")
        if label not in self.labels[v]:
            raise PreconditionError(f"label {tuple(label)} not on edge of {v}")
        if len(self.labels[v]) < 2:
            raise PreconditionError("last label requires cut")

    def delete_label(self, v, label: TemporalLabel):
        self.check_delete_label(v, label)
        self.labels[v].discard(label)

    def validate(self) -> list[str]:
        """Full invariant walk; returns a list of problems (empty when valid)."""
        problems = []
        for v, p in self.parent.items():
            if v not in self.vertices or p not in self.vertices:
                problems.append(f"edge {v}->{p} has an unknown endpoint")
            if v not in self.children.get(p, ()):
                problems.append(f"children index misses {v} under {p}")
            if not self.labels.get(v):
                problems.append(f"edge of {v} has no labels")
        for p, cs in self.children.items():
            for c in cs:
                if self.parent.get(c) != p:
                    problems.append(f"stale child {c} under {p}")
        if set(self.labels) != set(self.parent):
            problems.append("label map keys differ from non-root vertices")
        acyclic: set = set()  # vertices whose root walk is known to terminate
        for v in self.vertices:
            walk, on_walk = [], set()
            x = v
            while x in self.parent and x not in acyclic:
                if x in on_walk:
                    problems.append(f"cycle through {v}")
                    break
                walk.append(x)
                on_walk.add(x)
                x = self.parent[x]
            else:
                acyclic.update(walk)
        return problems


_APPLY = {
    "addv": ForestTopology.add_vertex,
    "delv": ForestTopology.delete_vertex,
    "link": ForestTopology.link,
    "cut": ForestTopology.cut,
    "addl": ForestTopology.add_label,
    "dell": ForestTopology.delete_label,
}


def topo_apply(topology: ForestTopology, update: Update) -> ForestTopology:
    """Apply ``update`` in place; raises PreconditionError and leaves the
    topology untouched when the update is not allowed."""
    try:
        fn = _APPLY[update.op]
    except KeyError:
        raise PreconditionError(f"unknown update {update.op!r}") from None
    fn(topology, *update.args)
    return topology
