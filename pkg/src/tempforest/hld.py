"""Temporal forest with a fixed topology via heavy-light decomposition.

Each heavy path is extended by one edge toward the root, so every edge of
the forest lies on exactly one path and every ancestor-descendant walk is a
concatenation of O(log n) path segments.  Each path gets its own
:class:`PathStructure`; queries are composed segment by segment.
"""
from __future__ import annotations

import numpy as np

from .dynforest import DynamicForest
from .errors import PreconditionError, UnknownVertexError
from .model import NEG_INF, POS_INF, ForestTopology, TemporalLabel, TimeValue
from .path import PathStructure


class StaticLCA:
    """Euler tour with a sparse table of depth minima; O(1) queries."""

    def __init__(self, topology: ForestTopology):
        verts = sorted(topology.vertices)
        self.index = {v: i for i, v in enumerate(verts)}
        n = len(verts)
        self.verts = verts
        self.depth = np.zeros(n, dtype=np.int64)
        self.tree = np.full(n, -1, dtype=np.int64)
        self.first = np.zeros(n, dtype=np.int64)
        children = {v: sorted(topology.children.get(v, ())) for v in verts}
        euler: list[int] = []
        for r in verts:
            if r in topology.parent:
                continue
            ri = self.index[r]
            self.tree[ri] = ri
            stack = [(r, 0)]
            while stack:
                v, k = stack.pop()
                vi = self.index[v]
                if k == 0:
                    self.first[vi] = len(euler)
                euler.append(vi)
                ch = children[v]
                if k < len(ch):
                    stack.append((v, k + 1))
                    c = ch[k]
                    ci = self.index[c]
                    self.depth[ci] = self.depth[vi] + 1
                    self.tree[ci] = ri
                    stack.append((c, 0))
        e = np.asarray(euler, dtype=np.int64)
        self.table = [e]
        span = 1
        while 2 * span <= len(e):
            prev = self.table[-1]
            a, b = prev[:-span], prev[span:]
            self.table.append(np.where(self.depth[a] <= self.depth[b], a, b))
            span *= 2

    def lca(self, u, v):
        """Lowest common ancestor, or None across trees."""
        ui, vi = self.index[u], self.index[v]
        if self.tree[ui] != self.tree[vi]:
            return None
        lo, hi = sorted((int(self.first[ui]), int(self.first[vi])))
        k = (hi - lo + 1).bit_length() - 1
        t = self.table[k]
        a, b = t[lo], t[hi - (1 << k) + 1]
        return self.verts[a if self.depth[a] <= self.depth[b] else b]

    def depth_of(self, v) -> int:
        return int(self.depth[self.index[v]])


def heavy_paths(topology: ForestTopology):
    """Vertex lists (bottom first) of the extended heavy paths that have edges.

    The heavy child is the one with the largest subtree, ties going to the
    smallest vertex id.
    """
    children = {v: sorted(topology.children.get(v, ())) for v in topology.vertices}
    size = {}
    order = []
    for r in sorted(topology.vertices):
        if r in topology.parent:
            continue
        stack = [r]
        while stack:
            v = stack.pop()
            order.append(v)
            stack.extend(children[v])
    for v in reversed(order):
        size[v] = 1 + sum(size[c] for c in children[v])
    heavy = {}
    for v in order:
        if children[v]:
            heavy[v] = min(children[v], key=lambda c: (-size[c], c))
    paths = []
    for s in order:
        p = topology.parent.get(s)
        if p is not None and heavy[p] == s:
            continue
        chain = [s]
        while chain[-1] in heavy:
            chain.append(heavy[chain[-1]])
        chain.reverse()
        if p is not None:
            chain.append(p)
        if len(chain) >= 2:
            paths.append(chain)
    return paths


class HLDForest:
    """EA/LD/reachability on a fixed-topology temporal forest (no latencies)."""

    def __init__(self, topology: ForestTopology):
        problems = topology.validate()
        if problems:
            raise PreconditionError(f"invalid topology: {problems[0]}")
        for v, labs in topology.labels.items():
            for lab in labs:
                if lab.arr != lab.dep:
                    raise PreconditionError("this structure has no latencies; arrival must equal departure")
        self.topology = topology.copy()
        self.lca_index = StaticLCA(self.topology)
        self.forest = DynamicForest()
        self.paths: list[list[int]] = heavy_paths(self.topology)
        self.structures: list[PathStructure] = []
        self.path_of: dict[int, int] = {}
        self.idx: dict[int, int] = {}
        for pid, verts in enumerate(self.paths):
            sets = [[lab.dep for lab in self.topology.labels[x]] for x in verts[:-1]]
            self.structures.append(PathStructure(sets, forest=self.forest))
            for i, x in enumerate(verts[:-1]):
                self.path_of[x] = pid
                self.idx[x] = i
        self.last_segments = 0
        self.max_segments = 0

    # -- decomposition -----------------------------------------------------------

    def segments_up(self, u, w):
        """Segments (path id, lower index, upper index) from u up to ancestor w."""
        out = []
        depth = self.lca_index.depth_of
        dw = depth(w)
        x = u
        while x != w:
            pid = self.path_of[x]
            verts = self.paths[pid]
            top = verts[-1]
            i = self.idx[x]
            if depth(top) <= dw:
                out.append((pid, i, i + depth(x) - dw))
                break
            out.append((pid, i, len(verts) - 1))
            x = top
        return out

    def _split(self, u, v):
        for x in (u, v):
            if x not in self.topology.vertices:
                raise UnknownVertexError(f"unknown vertex {x}")
        w = self.lca_index.lca(u, v)
        if w is None:
            return None
        up, down = self.segments_up(u, w), self.segments_up(v, w)
        self.last_segments = len(up) + len(down)
        self.max_segments = max(self.max_segments, self.last_segments)
        return up, down

    # -- label updates -----------------------------------------------------------

    def _edge_of(self, v):
        self.topology.require(v)
        if v not in self.topology.parent:
            raise PreconditionError(f"vertex {v} is a root; it has no parent edge")
        return self.structures[self.path_of[v]], self.idx[v]

    def add_label(self, v, l, arr=None):
        if arr is not None and arr != l:
            raise PreconditionError("this structure has no latencies; arrival must equal departure")
        lab = TemporalLabel(int(l), int(l))
        self.topology.check_add_label(v, lab)
        ps, i = self._edge_of(v)
        ps.add_label(i, lab.dep)
        self.topology.labels[v].add(lab)

    def delete_label(self, v, l, arr=None):
        if arr is not None and arr != l:
            raise PreconditionError("this structure has no latencies; arrival must equal departure")
        lab = TemporalLabel(int(l), int(l))
        self.topology.check_delete_label(v, lab)
        ps, i = self._edge_of(v)
        ps.delete_label(i, lab.dep)
        self.topology.labels[v].discard(lab)

    # -- queries -----------------------------------------------------------------

    def _ea_up(self, segs, t):
        for pid, i, j in segs:
            if t == POS_INF:
                break
            t = self.structures[pid].ea(i, j, t)
        return t

    def _ea_down(self, segs, t):
        for pid, i, j in reversed(segs):
            if t == POS_INF:
                break
            t = self.structures[pid].ea(j, i, t)
        return t

    def _ld_down(self, segs, t):
        """Latest departure from the top of ``segs`` reaching its bottom by t."""
        for pid, i, j in segs:
            if t == NEG_INF:
                break
            t = self.structures[pid].ld(j, i, t)
        return t

    def _ld_up(self, segs, t):
        for pid, i, j in reversed(segs):
            if t == NEG_INF:
                break
            t = self.structures[pid].ld(i, j, t)
        return t

    def ea(self, u, v, t: TimeValue) -> TimeValue:
        sp = self._split(u, v)
        if u == v:
            return t
        if sp is None:
            return POS_INF
        up, down = sp
        return self._ea_down(down, self._ea_up(up, t))

    def ld(self, u, v, t: TimeValue) -> TimeValue:
        sp = self._split(u, v)
        if u == v:
            return t
        if sp is None:
            return NEG_INF
        up, down = sp
        return self._ld_up(up, self._ld_down(down, t))

    def reach(self, u, v, t_d: TimeValue, t_a: TimeValue) -> bool:
        sp = self._split(u, v)
        if u == v:
            return t_d <= t_a
        if sp is None:
            return False
        up, down = sp
        a = self._ea_up(up, t_d)
        b = self._ld_down(down, t_a)
        return a != POS_INF and b != NEG_INF and a <= b

    # -- introspection -------------------------------------------------------------

    def validation_views(self):
        return [tw for ps in self.structures for tw in ps.copies]

    def counters(self):
        return {
            "fixparent_calls": sum(ps.counters()["fixparent_calls"] for ps in self.structures),
            "rewires": sum(ps.counters()["rewires"] for ps in self.structures),
            "max_segments": self.max_segments,
        }

    @property
    def label_count(self) -> int:
        return self.topology.label_count()
