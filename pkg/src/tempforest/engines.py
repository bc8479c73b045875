"""Uniform update/query surface over every structure, for the CLI.

The fixed-topology structures (hld, path) cannot link or cut; their engines
keep the plain forest as ground truth and rebuild on the first query after
a topology change.  Label updates between topology changes go straight to
the built structure.
"""
from __future__ import annotations

from .errors import NotAPathError, PreconditionError, UnknownVertexError
from .forest import TemporalForest
from .hld import HLDForest
from .latency import LatencyTemporalForest
from .model import NEG_INF, POS_INF, ForestTopology, TemporalLabel
from .oracle import OracleEngine
from .path import PathStructure

ENGINES = ("forest", "latency", "hld", "path", "oracle")


class _PathComponents:
    """One PathStructure per tree of the forest that is a path."""

    def __init__(self, topology: ForestTopology):
        self.topology = topology
        self.where: dict = {}        # vertex -> (component, index from the bottom)
        self.comps: list = []
        self.comp_of: dict = {}      # vertex -> component id or None (not a path)
        for r in sorted(topology.vertices):
            if r in topology.parent:
                continue
            verts, ok, stack = [], True, [r]
            while stack:
                v = stack.pop()
                verts.append(v)
                ch = topology.children.get(v, ())
                if len(ch) > 1:
                    ok = False
                stack.extend(ch)
            if not ok:
                for v in verts:
                    self.comp_of[v] = None
                continue
            verts.reverse()  # bottom first
            cid = len(self.comps)
            sets = [[lab.dep for lab in topology.labels[x]] for x in verts[:-1]]
            self.comps.append(PathStructure(sets, n=len(verts)))
            for i, v in enumerate(verts):
                self.where[v] = (cid, i)
                self.comp_of[v] = cid

    def _pair(self, u, v):
        for x in (u, v):
            if x not in self.topology.vertices:
                raise UnknownVertexError(f"unknown vertex {x}")
        if self.topology.root_of(u) != self.topology.root_of(v):
            return None
        if self.comp_of[u] is None:
            raise NotAPathError(f"the tree of vertex {u} is not a path")
        (cu, iu), (_, iv) = self.where[u], self.where[v]
        return self.comps[cu], iu, iv

    def ea(self, u, v, t):
        if u == v and u in self.topology.vertices:
            return t
        x = self._pair(u, v)
        return POS_INF if x is None else x[0].ea(x[1], x[2], t)

    def ld(self, u, v, t):
        if u == v and u in self.topology.vertices:
            return t
        x = self._pair(u, v)
        return NEG_INF if x is None else x[0].ld(x[1], x[2], t)

    def reach(self, u, v, t_d, t_a):
        if u == v and u in self.topology.vertices:
            return t_d <= t_a
        x = self._pair(u, v)
        return False if x is None else x[0].reach(x[1], x[2], t_d, t_a)

    def add_label(self, v, lab):
        if self.comp_of.get(v) is not None:
            cid, i = self.where[v]
            self.comps[cid].add_label(i, lab.dep)

    def delete_label(self, v, lab):
        if self.comp_of.get(v) is not None:
            cid, i = self.where[v]
            self.comps[cid].delete_label(i, lab.dep)

    def validation_views(self):
        return [tw for ps in self.comps for tw in ps.copies]

    def counters(self):
        out = {"fixparent_calls": 0, "rewires": 0}
        for ps in self.comps:
            for k, v in ps.counters().items():
                out[k] += v
        return out


class StaticEngine:
    """Lazily rebuilt fixed-topology structure behind the dynamic surface."""

    latency = False

    def __init__(self, kind: str):
        self.kind = kind
        self.topology = ForestTopology()
        self.built = None
        self.rebuilds = 0
        self._spent = {"fixparent_calls": 0, "rewires": 0}

    def _label(self, l, arr=None) -> TemporalLabel:
        if arr is not None and arr != l:
            raise PreconditionError("this structure has no latencies; arrival must equal departure")
        return TemporalLabel(int(l), int(l))

    def _drop(self):
        if self.built is not None:
            for k, v in self.built.counters().items():
                if k in self._spent:
                    self._spent[k] += v
            self.built = None

    def _structure(self):
        if self.built is None:
            if self.kind == "hld":
                self.built = HLDForest(self.topology)
            else:
                self.built = _PathComponents(self.topology.copy())
            self.rebuilds += 1
        return self.built

    def add_vertex(self, v):
        self.topology.add_vertex(v)
        self._drop()
        return v

    def delete_vertex(self, v):
        self.topology.delete_vertex(v)
        self._drop()

    def link(self, u, v, l, arr=None):
        self.topology.link(u, v, self._label(l, arr))
        self._drop()

    def cut(self, v):
        self.topology.cut(v)
        self._drop()

    def add_label(self, v, l, arr=None):
        lab = self._label(l, arr)
        self.topology.check_add_label(v, lab)
        if self.built is not None:
            if self.kind == "hld":
                self.built.add_label(v, lab.dep)
            else:
                self.built.add_label(v, lab)
        self.topology.labels[v].add(lab)

    def delete_label(self, v, l, arr=None):
        lab = self._label(l, arr)
        self.topology.check_delete_label(v, lab)
        if self.built is not None:
            if self.kind == "hld":
                self.built.delete_label(v, lab.dep)
            else:
                self.built.delete_label(v, lab)
        self.topology.labels[v].discard(lab)

    def ea(self, u, v, t):
        return self._structure().ea(u, v, t)

    def ld(self, u, v, t):
        return self._structure().ld(u, v, t)

    def reach(self, u, v, t_d, t_a):
        return self._structure().reach(u, v, t_d, t_a)

    def validation_views(self):
        return self._structure().validation_views()

    def counters(self):
        out = dict(self._spent)
        if self.built is not None:
            for k, v in self.built.counters().items():
                out[k] = out.get(k, 0) + v
        out["rebuilds"] = self.rebuilds
        return out


def make_engine(name: str):
    if name == "forest":
        return TemporalForest()
    if name == "latency":
        return LatencyTemporalForest()
    if name in ("hld", "path"):
        return StaticEngine(name)
    if name == "oracle":
        return OracleEngine(latency=True)
    raise ValueError(f"unknown engine {name!r}; choose from {', '.join(ENGINES)}")


def engine_latency(name: str) -> bool:
    """Whether the engine accepts arrival times distinct from departures."""
    return name in ("latency", "oracle")
