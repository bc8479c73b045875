"""Fully dynamic temporal forest (no latencies).

The structure keeps two successor forests: one for F and one for the
time-mirrored forest -F.  Each successor forest has one node ``(label, v)``
per label on the edge from ``v`` to its parent; the node's parent is its
successor as defined by :meth:`_Twin.sigma`.  Upward earliest-arrival
queries are a successor lookup followed by one weighted level-ancestor
query; everything else is reduced to that via the mirror and LCA splits.
"""
from __future__ import annotations

from .dynforest import DynamicForest
from .errors import PreconditionError, UnknownVertexError
from .model import NEG_INF, POS_INF, ForestTopology, TemporalLabel, TimeValue
from .ordered import OrderedIndex

RED = 0
BLUE = 1
_HI = POS_INF


class _ViewMixin:
    """Validation view consumed by :func:`tempforest.oracle.or_validate`."""

    latency = False

    def handle_of(self, key):
        return self.handle[key]

    def key_of(self, h):
        return self.key[h]

    def node_keys(self):
        return list(self.handle)

    def blocks(self):
        return {p: list(b) for p, b in self.B.items()}

    def heads(self):
        return None

    @property
    def parent(self):
        return self.topo.parent

    @property
    def labels(self):
        tr = self.transform
        return {v: {tr(lab) for lab in s} for v, s in self.topo.labels.items()}

    def snapshot(self):
        """Parent key (or None) of every node; for before/after diffs."""
        f = self.forest
        out = {}
        for k, h in self.handle.items():
            p = f.parent(h)
            out[k] = None if p is None else self.key[p]
        return out


class _Twin(_ViewMixin):
    """Successor forest of one time orientation of the shared topology."""

    def __init__(self, topo: ForestTopology, mirror: bool, forest: DynamicForest | None = None,
                 name: str | None = None):
        self.topo = topo
        self.mirror = mirror
        self.sign = -1 if mirror else 1
        self.name = name or ("mirror" if mirror else "forward")
        self.forest = DynamicForest() if forest is None else forest
        self.D: dict[int, OrderedIndex] = {}
        self.B: dict[int, OrderedIndex] = {}
        self.handle: dict = {}
        self.key: dict = {}
        self.fixparent_calls = 0
        self.rewires = 0
        self.last_deleted_degree = 0

    def transform(self, lab: TemporalLabel) -> TemporalLabel:
        return lab.mirrored() if self.mirror else lab

    # -- successor function and repair -------------------------------------

    def sigma(self, v, l):
        """Successor-forest parent of node (l, v) as ``(key, color)`` or None."""
        topo = self.topo
        p = topo.parent[v]
        nxt = self.B[p].succ((l, v), strict=True)
        if p not in topo.parent:
            return None if nxt is None else (nxt, RED)
        lp = self.D[p].succ(l)
        if nxt is not None and (lp is None or nxt[0] <= lp):
            return nxt, RED
        if lp is not None:
            return (lp, p), BLUE
        return None

    def _sigma_key(self, key):
        return self.sigma(key[1], key[0])

    def _after_fix(self, key, s):
        pass

    def fix_parent(self, key, fresh=False):
        f = self.forest
        h = self.handle[key]
        old = f.parent(h)
        if old is not None:
            f.cut(h)
        s = self._sigma_key(key)
        new = None
        if s is not None:
            new = self.handle[s[0]]
            f.link(h, new, s[1])
        self._after_fix(key, s)
        self.fixparent_calls += 1
        if not fresh and old != new:
            self.rewires += 1

    # -- label updates -----------------------------------------------------

    def _new_node(self, key):
        h = self.forest.add_node()
        self.handle[key] = h
        self.key[h] = key
        return h

    def attach(self, v):
        self.D[v] = OrderedIndex()

    def _key(self, v, tl: TemporalLabel):
        return (tl.dep, v)

    def _d_insert(self, v, tl: TemporalLabel):
        self.D[v].insert(tl.dep)

    def bulk_load(self, items):
        """Build from scratch: ``items`` yields (vertex, label) for every label
        of the (already populated) topology.  Sets each parent from sigma
        directly instead of running the update procedures."""
        parent = self.topo.parent
        blocks: dict = {}
        for v, lab in items:
            tl = self.transform(lab)
            if v not in self.D:
                self.attach(v)
            self._d_insert(v, tl)
            key = self._key(v, tl)
            self._new_node(key)
            blocks.setdefault(parent[v], []).append(key)
        for p, ks in blocks.items():
            self.B[p] = OrderedIndex(ks)
        f = self.forest
        for ks in blocks.values():
            for key in ks:
                s = self._sigma_key(key)
                if s is not None:
                    f.link(self.handle[key], self.handle[s[0]], s[1])
                self._after_fix(key, s)

    def detach(self, v):
        del self.D[v]

    def add_label(self, v, lab: TemporalLabel):
        l = self.transform(lab).dep
        p = self.topo.parent[v]
        key = (l, v)
        self._new_node(key)
        self.D[v].insert(l)
        self.B.setdefault(p, OrderedIndex()).insert(key)
        bv = self.B.get(v)
        if bv:
            x = bv.pred((l, _HI))
            if x is not None:
                self.fix_parent(x)
        self.fix_parent(key, fresh=True)
        y = self.B[p].pred(key, strict=True)
        if y is not None:
            self.fix_parent(y)

    def delete_label(self, v, lab: TemporalLabel):
        l = self.transform(lab).dep
        p = self.topo.parent[v]
        key = (l, v)
        f = self.forest
        h = self.handle[key]
        self.last_deleted_degree = f.child_count(h)
        self.D[v].delete(l)
        bp = self.B[p]
        bp.delete(key)
        if not bp:
            del self.B[p]
        if f.parent(h) is not None:
            f.cut(h)
        bv = self.B.get(v)
        if bv:
            x = bv.pred((l, _HI))
            if x is not None:
                self.fix_parent(x)
        if p in self.B:
            y = self.B[p].pred(key, strict=True)
            if y is not None:
                self.fix_parent(y)
        # every former child was re-parented above
        f.remove_node(h)
        del self.handle[key]
        del self.key[h]

    # -- queries (in this twin's time orientation) -------------------------

    def ea_up(self, u, hops, t):
        """Earliest arrival from ``u`` at its ancestor ``hops`` edges up."""
        l = self.D[u].succ(t)
        if l is None:
            return POS_INF
        a = self.forest.wla(self.handle[(l, u)], hops - 1)
        return POS_INF if a is None else self.key[a][0]

    def ld_up(self, u, hops, t):
        """Latest departure from ``u`` reaching its ancestor ``hops`` edges up by ``t``."""
        d = self.D[u]
        lo, hi = 0, len(d)
        while lo < hi:
            mid = (lo + hi) // 2
            a = self.ea_up(u, hops, d[mid])
            if a != POS_INF and a <= t:
                lo = mid + 1
            else:
                hi = mid
        return NEG_INF if lo == 0 else d[lo - 1]

    def counters(self):
        return {
            "fixparent_calls": self.fixparent_calls,
            "rewires": self.rewires,
            "primitive_calls": self.forest.primitive_calls,
        }


class _ForestBase:
    """Topology handling and query composition shared by both forest variants."""

    _twin_class = None

    def __init__(self):
        self.topology = ForestTopology()
        self._F = DynamicForest()
        self._fh: dict[int, int] = {}
        self.twins = (self._twin_class(self.topology, False),
                      self._twin_class(self.topology, True))
        self._next_vertex = 0

    @classmethod
    def from_topology(cls, topology: ForestTopology):
        """Bulk construction from a valid plain forest."""
        problems = topology.validate()
        if problems:
            raise PreconditionError(f"invalid topology: {problems[0]}")
        self = cls()
        topo = self.topology
        topo.vertices = set(topology.vertices)
        items = []
        for v, p in topology.parent.items():
            labs = {self._label(*lab) for lab in topology.labels[v]}
            topo.link(v, p, next(iter(labs)), check=False)
            topo.labels[v] = labs
            items.extend((v, lab) for lab in sorted(labs))
        for v, p in topology.parent.items():
            self._F.link(self._backing(v), self._backing(p), 1)
        for tw in self.twins:
            tw.bulk_load(items)
        if topo.vertices:
            self._next_vertex = max(topo.vertices) + 1
        return self

    # -- label conversion (overridden with latencies) ----------------------

    def _label(self, l, arr=None) -> TemporalLabel:
        if arr is not None and arr != l:
            raise PreconditionError("this structure has no latencies; arrival must equal departure")
        return TemporalLabel(int(l), int(l))

    # -- F backing ---------------------------------------------------------

    def _backing(self, v):
        h = self._fh.get(v)
        if h is None:
            h = self._F.add_node()
            self._fh[v] = h
        return h

    def _maybe_drop(self, v):
        topo = self.topology
        if v not in topo.parent and not topo.children.get(v):
            h = self._fh.pop(v, None)
            if h is not None:
                self._F.remove_node(h)

    def _relation(self, u, v):
        """(lca, hops u->lca, hops lca->v) or None when in different trees."""
        hu = self._fh.get(u)
        hv = self._fh.get(v)
        if hu is None or hv is None:
            return None
        F = self._F
        hw = F.lca(hu, hv)
        if hw is None:
            return None
        dw = F.depth(hw)
        return hw, F.depth(hu) - dw, F.depth(hv) - dw

    def same_tree(self, u, v) -> bool:
        self.topology.require(u)
        self.topology.require(v)
        return u == v or self._relation(u, v) is not None

    # -- topology updates --------------------------------------------------

    def add_vertex(self, v=None):
        if v is None:
            while self._next_vertex in self.topology.vertices:
                self._next_vertex += 1
            v = self._next_vertex
        self.topology.add_vertex(v)
        return v

    def delete_vertex(self, v):
        self.topology.delete_vertex(v)
        self._maybe_drop(v)

    def link(self, u, v, l, arr=None):
        """Make root ``u`` a child of ``v`` in another tree, with one label."""
        topo = self.topology
        lab = self._label(l, arr)
        topo.require(u)
        topo.require(v)
        if u in topo.parent:
            raise PreconditionError(f"vertex {u} is not a root")
        if u == v or (u in self._fh and v in self._fh
                      and self._F.root(self._fh[v]) == self._fh[u]):
            raise PreconditionError(f"vertices {u} and {v} are in the same tree")
        self._F.link(self._backing(u), self._backing(v), 1)
        topo.link(u, v, lab, check=False)
        for tw in self.twins:
            tw.attach(u)
            tw.add_label(u, lab)

    def cut(self, v):
        topo = self.topology
        topo.check_cut(v)
        (lab,) = topo.labels[v]
        p = topo.parent[v]
        for tw in self.twins:
            tw.delete_label(v, lab)
            tw.detach(v)
        topo.cut(v)
        self._F.cut(self._fh[v])
        self._maybe_drop(v)
        self._maybe_drop(p)

    def add_label(self, v, l, arr=None):
        lab = self._label(l, arr)
        self.topology.check_add_label(v, lab)
        self.topology.labels[v].add(lab)
        for tw in self.twins:
            tw.add_label(v, lab)

    def delete_label(self, v, l, arr=None):
        lab = self._label(l, arr)
        self.topology.check_delete_label(v, lab)
        self.topology.labels[v].discard(lab)
        for tw in self.twins:
            tw.delete_label(v, lab)

    # -- queries -------------------------------------------------------------

    def _check_pair(self, u, v):
        topo = self.topology
        if u not in topo.vertices:
            raise UnknownVertexError(f"unknown vertex {u}")
        if v not in topo.vertices:
            raise UnknownVertexError(f"unknown vertex {v}")

    def ea(self, u, v, t: TimeValue) -> TimeValue:
        """Earliest arrival at ``v`` leaving ``u`` no earlier than ``t``."""
        self._check_pair(u, v)
        if u == v:
            return t
        rel = self._relation(u, v)
        if rel is None:
            return POS_INF
        _, up, down = rel
        fwd, mir = self.twins
        a = t
        if up:
            a = fwd.ea_up(u, up, a)
        if down and a != POS_INF:
            a = -mir.ld_up(v, down, -a)
        return a

    def ld(self, u, v, t: TimeValue) -> TimeValue:
        """Latest departure from ``u`` reaching ``v`` no later than ``t``."""
        self._check_pair(u, v)
        if u == v:
            return t
        rel = self._relation(u, v)
        if rel is None:
            return NEG_INF
        _, up, down = rel
        fwd, mir = self.twins
        d = t
        if down:
            d = -mir.ea_up(v, down, -d)
        if up and d != NEG_INF:
            d = fwd.ld_up(u, up, d)
        return d

    def reach(self, u, v, t_d: TimeValue, t_a: TimeValue) -> bool:
        self._check_pair(u, v)
        if u == v:
            return t_d <= t_a
        rel = self._relation(u, v)
        if rel is None:
            return False
        _, up, down = rel
        fwd, mir = self.twins
        a = fwd.ea_up(u, up, t_d) if up else t_d
        b = -mir.ea_up(v, down, -t_a) if down else t_a
        return a != POS_INF and b != NEG_INF and a <= b

    # -- introspection -------------------------------------------------------

    def validation_views(self):
        return self.twins

    def counters(self):
        out = {"backing_primitive_calls": self._F.primitive_calls}
        for tw in self.twins:
            for k, v in tw.counters().items():
                out[f"{tw.name}_{k}"] = v
        out["fixparent_calls"] = sum(tw.fixparent_calls for tw in self.twins)
        out["rewires"] = sum(tw.rewires for tw in self.twins)
        return out

    @property
    def label_count(self) -> int:
        return self.topology.label_count()


class TemporalForest(_ForestBase):
    """Dynamic temporal forest of rooted trees without latencies.

    Updates (label add/delete, link, cut, singleton add/delete) each do a
    constant number of successor lookups and at most three parent repairs
    per successor forest.  Upward EA, downward LD and reachability take one
    level-ancestor query; the other two directions binary search the labels
    of the first edge.
    """

    _twin_class = _Twin

    def sigma(self, v, l, mirror=False):
        tw = self.twins[1 if mirror else 0]
        return tw.sigma(v, -l if mirror else l)

    def fix_parent(self, v, l, mirror=False):
        tw = self.twins[1 if mirror else 0]
        tw.fix_parent((-l if mirror else l, v))
