"""Dynamic temporal forest whose labels carry latencies.

A label is a pair (dep, arr) with arr >= dep; a path may take label
(l2, a2) after (l1, a1) when a1 <= l2.  Successor-forest nodes are keyed
``(arr, dep, v)`` so that blocks are ordered arrival-major.  A node's
candidate upward move is its NextHop: the label on the parent edge with
departure at least the node's arrival, minimizing arrival and preferring
the largest departure on ties.

Adding or deleting one label can change the NextHop of a whole run of
nodes in the child block.  Inside such a run all but the last node hang by
red edges, so only the heads (roots and blue children) of the block need
rewiring; they are kept in a per-block head index.
"""
from __future__ import annotations

from .errors import PreconditionError
from .forest import BLUE, RED, _ForestBase, _Twin
from .model import NEG_INF, POS_INF, TemporalLabel
from .ordered import OrderedIndex, PairIndex

_HI = POS_INF


class _LatencyTwin(_Twin):
    latency = True

    def __init__(self, topo, mirror):
        super().__init__(topo, mirror)
        self.H: dict[int, OrderedIndex] = {}

    def heads(self):
        return {p: list(h) for p, h in self.H.items()}

    def attach(self, v):
        self.D[v] = PairIndex()

    def _key(self, v, tl: TemporalLabel):
        return (tl.arr, tl.dep, v)

    def _d_insert(self, v, tl: TemporalLabel):
        self.D[v].insert(tl.dep, tl.arr)

    # -- successor function ------------------------------------------------

    def next_hop(self, u, arr):
        """Key of the NextHop label for a node of ``u`` arriving at ``arr``."""
        p = self.topo.parent[u]
        if p not in self.topo.parent:
            raise PreconditionError(f"parent {p} of {u} is a root; it has no parent edge")
        hop = self.D[p].min_arrival(arr)
        return None if hop is None else (hop[1], hop[0], p)

    def _sigma_key(self, key):
        arr, dep, u = key
        topo = self.topo
        p = topo.parent[u]
        nxt = self.B[p].succ(key, strict=True)
        if p not in topo.parent:
            return None if nxt is None else (nxt, RED)
        hop = self.D[p].min_arrival(arr)
        if nxt is not None and (hop is None or nxt[0] <= hop[0]):
            return nxt, RED
        if hop is not None:
            return (hop[1], hop[0], p), BLUE
        return None

    def sigma(self, v, l, arr):
        return self._sigma_key((arr, l, v))

    def _after_fix(self, key, s):
        p = self.topo.parent[key[2]]
        if s is None or s[1] == BLUE:
            h = self.H.setdefault(p, OrderedIndex())
            if key not in h:
                h.insert(key)
        else:
            h = self.H.get(p)
            if h is not None and key in h:
                h.delete(key)
                if not h:
                    del self.H[p]

    # -- label updates -----------------------------------------------------

    def _run_bounds(self, v, dep, arr):
        """Arrival bounds (lo, hi] of the B_v nodes whose NextHop is label
        (dep, arr), given that the label is absent from D_v; None if empty."""
        d = self.D[v]
        tie = d.max_departure_below(arr + 1)
        if tie is not None and tie > dep:
            return None
        lm = d.max_departure_below(arr)
        return (NEG_INF if lm is None else lm), dep

    def add_label(self, v, lab: TemporalLabel):
        lab = self.transform(lab)
        dep, arr = lab.dep, lab.arr
        p = self.topo.parent[v]
        key = (arr, dep, v)
        bv = self.B.get(v)
        run = self._run_bounds(v, dep, arr) if bv else None
        self._new_node(key)
        self.D[v].insert(dep, arr)
        self.B.setdefault(p, OrderedIndex()).insert(key)
        if run is not None:
            lo, hi = run
            last = bv.pred((hi, _HI, _HI))
            if last is not None and last[0] > lo:
                hv = self.H.get(v)
                if hv is not None:
                    # heads inside the run turn red; collect first since fixes mutate H_v
                    for x in list(hv.irange((lo, _HI, _HI), (hi, _HI, _HI))):
                        if x != last:
                            self.fix_parent(x)
                self.fix_parent(last)
        self.fix_parent(key, fresh=True)
        y = self.B[p].pred(key, strict=True)
        if y is not None:
            self.fix_parent(y)

    def delete_label(self, v, lab: TemporalLabel):
        lab = self.transform(lab)
        dep, arr = lab.dep, lab.arr
        p = self.topo.parent[v]
        key = (arr, dep, v)
        f = self.forest
        h = self.handle[key]
        self.last_deleted_degree = f.child_count(h)
        d = self.D[v]
        d.delete(dep, arr)
        bp = self.B[p]
        bp.delete(key)
        if not bp:
            del self.B[p]
        hp = self.H.get(p)
        if hp is not None and key in hp:
            hp.delete(key)
            if not hp:
                del self.H[p]
        if f.parent(h) is not None:
            f.cut(h)
        bv = self.B.get(v)
        todo = []
        if bv:
            run = self._run_bounds(v, dep, arr)
            if run is not None:
                lo, hi = run
                star = bv.pred((hi, _HI, _HI))
                if star is not None and star[0] > lo:
                    todo.append(star)
                    while True:
                        z = d.min_arrival(star[0])
                        bound = d.max_departure_below(_HI if z is None else z[1])
                        if bound is None:
                            break
                        cand = bv.pred((bound, _HI, _HI))
                        if cand is None or cand[0] <= lo:
                            break
                        todo.append(cand)
                        star = cand
        for x in todo:
            self.fix_parent(x)
        if p in self.B:
            y = self.B[p].pred(key, strict=True)
            if y is not None:
                self.fix_parent(y)
        f.remove_node(h)
        del self.handle[key]
        del self.key[h]

    # -- queries -------------------------------------------------------------

    def ea_up(self, u, hops, t):
        hop = self.D[u].min_arrival(t)
        if hop is None:
            return POS_INF
        a = self.forest.wla(self.handle[(hop[1], hop[0], u)], hops - 1)
        return POS_INF if a is None else self.key[a][0]

    def ld_up(self, u, hops, t):
        def ok(d):
            a = self.ea_up(u, hops, d)
            return a != POS_INF and a <= t

        best = self.D[u].departures_bisect(ok)
        return NEG_INF if best is None else best


class LatencyTemporalForest(_ForestBase):
    """Dynamic temporal forest with (departure, arrival) labels.

    Same update and query surface as :class:`TemporalForest`, with an
    optional arrival argument on every label operation (default: equal to
    the departure).  Label updates rewire only the heads of the affected
    run, so their cost is proportional to the number of heads touched.
    """

    _twin_class = _LatencyTwin

    def _label(self, l, arr=None) -> TemporalLabel:
        return TemporalLabel.of(l, l if arr is None else arr)

    def _twin_key(self, mirror, v, l, arr):
        lab = self._label(l, arr)
        if mirror:
            lab = lab.mirrored()
        return lab.arr, lab.dep, v

    def sigma(self, v, l, arr=None, mirror=False):
        tw = self.twins[1 if mirror else 0]
        return tw._sigma_key(self._twin_key(mirror, v, l, arr))

    def next_hop(self, u, arr, mirror=False):
        return self.twins[1 if mirror else 0].next_hop(u, arr)

    def fix_parent(self, v, l, arr=None, mirror=False):
        tw = self.twins[1 if mirror else 0]
        tw.fix_parent(self._twin_key(mirror, v, l, arr))
