"""Brute-force reference answers and the structural validator.

Everything here reads the plain :class:`ForestTopology` (or a structure's
validation views) and recomputes from scratch; nothing is incremental.
"""
from __future__ import annotations

import itertools
from typing import NamedTuple

from .errors import PreconditionError
from .model import NEG_INF, POS_INF, ForestTopology, TemporalLabel, TimeValue


# -- greedy evaluation along a fixed edge sequence ----------------------------

def greedy_ea(label_sets, t: TimeValue) -> TimeValue:
    """Earliest arrival along consecutive edges, starting no earlier than ``t``."""
    a = t
    for labels in label_sets:
        best = POS_INF
        for lab in labels:
            if lab.dep >= a and lab.arr < best:
                best = lab.arr
        if best == POS_INF:
            return POS_INF
        a = best
    return a


def greedy_ld(label_sets, t: TimeValue) -> TimeValue:
    """Latest departure along consecutive edges, arriving no later than ``t``."""
    d = t
    for labels in reversed(label_sets):
        best = NEG_INF
        for lab in labels:
            if lab.arr <= d and lab.dep > best:
                best = lab.dep
        if best == NEG_INF:
            return NEG_INF
        d = best
    return d


def _path_labels(topology: ForestTopology, u, v):
    topology.require(u)
    topology.require(v)
    edges = topology.edge_path(u, v)
    if edges is None:
        return None
    return [topology.labels[e] for e in edges]


def or_ea(topology: ForestTopology, u, v, t: TimeValue) -> TimeValue:
    sets = _path_labels(topology, u, v)
    if u == v:
        return t
    if sets is None:
        return POS_INF
    return greedy_ea(sets, t)


def or_ld(topology: ForestTopology, u, v, t: TimeValue) -> TimeValue:
    """Latest departure, computed as a negated earliest arrival on the
    reversed, time-mirrored path."""
    sets = _path_labels(topology, u, v)
    if u == v:
        return t
    if sets is None:
        return NEG_INF
    mirrored = [{lab.mirrored() for lab in s} for s in reversed(sets)]
    return -greedy_ea(mirrored, -t)


def or_ld_backward(topology: ForestTopology, u, v, t: TimeValue) -> TimeValue:
    sets = _path_labels(topology, u, v)
    if u == v:
        return t
    if sets is None:
        return NEG_INF
    return greedy_ld(sets, t)


def or_reach(topology: ForestTopology, u, v, t_d: TimeValue, t_a: TimeValue) -> bool:
    """Is there a temporal path departing no earlier than ``t_d`` and arriving
    no later than ``t_a``?"""
    sets = _path_labels(topology, u, v)
    if u == v:
        return t_d <= t_a
    if sets is None:
        return False
    a = greedy_ea(sets, t_d)
    return a != POS_INF and a <= t_a


# -- exhaustive enumeration (tiny instances only) -----------------------------

def temporal_paths(label_sets):
    """Every feasible label selection along the edge sequence."""
    for choice in itertools.product(*[sorted(s) for s in label_sets]):
        if all(choice[i].arr <= choice[i + 1].dep for i in range(len(choice) - 1)):
            yield choice


def enum_ea(label_sets, t):
    if not label_sets:
        return t
    arrs = [p[-1].arr for p in temporal_paths(label_sets) if p[0].dep >= t]
    return min(arrs) if arrs else POS_INF


def enum_ld(label_sets, t):
    if not label_sets:
        return t
    deps = [p[0].dep for p in temporal_paths(label_sets) if p[-1].arr <= t]
    return max(deps) if deps else NEG_INF


def enum_reach(label_sets, t_d, t_a):
    if not label_sets:
        return t_d <= t_a
    return any(p[0].dep >= t_d and p[-1].arr <= t_a for p in temporal_paths(label_sets))


# -- successor forest recomputed from labels ----------------------------------

RED = 0
BLUE = 1


def expected_successor_forest(parent: dict, labels: dict, latency: bool):
    """Parent and edge weight of every successor-forest node, from scratch.

    ``parent`` maps non-root vertices to their parent, ``labels`` maps them to
    their label sets (already in the structure's own time orientation).
    Node keys are ``(arr, dep, v)`` with latencies and ``(dep, v)`` without.
    Returns ``(expected, blocks)`` where ``expected[key] = (parent_key, weight)``
    or ``(None, None)``, and ``blocks[v]`` is the sorted key list of v's block.
    """
    def key(lab, v):
        return (lab.arr, lab.dep, v) if latency else (lab.dep, v)

    blocks: dict = {}
    for v, p in parent.items():
        for lab in labels[v]:
            blocks.setdefault(p, []).append((lab.arr, lab.dep, v, lab))
    for b in blocks.values():
        b.sort(key=lambda x: x[:3])

    expected = {}
    for p, block in blocks.items():
        grand = parent.get(p)
        for i, (arr, dep, v, lab) in enumerate(block):
            nxt = block[i + 1] if i + 1 < len(block) else None
            hop = None
            if grand is not None:
                cands = [l2 for l2 in labels[p] if l2.dep >= arr]
                if cands:
                    hop = min(cands, key=lambda l2: (l2.arr, -l2.dep))
            if nxt is not None and (hop is None or nxt[0] <= hop.dep):
                expected[key(lab, v)] = (key(nxt[3], nxt[2]), RED)
            elif hop is not None:
                expected[key(lab, v)] = (key(hop, p), BLUE)
            else:
                expected[key(lab, v)] = (None, None)
    sorted_blocks = {p: [key(x[3], x[2]) for x in b] for p, b in blocks.items()}
    return expected, sorted_blocks


class Mismatch(NamedTuple):
    view: str
    node: object
    kind: str
    expected: object
    actual: object


def or_validate(structure) -> list[Mismatch]:
    """Compare every successor forest held by ``structure`` with the one
    recomputed from its labels.  An empty list means consistent.

    ``structure.validation_views()`` yields objects exposing ``name``,
    ``latency``, ``parent``, ``labels``, ``forest``, ``handle_of``,
    ``key_of``, ``node_keys()``, ``blocks()`` and ``heads()`` (None when the
    structure keeps no head sets).
    """
    out: list[Mismatch] = []
    for view in structure.validation_views():
        expected, blocks = expected_successor_forest(view.parent, view.labels, view.latency)
        name = view.name
        have = set(view.node_keys())
        for k in sorted(set(expected) - have, key=repr):
            out.append(Mismatch(name, k, "missing-node", k, None))
        for k in sorted(have - set(expected), key=repr):
            out.append(Mismatch(name, k, "extra-node", None, k))
        f = view.forest
        for k in sorted(set(expected) & have, key=repr):
            h = view.handle_of(k)
            ph = f.parent(h)
            actual = (None, None) if ph is None else (view.key_of(ph), f.weight(h))
            if actual != expected[k]:
                out.append(Mismatch(name, k, "parent", expected[k], actual))
            if f.child_count(h) > 2:
                out.append(Mismatch(name, k, "degree", 2, f.child_count(h)))
        # two children of one node must hang by edges of different colors
        colors: dict = {}
        for k in have & set(expected):
            ph = f.parent(view.handle_of(k))
            if ph is not None:
                colors.setdefault(ph, []).append(f.weight(view.handle_of(k)))
        for ph, ws in colors.items():
            if len(ws) != len(set(ws)):
                out.append(Mismatch(name, view.key_of(ph), "child-colors", "distinct", sorted(ws)))
        got_blocks = {p: list(b) for p, b in view.blocks().items() if len(b)}
        if got_blocks != blocks:
            for p in sorted(set(got_blocks) | set(blocks), key=repr):
                if got_blocks.get(p) != blocks.get(p):
                    out.append(Mismatch(name, p, "block", blocks.get(p), got_blocks.get(p)))
        heads = view.heads()
        if heads is not None:
            want: dict = {}
            for p, b in blocks.items():
                hs = {k for k in b if expected[k][1] != RED}
                want[p] = hs
            got = {p: set(h) for p, h in heads.items() if len(h)}
            want = {p: h for p, h in want.items() if h}
            for p in sorted(set(got) | set(want), key=repr):
                if got.get(p, set()) != want.get(p, set()):
                    out.append(Mismatch(name, p, "heads", sorted(want.get(p, ())), sorted(got.get(p, ()))))
    return out


def label_sets_along(topology: ForestTopology, u, v):
    """Label sets of the u-v path in travel order (None across trees)."""
    edges = topology.edge_path(u, v)
    return None if edges is None else [topology.labels[e] for e in edges]


__all__ = [
    "BLUE", "RED", "Mismatch", "TemporalLabel",
    "enum_ea", "enum_ld", "enum_reach", "expected_successor_forest",
    "OracleEngine", "greedy_ea", "greedy_ld", "label_sets_along",
    "or_ea", "or_ld", "or_ld_backward", "or_reach", "or_validate", "temporal_paths",
]


class OracleEngine:
    """The plain topology behind the same update/query surface as the
    structures, answering every query by brute force."""

    def __init__(self, latency: bool = False):
        self.latency = latency
        self.topology = ForestTopology()

    def _label(self, l, arr=None) -> TemporalLabel:
        if arr is None:
            arr = l
        if not self.latency and arr != l:
            raise PreconditionError("this structure has no latencies; arrival must equal departure")
        return TemporalLabel.of(l, arr)

    def add_vertex(self, v):
        self.topology.add_vertex(v)
        return v

    def delete_vertex(self, v):
        self.topology.delete_vertex(v)

    def link(self, u, v, l, arr=None):
        self.topology.link(u, v, self._label(l, arr))

    def cut(self, v):
        self.topology.cut(v)

    def add_label(self, v, l, arr=None):
        self.topology.add_label(v, self._label(l, arr))

    def delete_label(self, v, l, arr=None):
        self.topology.delete_label(v, self._label(l, arr))

    def ea(self, u, v, t):
        return or_ea(self.topology, u, v, t)

    def ld(self, u, v, t):
        return or_ld(self.topology, u, v, t)

    def reach(self, u, v, t_d, t_a):
        return or_reach(self.topology, u, v, t_d, t_a)

    def validation_views(self):
        return ()
