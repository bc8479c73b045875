import math
import random

import pytest

from tempforest.driver import apply_op
from tempforest.errors import PreconditionError
from tempforest.forest import TemporalForest
from tempforest.hld import HLDForest, StaticLCA, heavy_paths
from tempforest.model import ForestTopology, TemporalLabel
from tempforest.oracle import OracleEngine, or_validate
from tempforest.workload import WorkloadParams, generate


def _tree(parent, labels=None, extra=()):
    topo = ForestTopology()
    for v in set(parent) | set(parent.values()) | set(extra):
        topo.add_vertex(v)
    for v, p in parent.items():
        labs = labels[v] if labels else {0}
        topo.parent[v] = p
        topo.children.setdefault(p, set()).add(v)
        topo.labels[v] = {TemporalLabel(l, l) for l in labs}
    return topo


def test_bare_path_single_path():
    topo = _tree({0: 1, 1: 2, 2: 3})
    assert heavy_paths(topo) == [[0, 1, 2, 3]]


def test_star_paths_have_one_edge():
    topo = _tree({1: 0, 2: 0, 3: 0, 4: 0})
    paths = heavy_paths(topo)
    assert sorted(paths) == [[1, 0], [2, 0], [3, 0], [4, 0]]


def test_heavy_child_tie_smallest_id():
    topo = _tree({5: 0, 3: 0, 7: 5, 8: 3})
    assert [3, 0] in [p[-2:] for p in heavy_paths(topo)]
    assert [8, 3, 0] in heavy_paths(topo)


def test_every_edge_in_exactly_one_path():
    rng = random.Random(4)
    parent = {v: rng.randrange(v) for v in range(1, 200)}
    topo = _tree(parent)
    seen = []
    for p in heavy_paths(topo):
        for a, b in zip(p, p[1:]):
            assert parent[a] == b
            seen.append(a)
    assert sorted(seen) == sorted(parent)


def test_balanced_binary_segments():
    parent = {v: (v - 1) // 2 for v in range(1, 15)}
    hf = HLDForest(_tree(parent))
    for leaf in range(7, 15):
        hf.ea(leaf, 0, 0)
        assert hf.last_segments <= 2 * math.ceil(math.log2(16))


def test_static_lca():
    rng = random.Random(2)
    parent = {v: rng.randrange(v) for v in range(1, 120)}
    parent.update({v: rng.randrange(200, v) for v in range(201, 260)})
    topo = _tree(parent, extra=[200])
    lca = StaticLCA(topo)
    for _ in range(500):
        u, v = rng.choice(sorted(topo.vertices)), rng.choice(sorted(topo.vertices))
        assert lca.lca(u, v) == topo.lca(u, v)


def test_same_vertex_and_rejections():
    hf = HLDForest(_tree({1: 0}, {1: {3, 4}}, extra=[9]))
    assert hf.ea(1, 1, 7) == 7
    assert hf.ld(0, 0, -2) == -2
    assert hf.reach(1, 9, 0, 100) is False
    with pytest.raises(PreconditionError):
        hf.add_label(0, 5)
    with pytest.raises(PreconditionError):
        hf.add_label(1, 4)
    hf.delete_label(1, 4)
    with pytest.raises(PreconditionError):
        hf.delete_label(1, 3)


def test_label_update_touches_one_path():
    parent = {v: (v - 1) // 2 for v in range(1, 15)}
    hf = HLDForest(_tree(parent))
    before = [ps.counters()["fixparent_calls"] for ps in hf.structures]
    snaps = [[tw.snapshot() for tw in ps.copies] for ps in hf.structures]
    hf.add_label(9, 5)
    after = [ps.counters()["fixparent_calls"] for ps in hf.structures]
    assert sum(a != b for a, b in zip(before, after)) == 1
    hf.delete_label(9, 5)
    assert [[tw.snapshot() for tw in ps.copies] for ps in hf.structures] == snaps
    assert or_validate(hf) == []


def _random_instance(seed, n=30):
    ops = generate(seed, WorkloadParams(n=n, ops=300, label_lo=-15, label_hi=15,
                                        regime="incremental", query_fraction=0.0))
    ref = OracleEngine()
    for op in ops:
        apply_op(ref, op, latency=False)
    return ref


@pytest.mark.parametrize("seed", range(6))
def test_against_oracle_and_forest(seed):
    rng = random.Random(seed)
    ref = _random_instance(seed)
    hf = HLDForest(ref.topology)
    tf = TemporalForest.from_topology(ref.topology)
    assert or_validate(hf) == []
    assert or_validate(tf) == []
    verts = sorted(ref.topology.vertices)
    for step in range(400):
        if step % 10 == 0:
            nonroots = sorted(ref.topology.parent)
            v = rng.choice(nonroots)
            labs = sorted(ref.topology.labels[v])
            if len(labs) >= 2 and rng.random() < 0.5:
                op = ("dell", v, labs[0].dep, labs[0].dep)
            else:
                l = rng.randint(-15, 15)
                if TemporalLabel(l, l) in ref.topology.labels[v]:
                    continue
                op = ("addl", v, l, l)
        else:
            u, w = rng.choice(verts), rng.choice(verts)
            kind = rng.choice(["ea", "ld", "reach"])
            t = rng.randint(-20, 20)
            op = (kind, u, w, t) if kind != "reach" else (kind, u, w, t, rng.randint(-20, 20))
        want = apply_op(ref, op, latency=False)
        assert apply_op(hf, op, latency=False) == want, op
        assert apply_op(tf, op, latency=False) == want, op
    assert or_validate(hf) == []
