import random

import pytest

from tempforest.driver import apply_op
from tempforest.errors import PreconditionError, UnknownVertexError
from tempforest.forest import BLUE, RED, TemporalForest
from tempforest.model import NEG_INF, POS_INF
from tempforest.oracle import OracleEngine, or_validate
from tempforest.workload import WorkloadParams, generate

R, A, B, C = 0, 1, 2, 3


@pytest.fixture
def t1():
    tf = TemporalForest()
    for v in (R, A, B, C):
        tf.add_vertex(v)
    tf.link(A, R, 3)
    tf.add_label(A, 7)
    tf.link(B, R, 5)
    tf.link(C, A, 2)
    tf.add_label(C, 6)
    assert or_validate(tf) == []
    return tf


def test_t1_sigma(t1):
    assert t1.sigma(C, 2) == ((3, A), BLUE)
    assert t1.sigma(A, 3) == ((5, B), RED)
    assert t1.sigma(A, 7) is None


def test_t1_queries(t1):
    assert t1.ea(C, R, 0) == 3
    assert t1.ea(C, R, 4) == 7
    assert t1.ea(C, B, 0) == 5
    assert t1.ld(C, R, 7) == 6
    assert t1.ld(C, R, 2) == NEG_INF
    assert t1.ld(C, C, 9) == 9
    assert t1.reach(C, B, 0, 5) is True
    assert t1.reach(C, B, 0, 4) is False


def test_t1_add_label_red_edge(t1):
    t1.add_label(C, 4)
    assert t1.sigma(C, 4) == ((6, C), RED)
    tw = t1.twins[0]
    f = tw.forest
    h = tw.handle[(4, C)]
    assert tw.key[f.parent(h)] == (6, C)
    assert f.weight(h) == RED
    assert or_validate(t1) == []


def test_t1_delete_last_label_rejected(t1):
    with pytest.raises(PreconditionError, match="last label requires cut"):
        t1.delete_label(B, 5)
    assert or_validate(t1) == []


def test_round_trip_restores_state(t1):
    before = [tw.snapshot() for tw in t1.twins]
    t1.add_label(C, 4)
    t1.delete_label(C, 4)
    assert [tw.snapshot() for tw in t1.twins] == before
    assert or_validate(t1) == []


def test_fix_parent_idempotent_and_root(t1):
    tw = t1.twins[0]
    before = tw.snapshot()
    t1.fix_parent(C, 2)
    assert tw.snapshot() == before
    assert tw.key[tw.forest.parent(tw.handle[(2, C)])] == (3, A)
    t1.fix_parent(A, 7)
    assert tw.forest.parent(tw.handle[(7, A)]) is None


def test_link_cut_singletons():
    tf = TemporalForest()
    u, v = tf.add_vertex(), tf.add_vertex()
    tf.link(u, v, 1)
    for t in (-5, 0, 1):
        assert tf.ea(u, v, t) == 1
    assert tf.ea(u, v, 2) == POS_INF
    with pytest.raises(PreconditionError):
        tf.link(v, u, 4)
    tf.cut(u)
    assert tf.reach(u, v, NEG_INF, POS_INF) is False
    assert tf.ea(u, v, 0) == POS_INF
    assert tf.ld(u, v, 0) == NEG_INF
    assert or_validate(tf) == []


def test_link_under_own_tree_rejected(t1):
    with pytest.raises(PreconditionError):
        t1.link(R, C, 1)
    with pytest.raises(PreconditionError):
        t1.link(C, B, 1)  # not a root


def test_vertices():
    tf = TemporalForest()
    v = tf.add_vertex()
    assert tf.ea(v, v, 5) == 5
    assert tf.ld(v, v, -3) == -3
    w = tf.add_vertex()
    tf.link(w, v, 0)
    with pytest.raises(PreconditionError):
        tf.delete_vertex(v)
    tf.cut(w)
    tf.delete_vertex(v)
    with pytest.raises(UnknownVertexError):
        tf.ea(v, w, 0)


def test_rejects_latency_label():
    tf = TemporalForest()
    tf.add_vertex(0)
    tf.add_vertex(1)
    with pytest.raises(PreconditionError):
        tf.link(0, 1, 3, 5)


def test_validator_reports_corrupted_parent(t1):
    tw = t1.twins[0]
    f = tw.forest
    h = tw.handle[(2, C)]
    f.cut(h)
    f.link(h, tw.handle[(5, B)], BLUE)
    report = or_validate(t1)
    assert [(m.view, m.node, m.kind) for m in report] == [("forward", (2, C), "parent")]


def _u_set(tw, v, key, p):
    """Nodes whose parent may change when ``key`` (on edge of v) is added/removed."""
    out = {key}
    bv = tw.B.get(v)
    if bv:
        x = bv.pred((key[0], POS_INF))
        if x is not None:
            out.add(x)
    bp = tw.B.get(p)
    if bp:
        y = bp.pred(key, strict=True)
        if y is not None:
            out.add(y)
    return out


def _diff(before, after):
    return {k for k in before.keys() & after.keys() if before[k] != after[k]}


@pytest.mark.parametrize("seed", range(4))
def test_locality_and_cost(seed):
    rng = random.Random(seed)
    ops = generate(seed, WorkloadParams(n=24, ops=600, label_lo=-15, label_hi=15, query_fraction=0.0))
    tf = TemporalForest()
    checked = 0
    for op in ops:
        kind = op[0]
        if kind not in ("addl", "dell"):
            apply_op(tf, op, latency=False)
            continue
        v, l = op[1], op[2]
        p = tf.topology.parent[v]
        snaps = [tw.snapshot() for tw in tf.twins]
        calls = [tw.fixparent_calls for tw in tf.twins]
        prims = [tw.forest.primitive_calls for tw in tf.twins]
        if kind == "dell":
            us = [_u_set(tw, v, (tw.sign * l, v), p) for tw in tf.twins]
        apply_op(tf, op, latency=False)
        if kind == "addl":
            us = [_u_set(tw, v, (tw.sign * l, v), p) for tw in tf.twins]
        for tw, before, u, c0, p0 in zip(tf.twins, snaps, us, calls, prims):
            assert _diff(before, tw.snapshot()) <= u
            assert tw.fixparent_calls - c0 <= 3
            assert tw.forest.primitive_calls - p0 <= 12
            if kind == "dell":
                assert tw.last_deleted_degree <= 2
        checked += 1
        if rng.random() < 0.2:
            assert or_validate(tf) == []
    assert checked > 100


@pytest.mark.parametrize("seed", range(12))
def test_differential_against_oracle(seed):
    ops = generate(seed, WorkloadParams(n=32, ops=400, label_lo=-20, label_hi=20))
    tf, ref = TemporalForest(), OracleEngine()
    for i, op in enumerate(ops):
        got = apply_op(tf, op, latency=False)
        want = apply_op(ref, op, latency=False)
        assert got == want, (i, op)
        if op[0] not in ("ea", "ld", "reach"):
            assert or_validate(tf) == [], (i, op)
    assert tf.topology == ref.topology


def test_mirror_twin_matches_fresh_build(t1):
    # the mirror twin of F equals the forward twin of a forest built on negated labels
    neg = TemporalForest()
    for v in (R, A, B, C):
        neg.add_vertex(v)
    neg.link(A, R, -3)
    neg.add_label(A, -7)
    neg.link(B, R, -5)
    neg.link(C, A, -2)
    neg.add_label(C, -6)
    assert t1.twins[1].snapshot() == neg.twins[0].snapshot()
