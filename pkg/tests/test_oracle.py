import itertools

import pytest
from hypothesis import given, settings, strategies as st

from tempforest.model import NEG_INF, POS_INF, ForestTopology, TemporalLabel
from tempforest.oracle import (
    enum_ea, enum_ld, enum_reach, greedy_ea, greedy_ld, or_ea, or_ld, or_ld_backward, or_reach,
)


def _path(label_sets):
    topo = ForestTopology()
    for v in range(len(label_sets) + 1):
        topo.add_vertex(v)
    for i, s in enumerate(label_sets):
        topo.link(i, i + 1, next(iter(s)))
        topo.labels[i] = set(s)
    return topo


def _lab(*xs):
    return {TemporalLabel(x, x) for x in xs}


def _t1():
    topo = ForestTopology()
    for v in range(4):
        topo.add_vertex(v)
    topo.link(1, 0, TemporalLabel(3, 3))
    topo.add_label(1, TemporalLabel(7, 7))
    topo.link(2, 0, TemporalLabel(5, 5))
    topo.link(3, 1, TemporalLabel(2, 2))
    topo.add_label(3, TemporalLabel(6, 6))
    return topo


def test_path_examples():
    topo = _path([_lab(2, 5), _lab(4, 6), _lab(1, 6)])
    assert or_ea(topo, 0, 3, 1) == 6
    assert or_ld(topo, 0, 3, 6) == 5
    assert or_ld_backward(topo, 0, 3, 6) == 5
    assert enum_ld(topo_sets(topo, 0, 3), 6) == 5


def topo_sets(topo, u, v):
    return [topo.labels[e] for e in topo.edge_path(u, v)]


def test_conventions():
    topo = _t1()
    topo.add_vertex(9)
    assert or_ea(topo, 3, 3, 4) == 4
    assert or_ld(topo, 3, 3, 4) == 4
    assert or_ea(topo, 3, 9, 0) == POS_INF
    assert or_ld(topo, 3, 9, 0) == NEG_INF
    assert or_reach(topo, 3, 9, NEG_INF, POS_INF) is False
    assert or_ld(topo, 3, 0, 2) == NEG_INF


def test_t1_reach():
    topo = _t1()
    assert or_reach(topo, 3, 2, 0, 5) is True
    assert or_reach(topo, 3, 2, 0, 4) is False


def test_latency_two_edge_path():
    sets = [{TemporalLabel(1, 4), TemporalLabel(2, 3)},
            {TemporalLabel(3, 9), TemporalLabel(4, 6), TemporalLabel(5, 5)}]
    topo = _path(sets)
    assert or_ea(topo, 0, 2, 0) == 5
    assert or_ea(topo, 0, 2, 2) == 5
    assert or_ea(topo, 0, 2, 3) == POS_INF
    assert or_ld(topo, 0, 2, 4) == NEG_INF
    assert enum_ea(sets, 0) == 5


def _label_sets(latency):
    if latency:
        lab = st.tuples(st.integers(-5, 5), st.integers(0, 3)).map(lambda p: TemporalLabel(p[0], p[0] + p[1]))
    else:
        lab = st.integers(-5, 5).map(lambda x: TemporalLabel(x, x))
    return st.lists(st.sets(lab, min_size=1, max_size=3), min_size=1, max_size=6)


TIMES = list(range(-7, 10)) + [NEG_INF, POS_INF]


@settings(max_examples=300, deadline=None)
@given(_label_sets(False))
def test_greedy_equals_enumeration(sets):
    for t in TIMES:
        assert greedy_ea(sets, t) == enum_ea(sets, t)
        assert greedy_ld(sets, t) == enum_ld(sets, t)


@settings(max_examples=300, deadline=None)
@given(_label_sets(True))
def test_greedy_equals_enumeration_latency(sets):
    for t in TIMES:
        assert greedy_ea(sets, t) == enum_ea(sets, t)
        assert greedy_ld(sets, t) == enum_ld(sets, t)
    for td, ta in itertools.product(TIMES[::3], TIMES[::3]):
        a = greedy_ea(sets, td)
        assert (a != POS_INF and a <= ta) == enum_reach(sets, td, ta)


@settings(max_examples=200, deadline=None)
@given(_label_sets(True))
def test_mirror_identity(sets):
    # LD on F equals the negated EA on the reversed, time-mirrored path
    mirrored = [{lab.mirrored() for lab in s} for s in reversed(sets)]
    for t in TIMES:
        assert greedy_ld(sets, t) == -greedy_ea(mirrored, -t)


def test_greedy_edge_cases():
    assert greedy_ea([], 3) == 3
    assert enum_ea([], 3) == 3
    assert enum_reach([], 1, 0) is False
    with pytest.raises(Exception):
        or_ea(ForestTopology(), 0, 1, 0)
