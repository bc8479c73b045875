import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from tempforest.errors import PreconditionError
from tempforest.forest import BLUE
from tempforest.model import NEG_INF, POS_INF, ForestTopology, TemporalLabel
from tempforest.oracle import enum_ea, enum_ld, or_ea, or_ld, or_validate
from tempforest.path import LEFT, LEFT_MIRROR, RIGHT, RIGHT_MIRROR, PathStructure

EX = [{2, 5}, {4, 6}, {1, 6}]


def _sets(label_sets):
    return [{TemporalLabel(l, l) for l in s} for s in label_sets]


def test_empty_path():
    ps = PathStructure([], n=1)
    assert or_validate(ps) == []
    assert ps.ea(0, 0, 3) == 3
    with pytest.raises(PreconditionError):
        ps.ea(0, 1, 0)


def test_build_example_validates():
    ps = PathStructure(EX)
    assert or_validate(ps) == []


def test_single_edge_isolated_nodes():
    ps = PathStructure([{7}])
    for tw in ps.copies:
        (h,) = tw.handle.values()
        assert tw.forest.parent(h) is None
        assert tw.forest.child_count(h) == 0


def test_query_examples():
    ps = PathStructure(EX)
    assert ps.ea(0, 3, 1) == 6
    assert ps.ea(0, 3, 6) == POS_INF
    assert ps.ld(0, 3, 6) == 5
    # the same values by brute-force enumeration
    assert enum_ea(_sets(EX), 1) == 6
    assert enum_ea(_sets(EX), 6) == POS_INF
    assert enum_ld(_sets(EX), 6) == 5


def test_sigma_example():
    ps = PathStructure([{2}, {4}])
    assert ps.sigma(0, 2) == ((4, 1), BLUE)


def test_fix_parent_idempotent_and_root():
    ps = PathStructure(EX)
    snaps = [tw.snapshot() for tw in ps.copies]
    for c in range(4):
        for i, s in enumerate(EX):
            for l in s:
                ps.fix_parent(c, i, l)
    assert [tw.snapshot() for tw in ps.copies] == snaps
    tw = ps.copies[RIGHT]
    assert tw.forest.parent(tw.handle[(6, 2)]) is None


def test_add_then_delete_on_fourth_edge():
    # add 5 to the fourth edge, then delete its 6
    ps = PathStructure([{1, 4}, {3, 7}, {2, 5, 8}, {3, 6, 9}, {4, 7}])
    ps.add_label(3, 5)
    assert or_validate(ps) == []
    ps.delete_label(3, 6)
    assert or_validate(ps) == []


def test_round_trip_and_errors():
    ps = PathStructure(EX)
    snaps = [tw.snapshot() for tw in ps.copies]
    ps.add_label(1, 5)
    ps.delete_label(1, 5)
    assert [tw.snapshot() for tw in ps.copies] == snaps
    with pytest.raises(PreconditionError):
        ps.add_label(1, 4)
    with pytest.raises(PreconditionError):
        ps.delete_label(3, 1)


def test_delete_from_empty_edge_and_emptying():
    ps = PathStructure([{3}, set()])
    with pytest.raises(PreconditionError):
        ps.delete_label(1, 3)
    ps.delete_label(0, 3)
    assert or_validate(ps) == []
    assert ps.ea(0, 1, 0) == POS_INF
    assert ps.ld(1, 0, 0) == NEG_INF
    ps.add_label(0, 2)
    assert ps.ea(0, 1, 0) == 2


def _topology(label_sets):
    topo = ForestTopology()
    n = len(label_sets) + 1
    for v in range(n):
        topo.add_vertex(v)
    for i, s in enumerate(label_sets):
        topo.parent[i] = i + 1
        topo.children.setdefault(i + 1, set()).add(i)
        topo.labels[i] = {TemporalLabel(l, l) for l in s}
    return topo


def _check_all(ps, label_sets):
    topo = _topology(label_sets)
    n = ps.n
    for i, j in itertools.product(range(n), repeat=2):
        for t in list(range(-11, 12)) + [NEG_INF, POS_INF]:
            assert ps.ea(i, j, t) == or_ea(topo, i, j, t), (i, j, t)
            assert ps.ld(i, j, t) == or_ld(topo, i, j, t), (i, j, t)
            if i != j:
                # LD equals the negated EA of the mirrored copy (reverse direction)
                c = LEFT_MIRROR if i < j else RIGHT_MIRROR
                assert ps.ld(i, j, t) == -ps.copies[c].ea_up(j, abs(i - j), -t)


labels = st.sets(st.integers(-10, 10), max_size=4)


@settings(max_examples=150, deadline=None)
@given(st.lists(labels, min_size=0, max_size=7))
def test_queries_match_oracle(label_sets):
    ps = PathStructure(label_sets)
    assert or_validate(ps) == []
    _check_all(ps, label_sets)


@pytest.mark.parametrize("seed", range(5))
def test_updates_against_oracle(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 8)
    sets = [set(rng.sample(range(-10, 11), rng.randint(0, 3))) for _ in range(n - 1)]
    ps = PathStructure(sets)
    for _ in range(80):
        i = rng.randrange(n - 1)
        c0 = [tw.fixparent_calls for tw in ps.copies]
        if sets[i] and rng.random() < 0.45:
            l = rng.choice(sorted(sets[i]))
            ps.delete_label(i, l)
            sets[i].discard(l)
        else:
            l = rng.randint(-10, 10)
            if l in sets[i]:
                continue
            ps.add_label(i, l)
            sets[i].add(l)
        assert all(tw.fixparent_calls - c <= 3 for tw, c in zip(ps.copies, c0))
        assert or_validate(ps) == []
    _check_all(ps, sets)


def test_copies_orientations():
    ps = PathStructure(EX)
    assert ps.copies[RIGHT].topo.parent == {0: 1, 1: 2, 2: 3}
    assert ps.copies[LEFT].topo.parent == {1: 0, 2: 1, 3: 2}
    assert ps.ea(3, 0, 0) == or_ea(_topology(EX), 3, 0, 0)
