import math
import random
from functools import total_ordering

import pytest
from hypothesis import given, settings, strategies as st

from tempforest.errors import PreconditionError
from tempforest.model import POS_INF
from tempforest.ordered import OrderedIndex, PairIndex, PRED, SUCC


def test_insert_delete_examples():
    ix = OrderedIndex([2, 5])
    ix.insert(4)
    assert list(ix) == [2, 4, 5]
    ix.delete(4)
    with pytest.raises(PreconditionError):
        ix.delete(4)
    with pytest.raises(PreconditionError):
        ix.insert(5)
    assert list(ix) == [2, 5]


def test_neighbor_examples():
    ix = OrderedIndex([2, 5])
    assert ix.neighbor(3, SUCC) == 5
    assert ix.neighbor(5, SUCC, strict=True) is None
    assert ix.neighbor(5, SUCC) == 5
    assert ix.neighbor(3, PRED) == 2
    assert ix.neighbor(2, PRED, strict=True) is None
    assert ix.succ(-math.inf) == 2
    assert ix.pred(POS_INF) == 5


def test_tuple_keys_with_infinite_component():
    ix = OrderedIndex([(3, 1), (5, 0), (5, 2), (7, 1)])
    assert ix.pred((5, POS_INF)) == (5, 2)
    assert ix.succ((5, 2), strict=True) == (7, 1)
    assert ix.pred((5, 0), strict=True) == (3, 1)


def _scan(keys, x, side, strict):
    if side == SUCC:
        c = [k for k in keys if k > x or (k == x and not strict)]
        return min(c) if c else None
    c = [k for k in keys if k < x or (k == x and not strict)]
    return max(c) if c else None


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-30, 30), unique=True, max_size=40),
       st.integers(-35, 35))
def test_neighbor_matches_scan(keys, x):
    ix = OrderedIndex(keys)
    for side in (SUCC, PRED):
        for strict in (False, True):
            assert ix.neighbor(x, side, strict) == _scan(keys, x, side, strict)


_COMPARISONS = [0]


@total_ordering
class CountingKey:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __eq__(self, other):
        _COMPARISONS[0] += 1
        return self.v == other.v

    def __lt__(self, other):
        _COMPARISONS[0] += 1
        return self.v < other.v

    def __hash__(self):
        return hash(self.v)


def test_ordered_index_comparisons_logarithmic():
    n = 512
    rng = random.Random(3)
    vals = rng.sample(range(10 * n), n)
    ix = OrderedIndex(CountingKey(v) for v in vals)
    worst = 0
    for _ in range(300):
        x = CountingKey(rng.randrange(10 * n))
        _COMPARISONS[0] = 0
        ix.neighbor(x, SUCC)
        ix.neighbor(x, PRED, strict=True)
        worst = max(worst, _COMPARISONS[0] / 2)
    assert worst <= 4 * (1 + math.log2(n))


# -- PairIndex ---------------------------------------------------------------

def _min_arrival_scan(pairs, lo):
    c = [(a, -d) for d, a in pairs if d >= lo]
    if not c:
        return None
    a, nd = min(c)
    return -nd, a


def _max_dep_scan(pairs, hi):
    c = [d for d, a in pairs if a < hi]
    return max(c) if c else None


def test_pair_index_examples():
    p = PairIndex([(3, 9), (4, 6), (5, 5)])
    assert p.min_arrival(3) == (5, 5)
    assert p.min_arrival(10) is None
    assert p.max_departure_below(6) == 5
    assert p.max_departure_below(5) is None
    assert p.max_departure_below(POS_INF) == 5
    q = PairIndex([(4, 6), (5, 6)])
    assert q.min_arrival(4) == (5, 6)


def test_pair_index_rejects_bad_pairs():
    p = PairIndex()
    with pytest.raises(PreconditionError):
        p.insert(5, 4)
    p.insert(1, 2)
    with pytest.raises(PreconditionError):
        p.insert(1, 2)
    with pytest.raises(PreconditionError):
        p.delete(1, 3)


@pytest.mark.parametrize("seed", range(5))
def test_pair_index_differential(seed):
    rng = random.Random(seed)
    p = PairIndex()
    pairs = set()
    for _ in range(1500):
        if pairs and rng.random() < 0.4:
            d, a = rng.choice(sorted(pairs))
            p.delete(d, a)
            pairs.discard((d, a))
        elif len(pairs) < 512:
            d = rng.randint(-50, 50)
            a = d + rng.randint(0, 10)
            if (d, a) in pairs:
                continue
            p.insert(d, a)
            pairs.add((d, a))
        x = rng.randint(-60, 70)
        assert p.min_arrival(x) == _min_arrival_scan(pairs, x)
        assert p.max_departure_below(x) == _max_dep_scan(pairs, x)
        t = rng.randint(-60, 70)
        deps = sorted(d for d, _ in pairs)
        expect = max((d for d in deps if d <= t), default=None)
        assert p.departures_bisect(lambda d: d <= t) == expect
    assert len(p) == len(pairs)
    assert sorted(pairs) == list(p)


def test_pair_index_depth_logarithmic():
    rng = random.Random(11)
    p = PairIndex()
    n = 4096
    for i in range(n):
        p.insert(i, i + rng.randint(0, 5))
    assert p._by_dep.depth() <= 4 * (1 + math.log2(n))
    assert p._by_arr.depth() <= 4 * (1 + math.log2(n))
