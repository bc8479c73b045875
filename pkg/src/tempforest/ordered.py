"""Ordered indexes used by the temporal structures.

:class:`OrderedIndex` is an ordered set of comparable keys (plain labels or
lexicographic tuples) with successor/predecessor queries.  :class:`PairIndex`
stores (departure, arrival) pairs and answers the two one-sided
range-extremum queries needed with latencies.
"""
from __future__ import annotations

from sortedcontainers import SortedList

from .errors import PreconditionError

SUCC = "succ"
PRED = "pred"


class OrderedIndex:
    __slots__ = ("_keys",)

    def __init__(self, keys=()):
        self._keys = SortedList(keys)

    def __len__(self):
        return len(self._keys)

    def __iter__(self):
        return iter(self._keys)

    def __contains__(self, key):
        return key in self._keys

    def __getitem__(self, i):
        return self._keys[i]

    def __repr__(self):
        return f"OrderedIndex({list(self._keys)!r})"

    def insert(self, key):
        if key in self._keys:
            raise PreconditionError(f"key {key!r} already present")
        self._keys.add(key)

    def delete(self, key):
        try:
            self._keys.remove(key)
        except ValueError:
            raise PreconditionError(f"key {key!r} not present") from None

    def neighbor(self, key, side=SUCC, strict=False):
        """Successor (smallest >= key) or predecessor (largest <= key).

        ``strict`` excludes ``key`` itself.  Returns None when no such key.
        """
        ks = self._keys
        if side == SUCC:
            i = ks.bisect_right(key) if strict else ks.bisect_left(key)
            return ks[i] if i < len(ks) else None
        i = ks.bisect_left(key) if strict else ks.bisect_right(key)
        return ks[i - 1] if i > 0 else None

    def succ(self, key, strict=False):
        return self.neighbor(key, SUCC, strict)

    def pred(self, key, strict=False):
        return self.neighbor(key, PRED, strict)

    def irange(self, lo, hi):
        """Keys k with lo <= k <= hi, in order."""
        return self._keys.irange(lo, hi)

    def first(self):
        return self._keys[0] if self._keys else None

    def last(self):
        return self._keys[-1] if self._keys else None


# -- treap with subtree aggregates -------------------------------------------

def _priority(key) -> int:
    # splitmix64 of the key's hash; hashes of int tuples are not salted
    z = (hash(key) + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return z ^ (z >> 31)


class _Node:
    __slots__ = ("key", "val", "agg", "pri", "left", "right")

    def __init__(self, key, val):
        self.key = key
        self.val = val
        self.agg = val
        self.pri = _priority(key)
        self.left = None
        self.right = None


class _AggTreap:
    """Treap keyed by ``key`` holding ``val``; ``agg`` folds ``better``."""

    __slots__ = ("root", "better", "size")

    def __init__(self, better):
        self.root = None
        self.better = better
        self.size = 0

    def _fix(self, n):
        a = n.val
        b = self.better
        if n.left is not None:
            a = b(a, n.left.agg)
        if n.right is not None:
            a = b(a, n.right.agg)
        n.agg = a

    def _split(self, n, key):
        # -> (keys < key, keys >= key)
        if n is None:
            return None, None
        if n.key < key:
            l, r = self._split(n.right, key)
            n.right = l
            self._fix(n)
            return n, r
        l, r = self._split(n.left, key)
        n.left = r
        self._fix(n)
        return l, n

    def _merge(self, a, b):
        if a is None:
            return b
        if b is None:
            return a
        if a.pri > b.pri:
            a.right = self._merge(a.right, b)
            self._fix(a)
            return a
        b.left = self._merge(a, b.left)
        self._fix(b)
        return b

    def insert(self, key, val):
        node = _Node(key, val)
        self.root = self._insert(self.root, node)
        self.size += 1

    def _insert(self, n, node):
        if n is None:
            return node
        if node.pri > n.pri:
            node.left, node.right = self._split(n, node.key)
            self._fix(node)
            return node
        if node.key < n.key:
            n.left = self._insert(n.left, node)
        else:
            n.right = self._insert(n.right, node)
        self._fix(n)
        return n

    def delete(self, key):
        self.root = self._delete(self.root, key)
        self.size -= 1

    def _delete(self, n, key):
        if n.key == key:
            return self._merge(n.left, n.right)
        if key < n.key:
            n.left = self._delete(n.left, key)
        else:
            n.right = self._delete(n.right, key)
        self._fix(n)
        return n

    def best_from(self, lo):
        """Best ``val`` among keys >= lo, or None."""
        best = None
        b = self.better
        n = self.root
        while n is not None:
            if n.key >= lo:
                cand = n.val if n.right is None else b(n.val, n.right.agg)
                best = cand if best is None else b(best, cand)
                n = n.left
            else:
                n = n.right
        return best

    def best_below(self, hi):
        """Best ``val`` among keys < hi, or None."""
        best = None
        b = self.better
        n = self.root
        while n is not None:
            if n.key < hi:
                cand = n.val if n.left is None else b(n.val, n.left.agg)
                best = cand if best is None else b(best, cand)
                n = n.right
            else:
                n = n.left
        return best

    def keys(self):
        out = []
        stack = []
        n = self.root
        while stack or n is not None:
            while n is not None:
                stack.append(n)
                n = n.left
            n = stack.pop()
            out.append(n.key)
            n = n.right
        return out

    def depth(self):
        def d(n):
            return 0 if n is None else 1 + max(d(n.left), d(n.right))
        return d(self.root)


def _min_arrival(a, b):
    # values are (arr, -dep): smaller arrival first, then larger departure
    return a if a <= b else b


def _max(a, b):
    return a if a >= b else b


class PairIndex:
    """Set of (departure, arrival) pairs with one-sided range-extremum queries.

    Two treaps: one ordered by departure carrying the best (min arrival,
    max departure) pair of each subtree, one ordered by arrival carrying the
    max departure of each subtree.  Every operation is O(log n) expected.
    """

    __slots__ = ("_by_dep", "_by_arr", "_pairs")

    def __init__(self, pairs=()):
        self._by_dep = _AggTreap(_min_arrival)
        self._by_arr = _AggTreap(_max)
        self._pairs = set()
        for dep, arr in pairs:
            self.insert(dep, arr)

    def __len__(self):
        return len(self._pairs)

    def __contains__(self, pair):
        return tuple(pair) in self._pairs

    def __iter__(self):
        return iter(sorted(self._pairs))

    def insert(self, dep, arr):
        if arr < dep:
            raise PreconditionError(f"arrival {arr} precedes departure {dep}")
        if (dep, arr) in self._pairs:
            raise PreconditionError(f"pair {(dep, arr)!r} already present")
        self._pairs.add((dep, arr))
        self._by_dep.insert((dep, arr), (arr, -dep))
        self._by_arr.insert((arr, dep), dep)

    def delete(self, dep, arr):
        if (dep, arr) not in self._pairs:
            raise PreconditionError(f"pair {(dep, arr)!r} not present")
        self._pairs.discard((dep, arr))
        self._by_dep.delete((dep, arr))
        self._by_arr.delete((arr, dep))

    def min_arrival(self, min_departure):
        """Pair with departure >= ``min_departure`` minimizing arrival, ties to
        the largest departure; None when no pair qualifies."""
        best = self._by_dep.best_from((min_departure, float("-inf")))
        if best is None:
            return None
        arr, neg_dep = best
        return -neg_dep, arr

    def max_departure_below(self, arrival_strict_upper):
        """Largest departure over pairs with arrival < the bound, or None."""
        return self._by_arr.best_below((arrival_strict_upper, float("-inf")))

    def departures_bisect(self, pred):
        """Largest departure ``d`` with ``pred(d)`` true, assuming ``pred`` is
        true on a prefix of the departures; None if it holds for none."""
        best = None
        n = self._by_dep.root
        while n is not None:
            d = n.key[0]
            if pred(d):
                best = d
                n = n.right
            else:
                n = n.left
        return best
