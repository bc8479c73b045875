"""Seeded generator of precondition-respecting operation sequences.

Operations are tuples::

    ("addv", v)            ("delv", v)
    ("link", u, v, l, a)   ("cut", v)
    ("addl", v, l, a)      ("dell", v, l, a)
    ("ea", u, v, t)        ("ld", u, v, t)        ("reach", u, v, td, ta)

``a`` is the arrival time (equal to ``l`` without latencies).
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .model import NEG_INF, POS_INF

UPDATE_OPS = ("addv", "delv", "link", "cut", "addl", "dell")
QUERY_OPS = ("ea", "ld", "reach")
REGIMES = ("mixed", "incremental", "decremental")


@dataclass
class WorkloadParams:
    n: int = 64
    ops: int = 512
    label_lo: int = -50
    label_hi: int = 50
    latency: str = "none"          # none | uniform | random
    latency_d: int = 0             # fixed latency (uniform) or max latency (random)
    regime: str = "mixed"
    query_fraction: float = 0.4
    labels_per_edge: int = 3       # decremental build prefix

    def check(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.ops < 0:
            raise ValueError("ops must be nonnegative")
        if self.label_hi < self.label_lo:
            raise ValueError("empty label range")
        if self.latency not in ("none", "uniform", "random"):
            raise ValueError(f"unknown latency mode {self.latency!r}")
        if self.latency_d < 0:
            raise ValueError("latency must be nonnegative")
        if self.regime not in REGIMES:
            raise ValueError(f"unknown regime {self.regime!r}")
        if not 0.0 <= self.query_fraction <= 1.0:
            raise ValueError("query_fraction must lie in [0, 1]")


class _Bag:
    """Set with O(1) add, remove and uniform random choice."""

    __slots__ = ("items", "pos")

    def __init__(self):
        self.items = []
        self.pos = {}

    def __len__(self):
        return len(self.items)

    def __contains__(self, x):
        return x in self.pos

    def add(self, x):
        if x not in self.pos:
            self.pos[x] = len(self.items)
            self.items.append(x)

    def discard(self, x):
        i = self.pos.pop(x, None)
        if i is None:
            return
        last = self.items.pop()
        if i < len(self.items):
            self.items[i] = last
            self.pos[last] = i

    def choice(self, rng):
        return self.items[rng.randrange(len(self.items))]


class _State:
    def __init__(self):
        self.parent = {}
        self.children = {}
        self.labels = {}
        self.verts = _Bag()
        self.roots = _Bag()
        self.nonroots = _Bag()
        self.multi = _Bag()       # non-roots with >= 2 labels
        self.single = _Bag()      # non-roots with exactly 1 label
        self.isolated = _Bag()
        self.next_id = 0

    def root_of(self, v):
        while v in self.parent:
            v = self.parent[v]
        return v

    def _label_bags(self, v):
        k = len(self.labels.get(v, ()))
        for bag in (self.multi, self.single):
            bag.discard(v)
        if v in self.parent:
            (self.multi if k >= 2 else self.single).add(v)

    def _iso(self, v):
        if v not in self.parent and not self.children.get(v):
            self.isolated.add(v)
        else:
            self.isolated.discard(v)

    def addv(self):
        v = self.next_id
        self.next_id += 1
        self.verts.add(v)
        self.roots.add(v)
        self.isolated.add(v)
        return v

    def delv(self, v):
        self.verts.discard(v)
        self.roots.discard(v)
        self.isolated.discard(v)
        self.children.pop(v, None)

    def link(self, u, v, lab):
        self.parent[u] = v
        self.children.setdefault(v, set()).add(u)
        self.labels[u] = {lab}
        self.roots.discard(u)
        self.nonroots.add(u)
        self._label_bags(u)
        self._iso(u)
        self._iso(v)

    def cut(self, v):
        p = self.parent.pop(v)
        self.children[p].discard(v)
        del self.labels[v]
        self.roots.add(v)
        self.nonroots.discard(v)
        self._label_bags(v)
        self._iso(v)
        self._iso(p)

    def addl(self, v, lab):
        self.labels[v].add(lab)
        self._label_bags(v)

    def dell(self, v, lab):
        self.labels[v].discard(lab)
        self._label_bags(v)


class WorkloadGenerator:
    def __init__(self, seed: int, params: WorkloadParams):
        params.check()
        self.p = params
        self.rng = random.Random(seed)
        self.s = _State()

    # -- helpers -------------------------------------------------------------

    def _label(self):
        p, rng = self.p, self.rng
        dep = rng.randint(p.label_lo, p.label_hi)
        if p.latency == "uniform":
            return dep, dep + p.latency_d
        if p.latency == "random":
            return dep, dep + rng.randint(0, p.latency_d)
        return dep, dep

    def _fresh_label(self, v, tries=8):
        for _ in range(tries):
            lab = self._label()
            if lab not in self.s.labels[v]:
                return lab
        return None

    def _time(self):
        rng = self.rng
        r = rng.random()
        if r < 0.04:
            return NEG_INF
        if r < 0.08:
            return POS_INF
        span = self.p.label_hi - self.p.label_lo
        return rng.randint(self.p.label_lo - 2, self.p.label_hi + 2 + (self.p.latency_d if self.p.latency != "none" else 0) + span // 8)

    def _query_pair(self):
        rng, s = self.rng, self.s
        u = s.verts.choice(rng)
        r = rng.random()
        if r < 0.1:
            return u, s.verts.choice(rng)
        x = u
        for _ in range(rng.randint(0, 6)):
            if x not in s.parent:
                break
            x = s.parent[x]
        v = x
        for _ in range(rng.randint(0, 6) if r < 0.7 else 0):
            ch = s.children.get(v)
            if not ch:
                break
            v = rng.choice(sorted(ch))
        if rng.random() < 0.5:
            u, v = v, u
        return u, v

    def _query(self):
        rng = self.rng
        u, v = self._query_pair()
        kind = rng.choice(QUERY_OPS)
        if kind == "reach":
            a, b = self._time(), self._time()
            return ("reach", u, v, a, b)
        return (kind, u, v, self._time())

    # -- update choosers (None when not applicable right now) ----------------

    def _addv(self):
        if len(self.s.verts) >= self.p.n:
            return None
        return ("addv", self.s.addv())

    def _delv(self):
        s = self.s
        if not s.isolated:
            return None
        v = s.isolated.choice(self.rng)
        s.delv(v)
        return ("delv", v)

    def _link(self):
        s, rng = self.s, self.rng
        if len(s.roots) < 2:
            return None
        for _ in range(6):
            u = s.roots.choice(rng)
            v = s.verts.choice(rng)
            if v != u and s.root_of(v) != u:
                lab = self._label()
                s.link(u, v, lab)
                return ("link", u, v) + lab
        return None

    def _cut(self):
        s = self.s
        if not s.single:
            return None
        v = s.single.choice(self.rng)
        s.cut(v)
        return ("cut", v)

    def _addl(self):
        s = self.s
        if not s.nonroots:
            return None
        v = s.nonroots.choice(self.rng)
        lab = self._fresh_label(v)
        if lab is None:
            return None
        s.addl(v, lab)
        return ("addl", v) + lab

    def _dell(self):
        s, rng = self.s, self.rng
        if not s.multi:
            return None
        v = s.multi.choice(rng)
        lab = rng.choice(sorted(s.labels[v]))
        s.dell(v, lab)
        return ("dell", v) + lab

    def _pick(self, weighted):
        rng = self.rng
        choosers = list(weighted)
        for _ in range(12):
            total = sum(w for _, w in choosers)
            r = rng.random() * total
            for fn, w in choosers:
                r -= w
                if r < 0:
                    break
            op = fn()
            if op is not None:
                return op
        return None

    # -- regimes -------------------------------------------------------------

    def __iter__(self):
        p, rng = self.p, self.rng
        if p.regime == "decremental":
            yield from self._build_prefix()
        for _ in range(p.ops):
            if not self.s.verts:
                if p.regime == "decremental":
                    return
                op = self._addv()
                if op is not None:
                    yield op
                continue
            if rng.random() < p.query_fraction:
                yield self._query()
                continue
            if p.regime == "mixed":
                grow = len(self.s.verts) < p.n
                op = self._pick([
                    (self._addv, 3.0 if grow else 0.0),
                    (self._delv, 0.3),
                    (self._link, 2.5),
                    (self._cut, 1.0),
                    (self._addl, 3.0),
                    (self._dell, 2.0),
                ])
            elif p.regime == "incremental":
                op = self._pick([(self._addv, 1.0), (self._link, 2.0), (self._addl, 4.0)])
            else:
                op = self._pick([(self._dell, 4.0), (self._cut, 1.5), (self._delv, 0.5)])
            yield op if op is not None else self._query()

    def _build_prefix(self):
        p, rng, s = self.p, self.rng, self.s
        for _ in range(p.n):
            yield self._addv()
        order = list(range(p.n))
        rng.shuffle(order)
        for i in range(1, p.n):
            u = order[i]
            if rng.random() < 0.9:
                v = order[rng.randrange(i)]
                # u is still a root and v sits in an earlier, different tree
                lab = self._label()
                s.link(u, v, lab)
                yield ("link", u, v) + lab
        for u in order:
            if u not in s.parent:
                continue
            for _ in range(rng.randint(0, 2 * p.labels_per_edge - 2)):
                lab = self._fresh_label(u)
                if lab is not None:
                    s.addl(u, lab)
                    yield ("addl", u) + lab


def generate(seed: int, params: WorkloadParams) -> list[tuple]:
    return list(WorkloadGenerator(seed, params))
