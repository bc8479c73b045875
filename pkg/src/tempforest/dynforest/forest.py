from collections import Counter

import numpy as np

from ..errors import PreconditionError
from . import _kernels as K


class ForestUsageError(PreconditionError):
    pass


class DynamicForest:
    """Rooted forest with 0/1 edge weights and weighted level-ancestor queries.

    Backed by a link-cut tree (splay trees over preferred paths), so every
    operation runs in *amortized* O(log n) time; queries restructure the
    splay trees too.  The represented parent of each node is additionally
    kept in a plain array so that :meth:`parent` is O(1).

    Handles are integers that are never reused within one instance.
    """

    def __init__(self, capacity: int = 16):
        capacity = max(4, int(capacity))
        self._nd = self._blank(capacity)
        self._st = np.zeros(2, dtype=np.int64)
        self._next = 0
        self._alive: list[bool] = []
        self._par: list[int] = []
        self._w: list[int] = []
        self._nchild: list[int] = []
        self._live = 0
        self.calls: Counter = Counter()

    @staticmethod
    def _blank(n):
        nd = np.full((n, K.NCOLS), -1, dtype=np.int64)
        nd[:, K.W] = 0
        nd[:, K.S] = 0
        return nd

    # -- bookkeeping -------------------------------------------------------

    def __len__(self):
        return self._live

    @property
    def rotations(self) -> int:
        return int(self._st[0])

    @property
    def accesses(self) -> int:
        return int(self._st[1])

    @property
    def primitive_calls(self) -> int:
        return sum(self.calls.values())

    def is_alive(self, h) -> bool:
        return 0 <= h < self._next and self._alive[h]

    def _check(self, h):
        if not (0 <= h < self._next) or not self._alive[h]:
            raise ForestUsageError(f"invalid node handle {h!r}")

    def nodes(self):
        return [h for h in range(self._next) if self._alive[h]]

    # -- updates -----------------------------------------------------------

    def add_node(self) -> int:
        self.calls["add_node"] += 1
        h = self._next
        if h >= self._nd.shape[0]:
            grown = self._blank(2 * self._nd.shape[0])
            grown[: self._nd.shape[0]] = self._nd
            self._nd = grown
        self._next += 1
        self._alive.append(True)
        self._par.append(-1)
        self._w.append(0)
        self._nchild.append(0)
        self._live += 1
        return h

    def remove_node(self, h):
        self._check(h)
        if self._par[h] >= 0 or self._nchild[h]:
            raise ForestUsageError(f"node {h} is not isolated")
        self.calls["remove_node"] += 1
        self._alive[h] = False
        self._live -= 1

    def link(self, child, parent, w=1):
        self._check(child)
        self._check(parent)
        if w not in (0, 1):
            raise ForestUsageError(f"edge weight must be 0 or 1, got {w!r}")
        if self._par[child] >= 0:
            raise ForestUsageError(f"node {child} is not a root")
        if child == parent or K.find_root(self._nd, parent, self._st) == child:
            raise ForestUsageError(f"nodes {child} and {parent} are in the same tree")
        self.calls["link"] += 1
        K.link(self._nd, child, parent, w, self._st)
        self._par[child] = parent
        self._w[child] = w
        self._nchild[parent] += 1

    def cut(self, child):
        self._check(child)
        p = self._par[child]
        if p < 0:
            raise ForestUsageError(f"node {child} is a root")
        self.calls["cut"] += 1
        K.cut(self._nd, child, self._st)
        self._par[child] = -1
        self._w[child] = 0
        self._nchild[p] -= 1

    # -- queries -----------------------------------------------------------

    def parent(self, h):
        self._check(h)
        p = self._par[h]
        return None if p < 0 else p

    def weight(self, h):
        """Weight of the edge from ``h`` to its parent (None for a root)."""
        self._check(h)
        return None if self._par[h] < 0 else self._w[h]

    def child_count(self, h) -> int:
        self._check(h)
        return self._nchild[h]

    def root(self, h):
        self._check(h)
        self.calls["root"] += 1
        return int(K.find_root(self._nd, h, self._st))

    def lca(self, a, b):
        self._check(a)
        self._check(b)
        self.calls["lca"] += 1
        c = K.lca(self._nd, a, b, self._st)
        return None if c < 0 else int(c)

    def dist(self, a, b):
        """Sum of edge weights on the a-b path, or None across trees."""
        self._check(a)
        self._check(b)
        self.calls["dist"] += 1
        d = K.dist(self._nd, a, b, self._st)
        return None if d < 0 else int(d)

    def wla(self, h, w):
        """Deepest ancestor of ``h`` (``h`` included) at weighted distance >= ``w``."""
        self._check(h)
        if w < 0:
            raise ForestUsageError("level-ancestor distance must be nonnegative")
        self.calls["wla"] += 1
        a = K.level_ancestor(self._nd, h, w, self._st)
        return None if a < 0 else int(a)

    def parent_from_splay(self, h):
        """Parent as derived from the splay trees; used to cross-check :meth:`parent`."""
        self._check(h)
        p = K.aux_parent(self._nd, h, self._st)
        return None if p < 0 else int(p)

    def depth(self, h) -> int:
        """Weighted distance from ``h`` to the root of its tree."""
        self._check(h)
        self.calls["depth"] += 1
        return int(K.weighted_depth(self._nd, h, self._st))
