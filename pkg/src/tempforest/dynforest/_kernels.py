"""Link-cut tree kernels over a flat node table.

Each row of ``nd`` is one node: splay/path parent, left child, right child,
weight of the represented edge to the parent, and the splay-subtree weight
sum.  ``-1`` marks an absent pointer.  ``st[0]`` counts rotations and
``st[1]`` counts accesses.
"""
from .._jit import kernel

P = 0
L = 1
R = 2
W = 3
S = 4
NCOLS = 5


@kernel
def _is_aux_root(nd, x):
    p = nd[x, P]
    return p < 0 or (nd[p, L] != x and nd[p, R] != x)


@kernel
def _pull(nd, x):
    s = nd[x, W]
    c = nd[x, L]
    if c >= 0:
        s += nd[c, S]
    c = nd[x, R]
    if c >= 0:
        s += nd[c, S]
    nd[x, S] = s


@kernel
def _rotate(nd, x, st):
    p = nd[x, P]
    g = nd[p, P]
    if not _is_aux_root(nd, p):
        if nd[g, L] == p:
            nd[g, L] = x
        else:
            nd[g, R] = x
    nd[x, P] = g
    if nd[p, L] == x:
        b = nd[x, R]
        nd[p, L] = b
        nd[x, R] = p
    else:
        b = nd[x, L]
        nd[p, R] = b
        nd[x, L] = p
    if b >= 0:
        nd[b, P] = p
    nd[p, P] = x
    _pull(nd, p)
    _pull(nd, x)
    st[0] += 1


@kernel
def _splay(nd, x, st):
    while not _is_aux_root(nd, x):
        p = nd[x, P]
        if not _is_aux_root(nd, p):
            g = nd[p, P]
            if (nd[g, L] == p) == (nd[p, L] == x):
                _rotate(nd, p, st)
            else:
                _rotate(nd, x, st)
        _rotate(nd, x, st)


@kernel
def access(nd, x, st):
    """Expose the root path of ``x``; return the last path-switch node."""
    st[1] += 1
    last = -1
    y = x
    while y >= 0:
        _splay(nd, y, st)
        nd[y, R] = last
        _pull(nd, y)
        last = y
        y = nd[y, P]
    _splay(nd, x, st)
    return last


@kernel
def find_root(nd, x, st):
    access(nd, x, st)
    y = x
    while nd[y, L] >= 0:
        y = nd[y, L]
    _splay(nd, y, st)
    return y


@kernel
def link(nd, c, p, w, st):
    # c must be the root of its represented tree
    access(nd, c, st)
    nd[c, W] = w
    _pull(nd, c)
    nd[c, P] = p


@kernel
def cut(nd, c, st):
    access(nd, c, st)
    a = nd[c, L]
    if a >= 0:
        nd[a, P] = -1
        nd[c, L] = -1
    nd[c, W] = 0
    _pull(nd, c)


@kernel
def weighted_depth(nd, x, st):
    access(nd, x, st)
    return nd[x, S]


@kernel
def lca(nd, a, b, st):
    """Lowest common ancestor, or -1 when ``a`` and ``b`` are in different trees."""
    if find_root(nd, a, st) != find_root(nd, b, st):
        return -1
    access(nd, a, st)
    return access(nd, b, st)


@kernel
def dist(nd, a, b, st):
    c = lca(nd, a, b, st)
    if c < 0:
        return -1
    da = weighted_depth(nd, a, st)
    db = weighted_depth(nd, b, st)
    dc = weighted_depth(nd, c, st)
    return da + db - 2 * dc


@kernel
def level_ancestor(nd, x, w, st):
    """Deepest ancestor ``a`` of ``x`` with weighted distance(x, a) >= w, else -1."""
    access(nd, x, st)
    cur = x
    acc = 0
    best = -1
    last = x
    while cur >= 0:
        last = cur
        r = nd[cur, R]
        after = acc
        if r >= 0:
            after += nd[r, S]
        if after >= w:
            best = cur
            cur = r
        else:
            acc = after + nd[cur, W]
            cur = nd[cur, L]
    if best >= 0:
        _splay(nd, best, st)
    else:
        _splay(nd, last, st)
    return best


@kernel
def aux_parent(nd, x, st):
    """Represented parent recovered from the splay structure (validation aid)."""
    access(nd, x, st)
    y = nd[x, L]
    if y < 0:
        return -1
    while nd[y, R] >= 0:
        y = nd[y, R]
    _splay(nd, y, st)
    return y
