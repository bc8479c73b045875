"""Text trace format: one operation per line, '#' starts a comment.

    addv v | delv v | link u v l [a] | cut v | addl v l [a] | dell v l [a]
    ea u v t | ld u v t | reach u v td ta

Vertex ids and labels are decimal integers; query times may also be
"+inf" or "-inf".  Parsed operations use the tuple layout of
:mod:`tempforest.workload`, with ``None`` for an omitted arrival.
"""
from __future__ import annotations

from .model import format_time, parse_time

_ARITY = {
    "addv": (1, 1), "delv": (1, 1), "cut": (1, 1),
    "link": (3, 4), "addl": (2, 3), "dell": (2, 3),
    "ea": (3, 3), "ld": (3, 3), "reach": (4, 4),
}
QUERIES = ("ea", "ld", "reach")


class TraceError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def _int(tok, lineno):
    try:
        return int(tok)
    except ValueError:
        raise TraceError(lineno, f"expected an integer, got {tok!r}") from None


def parse_line(line: str, lineno: int = 0):
    """Operation tuple for one line, or None for blank/comment lines."""
    body = line.split("#", 1)[0].split()
    if not body:
        return None
    kind, args = body[0], body[1:]
    if kind not in _ARITY:
        raise TraceError(lineno, f"unknown operation {kind!r}")
    lo, hi = _ARITY[kind]
    if not lo <= len(args) <= hi:
        want = str(lo) if lo == hi else f"{lo} or {hi}"
        raise TraceError(lineno, f"{kind} takes {want} arguments, got {len(args)}")
    if kind in QUERIES:
        nv = 2
        verts = [_int(a, lineno) for a in args[:nv]]
        try:
            times = [parse_time(a) for a in args[nv:]]
        except ValueError as e:
            raise TraceError(lineno, str(e)) from None
        return (kind, *verts, *times)
    nums = [_int(a, lineno) for a in args]
    if kind in ("link", "addl", "dell") and len(args) < hi:
        nums.append(None)
    return (kind, *nums)


def parse_trace(lines):
    """List of (line number, operation) pairs; raises TraceError."""
    out = []
    for i, line in enumerate(lines, 1):
        op = parse_line(line, i)
        if op is not None:
            out.append((i, op))
    return out


def format_op(op, latency: bool = True) -> str:
    """Trace line for an operation; the arrival is written only when
    ``latency`` is set and it is not None."""
    kind = op[0]
    if kind in QUERIES:
        return " ".join([kind, str(op[1]), str(op[2])] + [format_time(t) for t in op[3:]])
    parts = [kind] + [str(x) for x in op[1:] if x is not None]
    if kind in ("link", "addl", "dell") and not latency and len(parts) == len(op):
        parts.pop()
    return " ".join(parts)
