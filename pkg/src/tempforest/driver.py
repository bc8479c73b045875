"""Apply operation tuples (see :mod:`tempforest.workload`) to an engine."""
from __future__ import annotations

from .model import format_time


def apply_op(engine, op, latency: bool = True):
    """Run one operation; returns the query answer or None for updates.

    ``latency`` False drops the arrival component of label arguments.
    """
    kind = op[0]
    if kind == "ea":
        return engine.ea(op[1], op[2], op[3])
    if kind == "ld":
        return engine.ld(op[1], op[2], op[3])
    if kind == "reach":
        return engine.reach(op[1], op[2], op[3], op[4])
    if kind == "addv":
        engine.add_vertex(op[1])
    elif kind == "delv":
        engine.delete_vertex(op[1])
    elif kind == "link":
        engine.link(op[1], op[2], op[3], op[4] if latency else None)
    elif kind == "cut":
        engine.cut(op[1])
    elif kind == "addl":
        engine.add_label(op[1], op[2], op[3] if latency else None)
    elif kind == "dell":
        engine.delete_label(op[1], op[2], op[3] if latency else None)
    else:
        raise ValueError(f"unknown operation {kind!r}")
    return None


def format_answer(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    return format_time(x)
