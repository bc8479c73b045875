"""Timing and instrumented-cost measurements shared by the CLI and tests."""
from __future__ import annotations

import random
import time
from collections import defaultdict

import numpy as np

from .driver import apply_op
from .engines import engine_latency, make_engine
from .errors import PreconditionError

CSV_HEADER = "engine,op,count,total_ns,p50_ns,p99_ns,fixparent_calls,rewires"


def harmonic(m: int) -> float:
    return sum(1.0 / k for k in range(1, m + 1))


def _fix_rewire(engine):
    c = engine.counters() if hasattr(engine, "counters") else {}
    return c.get("fixparent_calls", 0), c.get("rewires", 0)


def time_ops(name: str, ops) -> list[tuple]:
    """Per-operation-kind timing rows for one engine over a workload.

    A throwaway engine first runs a prefix of the workload so that compiled
    kernels are loaded before timing starts.
    """
    warm = make_engine(name)
    for op in ops[:64]:
        try:
            apply_op(warm, op, latency=engine_latency(name))
        except PreconditionError:
            pass
    engine = make_engine(name)
    lat = engine_latency(name)
    ns = defaultdict(list)
    fix = defaultdict(int)
    rew = defaultdict(int)
    clock = time.perf_counter_ns
    for op in ops:
        f0, r0 = _fix_rewire(engine)
        kind = op[0]
        t0 = clock()
        try:
            apply_op(engine, op, latency=lat)
        except PreconditionError:
            kind += "_rejected"
        ns[kind].append(clock() - t0)
        f1, r1 = _fix_rewire(engine)
        fix[kind] += f1 - f0
        rew[kind] += r1 - r0
    rows = []
    for kind in sorted(ns):
        a = np.asarray(ns[kind], dtype=np.int64)
        rows.append((name, kind, len(a), int(a.sum()), int(np.percentile(a, 50)),
                     int(np.percentile(a, 99)), fix[kind], rew[kind]))
    return rows


# -- label-only workloads for the cost and amortization checks ---------------

def _label(rng, hi, d, mode):
    dep = rng.randint(0, hi)
    if mode == "uniform":
        return dep, dep + d
    if mode == "random":
        return dep, dep + rng.randint(0, d)
    return dep, dep


def build_ops(seed: int, m: int, latency: str = "random", d: int = 10,
              labels_per_edge: int = 8, label_hi: int | None = None):
    """Insertion-only sequence creating ``m`` labels on a random recursive tree.

    Returns the operation list; vertices, links and label additions are
    interleaved so the tree grows while labels arrive.
    """
    rng = random.Random(seed)
    n = max(2, m // labels_per_edge)
    hi = m if label_hi is None else label_hi
    ops = [("addv", 0)]
    labels = {}
    created = 0
    next_v = 1
    while created < m:
        if next_v < n and (rng.random() < 1.0 / labels_per_edge or len(labels) == 0):
            v = next_v
            next_v += 1
            ops.append(("addv", v))
            lab = _label(rng, hi, d, latency)
            ops.append(("link", v, rng.randrange(v)) + lab)
            labels[v] = {lab}
        else:
            v = rng.choice(list(labels)) if len(labels) < 64 else rng.randrange(1, next_v)
            lab = _label(rng, hi, d, latency)
            if lab in labels[v]:
                continue
            ops.append(("addl", v) + lab)
            labels[v].add(lab)
        created += 1
    return ops, labels


def teardown_ops(seed: int, labels: dict):
    """Deletion-only sequence removing every label (cut for the last one)."""
    rng = random.Random(seed + 7919)
    pool = [(v, lab) for v in sorted(labels) for lab in sorted(labels[v])]
    rng.shuffle(pool)
    left = {v: len(s) for v, s in labels.items()}
    ops = []
    for v, lab in pool:
        if left[v] > 1:
            ops.append(("dell", v) + lab)
        else:
            ops.append(("cut", v))
        left[v] -= 1
    return ops


def amortized_run(seed: int, m: int, regime: str, d: int = 10):
    """Total rewires and FixParent calls (both twins) while inserting or
    deleting ``m`` random-latency labels on the latency engine."""
    from .latency import LatencyTemporalForest
    build, labels = build_ops(seed, m, "random", d)
    lf = LatencyTemporalForest()
    if regime == "incremental":
        body = build
    else:
        for op in build:
            apply_op(lf, op)
        body = teardown_ops(seed, labels)
    f0, r0 = _fix_rewire(lf)
    clock = time.perf_counter_ns
    ns = np.empty(len(body), dtype=np.int64)
    for i, op in enumerate(body):
        t0 = clock()
        apply_op(lf, op)
        ns[i] = clock() - t0
    f1, r1 = _fix_rewire(lf)
    return {"m": m, "regime": regime, "rewires": r1 - r0, "fixparent_calls": f1 - f0,
            "elapsed_ns": int(ns.sum()), "p50_ns": int(np.percentile(ns, 50)),
            "p99_ns": int(np.percentile(ns, 99)), "count": len(body),
            "ratio": (r1 - r0) / (m * harmonic(m)), "per_update": (r1 - r0) / m}


def per_update_costs(engine, ops, latency=True):
    """Max FixParent calls and dynamic-forest primitive calls per update,
    taken per successor forest."""
    worst_fix = worst_prim = 0
    for op in ops:
        if op[0] in ("ea", "ld", "reach"):
            apply_op(engine, op, latency=latency)
            continue
        before = [(tw.fixparent_calls, tw.forest.primitive_calls) for tw in engine.twins]
        apply_op(engine, op, latency=latency)
        for tw, (f0, p0) in zip(engine.twins, before):
            worst_fix = max(worst_fix, tw.fixparent_calls - f0)
            worst_prim = max(worst_prim, tw.forest.primitive_calls - p0)
    return worst_fix, worst_prim


def series_rows(seeds=(0,), exps=range(10, 14), d=10):
    rows = []
    for regime in ("incremental", "decremental"):
        for e in exps:
            m = 1 << e
            for s in seeds:
                r = amortized_run(s, m, regime, d)
                rows.append(("latency", f"{regime}_M{m}_seed{s}", r["count"], r["elapsed_ns"],
                             r["p50_ns"], r["p99_ns"], r["fixparent_calls"], r["rewires"]))
    return rows


def format_rows(rows) -> str:
    lines = [CSV_HEADER]
    lines += [",".join(str(x) for x in r) for r in rows]
    return "\n".join(lines) + "\n"


__all__ = ["CSV_HEADER", "amortized_run", "build_ops", "format_rows", "harmonic",
           "per_update_costs", "series_rows", "teardown_ops", "time_ops"]
