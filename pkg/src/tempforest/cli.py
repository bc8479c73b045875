"""Command-line entry point: run, gen, difftest, bench."""
from __future__ import annotations

import argparse
import sys

from ._jit import backend_name
from .bench import format_rows, series_rows, time_ops
from .driver import apply_op, format_answer
from .engines import ENGINES, engine_latency, make_engine
from .errors import NotAPathError, PreconditionError
from .oracle import OracleEngine, or_validate
from .trace import QUERIES, TraceError, format_op, parse_trace
from .workload import REGIMES, WorkloadParams, generate

EXIT_OK, EXIT_FAIL, EXIT_PARSE = 0, 1, 2


def _open_out(path):
    return sys.stdout if path in (None, "-") else open(path, "w", encoding="utf-8")


def _read_lines(path):
    if path in (None, "-"):
        return sys.stdin.read().splitlines()
    with open(path, encoding="utf-8") as fh:
        return fh.read().splitlines()


def _add_workload_args(p):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=64, help="maximum number of vertices")
    p.add_argument("--ops", type=int, default=512)
    p.add_argument("--label-lo", type=int, default=-50)
    p.add_argument("--label-hi", type=int, default=50)
    p.add_argument("--latency", choices=("none", "uniform", "random"), default="none")
    p.add_argument("--d", type=int, default=0, help="latency (uniform) or maximum latency (random)")
    p.add_argument("--regime", choices=REGIMES, default="mixed")
    p.add_argument("--query-fraction", type=float, default=0.4)


def _params(a) -> WorkloadParams:
    return WorkloadParams(n=a.n, ops=a.ops, label_lo=a.label_lo, label_hi=a.label_hi,
                          latency=a.latency, latency_d=a.d, regime=a.regime,
                          query_fraction=a.query_fraction)


# -- run ---------------------------------------------------------------------

def cmd_run(a) -> int:
    try:
        ops = parse_trace(_read_lines(a.trace))
    except TraceError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    engine = make_engine(a.engine)
    out = _open_out(a.output)
    try:
        for lineno, op in ops:
            try:
                ans = apply_op(engine, op, latency=True)
            except PreconditionError as e:
                print(f"line {lineno}: rejected: {e}", file=sys.stderr)
                if op[0] in QUERIES:
                    out.write("error\n")
                if a.strict:
                    return EXIT_FAIL
                continue
            if op[0] in QUERIES:
                out.write(format_answer(ans) + "\n")
            elif a.validate_every_op:
                report = or_validate(engine)
                if report:
                    print(f"line {lineno}: validation failed: {report[0]}", file=sys.stderr)
                    return EXIT_FAIL
    finally:
        if out is not sys.stdout:
            out.close()
        else:
            out.flush()
    return EXIT_OK


# -- gen -----------------------------------------------------------------------

def cmd_gen(a) -> int:
    try:
        ops = generate(a.seed, _params(a))
    except ValueError as e:
        print(f"infeasible parameters: {e}", file=sys.stderr)
        return EXIT_FAIL
    out = _open_out(a.output)
    lat = a.latency != "none"
    for op in ops:
        out.write(format_op(op, latency=lat) + "\n")
    if out is not sys.stdout:
        out.close()
    return EXIT_OK


# -- difftest --------------------------------------------------------------------

def _corrupt(engine) -> bool:
    """Detach one successor-forest node from its parent (fault injection)."""
    for view in engine.validation_views():
        f = view.forest
        for k in sorted(view.node_keys(), key=repr):
            h = view.handle_of(k)
            if f.parent(h) is not None:
                f.cut(h)
                return True
    return False


def difftest_one(engine_name: str, seed: int, params: WorkloadParams,
                 validate: bool = True, inject_at: int | None = None):
    """First divergence of an engine from the oracle, or None.

    The result is (op index, op, kind, detail) with kind one of
    "answer", "rejection" or "validation".
    """
    lat = engine_latency(engine_name)
    if not lat:
        params.latency, params.latency_d = "none", 0
    ops = generate(seed, params)
    engine = make_engine(engine_name)
    ref = OracleEngine(latency=lat)
    for i, op in enumerate(ops):
        try:
            got, err_got = apply_op(engine, op, latency=lat), None
        except PreconditionError as e:
            got, err_got = None, e
        try:
            want, err_want = apply_op(ref, op, latency=lat), None
        except PreconditionError as e:
            want, err_want = None, e
        if isinstance(err_got, NotAPathError) and err_want is None:
            continue  # the path engine only answers inside path-shaped trees
        if (err_got is None) != (err_want is None):
            return i, op, "rejection", f"engine={err_got!s} oracle={err_want!s}"
        if got != want:
            return i, op, "answer", f"engine={format_answer(got)} oracle={format_answer(want)}"
        if inject_at is not None and i == inject_at:
            _corrupt(engine)
        if validate and op[0] not in QUERIES:
            report = or_validate(engine)
            if report:
                return i, op, "validation", str(report[0])
    return None


def cmd_difftest(a) -> int:
    bad = 0
    for seed in range(a.seed, a.seed + a.seeds):
        res = difftest_one(a.engine, seed, _params(a), validate=not a.no_validate,
                           inject_at=a.inject_fault)
        if res is None:
            continue
        bad += 1
        i, op, kind, detail = res
        lat = engine_latency(a.engine)
        print(f"seed {seed} op {i} [{format_op(op, latency=lat)}]: {kind} divergence: {detail}")
    print(f"{a.engine}: {a.seeds - bad}/{a.seeds} seeds agree with the oracle")
    return EXIT_OK if bad == 0 else EXIT_FAIL


# -- bench -------------------------------------------------------------------------

def cmd_bench(a) -> int:
    rows = []
    engines = a.engines.split(",")
    for name in engines:
        if name not in ENGINES:
            print(f"unknown engine {name!r}", file=sys.stderr)
            return EXIT_PARSE
        p = _params(a)
        if not engine_latency(name):
            p.latency, p.latency_d = "none", 0
        rows.extend(time_ops(name, generate(a.seed, p)))
    if a.series:
        lo, hi = (int(x) for x in a.series.split(":"))
        rows.extend(series_rows(seeds=(a.seed,), exps=range(lo, hi + 1), d=max(a.d, 1)))
    out = _open_out(a.output)
    out.write(format_rows(rows))
    if out is not sys.stdout:
        out.close()
    print(f"backend: {backend_name()}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tempforest", description="Dynamic temporal forest toolkit")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("run", help="run a trace and print one line per query")
    p.add_argument("trace", nargs="?", default="-")
    p.add_argument("--engine", choices=ENGINES, default="forest")
    p.add_argument("--strict", action="store_true", help="abort on the first rejected line")
    p.add_argument("--validate-every-op", action="store_true")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(fn=cmd_run)

    p = sub.add_parser("gen", help="generate a seeded trace")
    _add_workload_args(p)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("difftest", help="compare an engine with the oracle")
    _add_workload_args(p)
    p.add_argument("--engine", choices=[e for e in ENGINES if e != "oracle"], default="forest")
    p.add_argument("--seeds", type=int, default=1)
    p.add_argument("--no-validate", action="store_true", help="skip structural validation")
    p.add_argument("--inject-fault", type=int, default=None, metavar="OP",
                   help="corrupt one successor-forest edge after this op (self-test)")
    p.set_defaults(fn=cmd_difftest)

    p = sub.add_parser("bench", help="time engines and print CSV")
    _add_workload_args(p)
    p.add_argument("--engines", default="forest,latency")
    p.add_argument("--series", default=None, metavar="LO:HI",
                   help="add the latency rewire series for M = 2^LO .. 2^HI")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(fn=cmd_bench)
    return ap


def main(argv=None) -> int:
    a = build_parser().parse_args(argv)
    return a.fn(a)


if __name__ == "__main__":
    sys.exit(main())
