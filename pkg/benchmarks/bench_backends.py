"""Compare the numba-compiled kernels with the plain-Python fallback.

Each backend runs in its own interpreter because TEMPFOREST_DISABLE_JIT is
read at import time.  Usage:

    python benchmarks/bench_backends.py [--n 4096] [--ops 20000] [--m 8192]
"""
import argparse
import json
import os
import subprocess
import sys
import time

CHILD = r"""
import json, random, sys, time
from tempforest._jit import backend_name
from tempforest.bench import amortized_run
from tempforest.dynforest import DynamicForest

n, ops, m = (int(x) for x in sys.argv[1:4])


def forest_run(seed):
    rng = random.Random(seed)
    f = DynamicForest(capacity=n)
    hs = [f.add_node() for _ in range(n)]
    for i in range(1, n):
        f.link(hs[i], hs[rng.randrange(max(0, i - 8), i)], rng.randint(0, 1))
    t0 = time.perf_counter()
    for _ in range(ops):
        a, b = rng.choice(hs), rng.choice(hs)
        r = rng.random()
        if r < 0.4:
            f.dist(a, b)
        elif r < 0.7:
            f.wla(a, rng.randint(0, 4))
        elif f.parent(a) is not None:
            p = f.parent(a)
            w = f.weight(a)
            f.cut(a)
            f.link(a, p, w)
    return time.perf_counter() - t0


forest_run(0)  # loads compiled kernels
amortized_run(0, 256, "incremental")
res = {"backend": backend_name(), "dynforest_s": min(forest_run(s) for s in (1, 2, 3))}
t0 = time.perf_counter()
amortized_run(1, m, "incremental")
res["latency_build_s"] = time.perf_counter() - t0
print(json.dumps(res))
"""


def run(disable: bool, n: int, ops: int, m: int) -> dict:
    env = dict(os.environ)
    env["TEMPFOREST_DISABLE_JIT"] = "1" if disable else "0"
    out = subprocess.run([sys.executable, "-c", CHILD, str(n), str(ops), str(m)],
                         env=env, check=True, capture_output=True, text=True).stdout
    return json.loads(out.strip().splitlines()[-1])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=4096, help="dynamic-forest nodes")
    ap.add_argument("--ops", type=int, default=20000, help="dynamic-forest operations")
    ap.add_argument("--m", type=int, default=8192, help="labels inserted in the latency run")
    a = ap.parse_args(argv)
    t = time.perf_counter()
    rows = [run(False, a.n, a.ops, a.m), run(True, a.n, a.ops, a.m)]
    print("backend,dynforest_ops_per_s,latency_build_s")
    for r in rows:
        print(f"{r['backend']},{a.ops / r['dynforest_s']:.0f},{r['latency_build_s']:.3f}")
    jit, py = rows
    print(f"# speedup numba/python: dynforest {py['dynforest_s'] / jit['dynforest_s']:.1f}x, "
          f"latency build {py['latency_build_s'] / jit['latency_build_s']:.1f}x "
          f"({time.perf_counter() - t:.0f}s wall)", file=sys.stderr)


if __name__ == "__main__":
    main()
