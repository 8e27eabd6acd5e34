"""Compare the numba kernels with their plain Python twins.

Two measurements:

* kernel level, in this process: each compiled kernel against its
  ``.py_func`` on the same inputs (compilation excluded by a warm-up call);
* end to end, in fresh processes: a fixed workload run once with numba and
  once with ``XCLIN_DISABLE_NUMBA=1``.

Usage: ``python3 benchmarks/bench_kernels.py [--repeat N] [--skip-e2e]``
"""
from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time
import timeit

import numpy as np

from xclin import _accel, _kernels
from xclin.catalog import all_small_groups, small_group
from xclin.exterior import _presentation, exterior_square


def kernel_cases():
    """``(label, kernel, list of argument tuples)``; each case is timed as one batch."""
    G = small_group(16, 3)
    P, _ = _presentation(G, G.whole(), G.whole())
    data, start = P.encoded()
    pairing = exterior_square(G)
    W = pairing.wedge
    images = pairing.lam.ravel()[np.argsort(pairing.symbols.ravel())]
    A, B = small_group(16, 11), small_group(16, 3)
    rng = np.random.default_rng(0)
    yield "hlt_enumerate (wedge of (16,3))", _kernels.hlt_enumerate, [(2 * P.generator_count, data, start, 8192)]
    yield "relators_close (same table)", _kernels.relators_close, [(pairing.coset_table.rows, data, start)]
    yield "relators_trivial (wedge relators)", _kernels.relators_trivial, [(W.mul, W.inv, images, data, start)]
    yield "extend_images (200 image tuples)", _kernels.extend_images, \
        [(A.mul, B.mul, A.gen_idx, im) for im in rng.integers(0, B.order, size=(200, len(A.gen_idx)))]
    yield "generated_mask (all pairs, order 16)", _kernels.generated_mask, \
        [(H.mul, np.array([a, b])) for H in all_small_groups(16) for a in range(16) for b in range(16)]


def _run(fn, batch):
    for args in batch:
        fn(*args)


def bench_kernels(repeat: int) -> list[dict]:
    rows = []
    for name, fn, batch in kernel_cases():
        _run(fn, batch)                            # compile outside the timing
        fast = min(timeit.repeat(lambda: _run(fn, batch), number=1, repeat=repeat))
        slow = min(timeit.repeat(lambda: _run(fn.py_func, batch), number=1, repeat=max(1, repeat // 3)))
        rows.append({"kernel": name, "numba_s": fast, "python_s": slow, "speedup": slow / fast})
    return rows


WORKLOAD = """
import time
t = time.perf_counter()
from xclin.report import group_families
group_families(16, "exterior")
print(time.perf_counter() - t)
"""


def bench_end_to_end() -> dict:
    out = {}
    for label, flag in (("numba", "0"), ("python", "1")):
        env = dict(os.environ, XCLIN_DISABLE_NUMBA=flag)
        start = time.perf_counter()
        proc = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, capture_output=True, text=True,
                              check=True)
        out[label] = {"workload_s": float(proc.stdout.strip()), "process_s": time.perf_counter() - start}
    return out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--skip-e2e", action="store_true", help="only time individual kernels")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    if not _accel.USE_NUMBA:
        print("numba is disabled in this process; unset XCLIN_DISABLE_NUMBA to compare", file=sys.stderr)
        return 1
    result = {"kernels": bench_kernels(args.repeat)}
    if not args.skip_e2e:
        result["order16_exterior_families"] = bench_end_to_end()
    if args.json:
        print(json.dumps(result, indent=2))
        return 0
    width = max(len(r["kernel"]) for r in result["kernels"])
    print(f"{'kernel'.ljust(width)}  {'numba':>10}  {'python':>10}  speedup")
    for r in result["kernels"]:
        print(f"{r['kernel'].ljust(width)}  {r['numba_s']:>9.4f}s  {r['python_s']:>9.4f}s  {r['speedup']:>6.1f}x")
    if "order16_exterior_families" in result:
        e = result["order16_exterior_families"]
        print("\nexterior families of order 16, fresh process (workload / whole process incl. imports and JIT):")
        for label in ("numba", "python"):
            print(f"  {label:6}  {e[label]['workload_s']:7.2f}s / {e[label]['process_s']:7.2f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
