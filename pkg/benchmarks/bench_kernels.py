"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5] [--json]
"""

import argparse
import json
import statistics
import time

import numpy as np

from chaingroup import groups, kernels
from chaingroup.chain import supports_csr
from chaingroup.chartable import character_table
from chaingroup.fusion import fusion_coefficients
from chaingroup.lie import _window_supports, window


def cases():
    S5 = groups.symmetric(5)
    P = groups.direct_product(groups.dihedral(10), groups.cyclic(10))
    G64 = groups.direct_product(groups.quaternion(4), groups.cyclic(4))
    reps = lambda G: np.ascontiguousarray(G.class_reps, dtype=np.int64)
    u2 = window("U2", 8)
    ptr, targets, _ = _window_supports(u2)
    R = fusion_coefficients(character_table(groups.cyclic(200)))
    rptr, rtargets = supports_csr(R.N)
    return {
        "conjugacy_labels S5": lambda k: k.conjugacy_labels(S5.mul, S5.inv),
        "conjugacy_labels D20xZ10": lambda k: k.conjugacy_labels(P.mul, P.inv),
        "class_coefficients S5": lambda k: k.class_coefficients(S5.mul, S5.inv, S5.class_of, reps(S5)),
        "class_coefficients D20xZ10": lambda k: k.class_coefficients(P.mul, P.inv, P.class_of, reps(P)),
        "first_nonassociative order 64": lambda k: k.first_nonassociative(G64.mul),
        "fixpoint_closure U2 lmax 8": lambda k: k.fixpoint_closure(len(u2), ptr, targets),
        "fixpoint_closure Z200 fusion": lambda k: k.fixpoint_closure(R.rank, rptr, rtargets),
    }


def bench(fn, repeat):
    fn()  # warm up
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return statistics.median(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    impls = kernels.backends()
    rows = []
    for name, fn in cases().items():
        row = {"case": name}
        for b, mod in sorted(impls.items()):
            row[b] = bench(lambda: fn(mod), args.repeat)
        if "compiled" in row:
            row["speedup"] = row["python"] / row["compiled"]
        rows.append(row)
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'case':<34}{'python (s)':>12}{'compiled (s)':>14}{'speedup':>9}")
    for r in rows:
        c = f"{r['compiled']:>14.5f}{r['speedup']:>8.1f}x" if "compiled" in r else f"{'n/a':>14}"
        print(f"{r['case']:<34}{r['python']:>12.5f}{c}")


if __name__ == "__main__":
    main()
