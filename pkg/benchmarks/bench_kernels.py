"""Compare the numba loop kernels with the vectorized numpy ones.

Usage: python3 benchmarks/bench_kernels.py [--repeat K] [--json]

Each kernel runs once per backend to warm up (numba compiles on first call,
cached on disk afterwards), then ``repeat`` timed runs; the best time is
reported.  Results are also checked for equality across backends.
"""

import argparse
import json
import time

import numpy as np

from groupdeform import _jit, kernels
from groupdeform.groups import hyperoctahedral, symmetric, weyl_d


def _cases():
    b5 = hyperoctahedral(5).generator_rows()
    d6 = weyl_d(6).generator_rows()
    s7 = symmetric(7).generator_rows()
    b4_elems = kernels.closure(hyperoctahedral(4).generator_rows())
    d5 = weyl_d(5)
    d5_elems = kernels.closure(d5.generator_rows())
    conj = kernels.conjugation_images(d5_elems, d5.generator_rows())
    return [
        ("closure B_5 (3840)", lambda: kernels.closure(b5)),
        ("closure D_6 (23040)", lambda: kernels.closure(d6)),
        ("closure S_7 (5040)", lambda: kernels.closure(s7)),
        ("multiplication table B_4", lambda: kernels.multiplication_table(b4_elems)),
        ("orbit labels, classes of D_5", lambda: kernels.orbit_labels(conj)),
        ("string operators n = 16", lambda: kernels.bitstring_operators(16)),
    ]


def _same(a, b):
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    return np.array_equal(a, b)


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def run(repeat=5):
    if not _jit.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    old = _jit.backend()
    rows = []
    try:
        for name, fn in _cases():
            res = {}
            for backend in ("numba", "numpy"):
                _jit.set_backend(backend)
                fn()  # warm-up / compile
                res[backend] = _best(fn, repeat)
            rows.append(
                {
                    "kernel": name,
                    "numba_s": res["numba"][0],
                    "numpy_s": res["numpy"][0],
                    "speedup": res["numpy"][0] / max(res["numba"][0], 1e-9),
                    "equal": bool(_same(res["numba"][1], res["numpy"][1])),
                }
            )
    finally:
        _jit.set_backend(old)
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rows = run(args.repeat)
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print("%-32s %12s %12s %9s  %s" % ("kernel", "numba [ms]", "numpy [ms]", "speedup", "equal"))
    for r in rows:
        print("%-32s %12.3f %12.3f %8.1fx  %s" % (r["kernel"], 1e3 * r["numba_s"], 1e3 * r["numpy_s"], r["speedup"], r["equal"]))


if __name__ == "__main__":
    main()
