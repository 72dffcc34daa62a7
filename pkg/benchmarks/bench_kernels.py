"""Time the GF(p) elimination kernels with and without numba.

    python benchmarks/bench_kernels.py            # both backends
    python benchmarks/bench_kernels.py --end2end  # also a full stability instance

Each backend runs in its own interpreter because the choice is made at import
time from ISTAB_NUMBA.
"""
import argparse
import json
import os
import subprocess
import sys
import time

WORKER = r"""
import json, sys, time
import numpy as np
from istab import _kernels
sizes = json.loads(sys.argv[1])
rng = np.random.default_rng(0)
out = {"backend": _kernels.BACKEND, "rref": {}, "det": {}}
for n in sizes:
    M = rng.integers(0, _kernels.PRIME, size=(n, n), dtype=np.int64)
    _kernels.rref_modp(M[:4, :4].copy())          # warm-up (jit compile or cache load)
    _kernels.det_modp(M[:4, :4].copy())
    reps = max(1, 200 // n)
    t = time.perf_counter()
    for _ in range(reps):
        _kernels.rref_modp(M.copy())
    out["rref"][n] = (time.perf_counter() - t) / reps
    t = time.perf_counter()
    for _ in range(reps):
        _kernels.det_modp(M.copy())
    out["det"][n] = (time.perf_counter() - t) / reps
if len(sys.argv) > 2:
    from istab.rootdata import admissible_pair
    from istab.stability import run_instance
    p = admissible_pair("CII", 4)
    w = p.datum.varpi(0)
    t = time.perf_counter()
    r = run_instance(p, p.datum.zero(), w, w)
    out["end2end"] = {"instance": r.key, "status": r.status, "seconds": time.perf_counter() - t}
print(json.dumps(out))
"""


def run(backend, sizes, end2end):
    env = dict(os.environ, ISTAB_NUMBA="1" if backend == "numba" else "0")
    args = [sys.executable, "-c", WORKER, json.dumps(sizes)] + (["e2e"] if end2end else [])
    res = subprocess.run(args, env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="25,50,100,200,400")
    ap.add_argument("--end2end", action="store_true")
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    nb = run("numba", sizes, args.end2end)
    npy = run("numpy", sizes, args.end2end)
    print("backends: %s vs %s" % (nb["backend"], npy["backend"]))
    print("%6s %12s %12s %8s   %12s %12s %8s" % ("n", "rref numba", "rref numpy", "speedup",
                                               "det numba", "det numpy", "speedup"))
    for n in sizes:
        k = str(n)
        a, b = nb["rref"][k], npy["rref"][k]
        c, d = nb["det"][k], npy["det"][k]
        print("%6d %11.2fms %11.2fms %7.1fx   %11.2fms %11.2fms %7.1fx" % (n, 1e3 * a, 1e3 * b, b / a,
                                                                        1e3 * c, 1e3 * d, d / c))
    if args.end2end:
        for r in (nb, npy):
            e = r["end2end"]
            print("%s: %s %s in %.2fs" % (r["backend"], e["instance"], e["status"], e["seconds"]))


if __name__ == "__main__":
    main()
