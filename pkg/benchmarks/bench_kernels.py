"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--cones N] [--repeat R] [--end-to-end]

The kernel rows call both implementations on identical inputs.  The
end-to-end row runs open-orbit classes on seeded random cones in two
subprocesses, one with ``TORICGF_PURE_PYTHON=1``.
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import time

from toricgf import _kernels_py, kernels
from toricgf import lattice as lat
from toricgf.cone import semigroup_generators, triangulate
from toricgf.genfun import _suffix_tests
from toricgf.oracle import brute_force_facets, enumerate_points, random_cone

try:
    from toricgf import _kernels as compiled
except ImportError:
    compiled = None

END_TO_END = """
import random, time
from toricgf import BACKEND, oracle
from toricgf.hirzebruch import open_orbit_class
rng = random.Random({seed})
cones = [oracle.random_cone(rng, 2 + i % 4) for i in range({count})]
t0 = time.perf_counter()
for c in cones:
    open_orbit_class(c)
print(BACKEND, time.perf_counter() - t0)
"""


def workload(count: int, seed: int):
    rng = random.Random(seed)
    return [random_cone(rng, 2 + i % 4) for i in range(count)]


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def scan_inputs(cones):
    out = []
    for c in cones:
        eq, nm = brute_force_facets(c)
        n = c.rank
        out.append(([-5] * n, [5] * n, [list(f) for f in nm], [list(e) for e in eq], list(c.grading), 10))
    return out


def decomposer_inputs(cones):
    out = []
    for c in cones:
        gens = semigroup_generators(c)
        tests = _suffix_tests(gens)
        pts = enumerate_points(c, False, c.grading, 8)
        out.append(([list(g) for g in gens.generators],
                     [([list(e) for e in eq], [list(f) for f in nm]) for eq, nm in tests], c.rank, pts))
    return out


def box_inputs(cones):
    out = []
    for c in cones:
        for cell in triangulate(c).maximal_cells:
            rays = [list(c.rays[i]) for i in sorted(cell)]
            dm, u, _ = lat.smith_normal_form(rays)
            inv = [dm[i][i] for i in range(len(rays))]
            big = inv[-1]
            steps = [[(big // inv[i]) * u[i][j] % big for j in range(len(rays))] for i in range(len(rays))]
            out.append((inv, steps, rays, c.rank))
    return out


def run_kernels(cones, repeat: int):
    scans = scan_inputs(cones)
    decs = decomposer_inputs(cones)
    boxes = box_inputs(cones)

    def scan(mod):
        return lambda: [mod.scan_box(*args, False) for args in scans]

    def decompose(mod):
        def go():
            for gens, tests, n, pts in decs:
                d = mod.Decomposer(gens, tests, n)
                for v in pts:
                    d.decompose(list(v) if mod is compiled else v)
        return go

    def box(mod):
        return lambda: [mod.box_points(*args) for args in boxes]

    rows = []
    for name, make in (("scan_box", scan), ("Decomposer", decompose), ("box_points", box)):
        py = best_of(make(_kernels_py), repeat)
        cc = best_of(make(compiled), repeat) if compiled is not None else None
        rows.append((name, py, cc))
    return rows


def run_end_to_end(count: int, seed: int):
    code = END_TO_END.format(seed=seed, count=count)
    times = {}
    for pure in ("0", "1"):
        env = dict(os.environ, TORICGF_PURE_PYTHON=pure)
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        backend, seconds = out.stdout.split()
        times[backend] = float(seconds)
    return times.get("python"), times.get("compiled")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cones", type=int, default=40)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--end-to-end", action="store_true", help="also time open-orbit classes in subprocesses")
    args = ap.parse_args(argv)

    print(f"active backend: {kernels.BACKEND}")
    if compiled is None:
        print("compiled module not built; only the fallback is timed")
    cones = workload(args.cones, args.seed)
    rows = run_kernels(cones, args.repeat)
    if args.end_to_end:
        rows.append(("open_orbit_class",) + run_end_to_end(args.cones, args.seed))
    print(f"{'kernel':<18}{'python s':>12}{'compiled s':>12}{'speedup':>10}")
    for name, py, cc in rows:
        cc_text = f"{cc:12.4f}" if cc is not None else f"{'-':>12}"
        ratio = f"{py / cc:9.1f}x" if cc else f"{'-':>10}"
        print(f"{name:<18}{py:12.4f}{cc_text}{ratio}")


if __name__ == "__main__":
    main()
