"""Compare the compiled and the pure-Python search kernels.

Runs the same searches on both backends, checks that status, witness and
node count agree, and prints the time of each.  Usage:

    python benchmarks/bench_kernels.py [--repeat 3] [--random 200]
"""
from __future__ import annotations

import argparse
import random
import sys
import time

from geohom import kernels
from geohom.graph import Graph
from geohom.scaling import ribbon_instance
from geohom.solver import ListInstance
from geohom.target import TargetGraph


def random_case(rng: random.Random, n: int, k: int) -> ListInstance:
    labels = [str(i) for i in range(k)]
    hedges = [(a, b) for i, a in enumerate(labels) for b in labels[i:] if rng.random() < 0.45]
    H = TargetGraph.from_edges(labels, hedges)
    g = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.15])
    lists = [rng.sample(labels, rng.randint(1, k)) for _ in range(n)]
    return ListInstance.from_labels(H, g, lists)


def workload(count: int, seed: int) -> list[tuple[str, ListInstance]]:
    out = []
    for n in (160, 200, 240):
        out.append((f"ribbon-{n}", ribbon_instance(n)[1]))
    rng = random.Random(seed)
    for i in range(count):
        out.append((f"random-{i}", random_case(rng, rng.randint(20, 30), rng.randint(4, 6))))
    return out


def run(inst: ListInstance, backend: str):
    indptr, indices, _ = inst.graph.csr()
    return kernels.search(indptr, indices, list(inst.target.adj), list(inst.lists), 0, backend)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--random", type=int, default=200, help="number of random instances")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if kernels.BACKEND != "cython":
        print("compiled kernel not built; run: python setup.py build_ext --inplace", file=sys.stderr)
        return 2
    cases = workload(args.random, args.seed)
    groups = {"ribbon": [c for c in cases if c[0].startswith("ribbon")],
              "random": [c for c in cases if c[0].startswith("random")]}
    print(f"{'workload':<10}{'cases':>7}{'nodes':>12}{'python s':>11}{'cython s':>11}{'speedup':>9}")
    for name, group in groups.items():
        times = {}
        nodes = 0
        for backend in ("python", "cython"):
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                results = [run(inst, backend) for _, inst in group]
                best = min(best, time.perf_counter() - t0)
            times[backend] = (best, results)
        py, cy = times["python"][1], times["cython"][1]
        if py != cy:
            bad = next(label for (label, _), a, b in zip(group, py, cy) if a != b)
            print(f"backends disagree on {bad}", file=sys.stderr)
            return 1
        nodes = sum(r[2] for r in py)
        tp, tc = times["python"][0], times["cython"][0]
        print(f"{name:<10}{len(group):>7}{nodes:>12}{tp:>11.3f}{tc:>11.3f}{tp / tc:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
