"""Scaling family for the fat solver and a growth-rate fit against brute force.

The family is a two-row ribbon of unit-radius disks over a six-vertex target
with two adjacent looped vertices.  Every ``stride``-th disk may choose
between the looped colors, the last three disks form a triangle that cannot
be colored from {3, 4}, and every other disk is fixed to color 1.  Arc
consistency sees nothing wrong, so backtracking in index order retries every
earlier choice, while the fat solver cuts the ribbon by grid lines and
reuses the answer of each side.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .config import DEFAULT, RunConfig
from .fat import solve_fat
from .geometry import Disk, Point, Scene, intersection_graph
from .run import BenchRecord, record_for, records_csv
from .solver import ListInstance, Stats, solve_bruteforce
from .target import TargetGraph

SIZES = (40, 80, 160, 320)
STRIDE = 16
BRUTE_NODE_LIMIT = 20_000_000


def scaling_target() -> TargetGraph:
    labels = ["1", "2", "3", "4", "5", "6"]
    edges = [
        ("1", "1"), ("2", "2"), ("1", "2"),
        ("1", "3"), ("1", "4"), ("2", "3"), ("2", "4"), ("3", "4"),
        ("1", "5"), ("2", "6"),
    ]
    return TargetGraph.from_edges(labels, edges)


def ribbon_scene(n: int) -> Scene:
    """Disks 2k and 2k+1 form column k; each disk meets the next two."""
    objs = []
    for i in range(n):
        row, col = i % 2, i // 2
        c = Point(Fraction(3, 2) * col + Fraction(3, 4) * row, Fraction(6, 5) * row)
        objs.append(Disk(c, Fraction(1), anchor=c))
    return Scene(tuple(objs))


def ribbon_instance(n: int, stride: int = STRIDE) -> tuple[Scene, ListInstance]:
    if n < 4:
        raise ValueError("ribbon needs at least four disks")
    scene = ribbon_scene(n)
    lists = []
    for v in range(n):
        if v >= n - 3:
            lists.append("34")
        elif v % stride == 0:
            lists.append("12")
        else:
            lists.append("1")
    inst = ListInstance.from_labels(scaling_target(), intersection_graph(scene), lists)
    return scene, inst


def growth_rate(ns: Sequence[int], nodes: Sequence[int]) -> float:
    """Least-squares slope of log2(nodes) against n."""
    xs = [float(n) for n in ns]
    ys = [math.log2(max(1, k)) for k in nodes]
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    sxx = sum((x - mx) ** 2 for x in xs)
    if sxx == 0:
        return 0.0
    return sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sxx


@dataclass(frozen=True)
class ScalingReport:
    records: tuple[BenchRecord, ...]
    brute_rate: float
    fat_rate: float
    brute_complete: bool

    @property
    def ok(self) -> bool:
        """Fat grows slower than 2^(n/2) and slower than the brute baseline."""
        return self.brute_complete and self.fat_rate < min(0.5, self.brute_rate)

    def csv(self) -> str:
        return records_csv(self.records)

    def summary(self) -> str:
        return (
            f"brute growth {self.brute_rate:.6f} bits/vertex, "
            f"fat growth {self.fat_rate:.6f} bits/vertex, "
            f"{'OK' if self.ok else 'NOT OK'}"
        )


def scaling_report(
    sizes: Sequence[int] = SIZES,
    cfg: RunConfig = DEFAULT,
    timed: bool = True,
    stride: int = STRIDE,
) -> ScalingReport:
    records = []
    brute_nodes, fat_nodes = [], []
    complete = True
    for n in sizes:
        scene, inst = ribbon_instance(n, stride)
        name = f"ribbon-{n}"
        for method in ("brute", "fat"):
            limit = cfg.node_limit or (BRUTE_NODE_LIMIT if method == "brute" else 0)
            stats = Stats.with_limits(limit, cfg.time_limit)
            t0 = time.perf_counter()
            if method == "brute":
                res = solve_bruteforce(inst, stats)
            else:
                res = solve_fat(inst, scene, cfg, stats)
            seconds = time.perf_counter() - t0 if timed else None
            if res.answer is None:
                complete = False
            (brute_nodes if method == "brute" else fat_nodes).append(res.stats.nodes)
            records.append(record_for(name, inst, scene, method, seconds, res.stats.nodes, res.verdict))
    return ScalingReport(
        tuple(records), growth_rate(sizes, brute_nodes), growth_rate(sizes, fat_nodes), complete
    )
