"""Method selection, verified solving, bench records and corpus benchmarks."""
from __future__ import annotations

import csv
import io
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields, replace
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .config import DEFAULT, RunConfig
from .fat import solve_fat
from .geometry import Scene, area, intersection_graph, validate_fat_similarly_sized
from .graph import Graph
from .separators import clique_based_separator
from .solver import (
    InstanceFile,
    ListInstance,
    PredatorPresent,
    SolveResult,
    Stats,
    solve_2sat,
    solve_bruteforce,
    solve_cliquebased,
    solve_string,
    verify_homomorphism,
)
from .target import TargetGraph, find_predator, max_reflexive_clique
from .weighted import CostTables, MinCostResult, solve_mincost, solve_whom

LHOM_METHODS = ("brute", "string", "cliquebased", "fat", "twosat")
COST_METHODS = ("mincost", "whom")
ANSWERS = ("YES", "NO", "TIMEOUT", "ERROR")


class WitnessError(RuntimeError):
    """A solver returned an assignment that is not a list homomorphism."""


def mrc(H: TargetGraph) -> int:
    return max_reflexive_clique(H)[0]


def scene_is_valid(inst: ListInstance, scene: Scene | None, cfg: RunConfig) -> bool:
    if scene is None or len(scene) != inst.n:
        return False
    if not validate_fat_similarly_sized(scene, cfg.r_max):
        return False
    return intersection_graph(scene) == inst.graph


def auto_select(
    H: TargetGraph, inst: ListInstance, scene: Scene | None = None, cfg: RunConfig = DEFAULT
) -> str:
    """Cheapest method whose preconditions hold, falling back to brute force."""
    if inst.max_list_size() <= 2:
        return "twosat"
    r = mrc(H)
    if r <= 2 and scene_is_valid(inst, scene, cfg):
        return "fat"
    if scene is not None and r <= 1 and len(scene) == inst.n:
        if intersection_graph(scene) == inst.graph:
            return "cliquebased"
    if find_predator(H) is None:
        return "string"
    return "brute"


def _scene_provider(scene: Scene | None, cfg: RunConfig):
    """Clique-based separators read off the scene; None uses the graph fallback."""
    if scene is None:
        return None

    def provider(g: Graph, verts: Sequence[int]):
        return clique_based_separator(scene, g, cfg.delta, verts)

    return provider


def solve(
    inst: ListInstance,
    scene: Scene | None = None,
    cfg: RunConfig = DEFAULT,
    method: str | None = None,
) -> SolveResult:
    """Run one list-homomorphism method; a YES witness is always verified."""
    H = inst.target
    method = method or cfg.method
    if method == "auto":
        method = auto_select(H, inst, scene, cfg)
    stats = Stats.with_limits(cfg.node_limit, cfg.time_limit)
    if method == "brute":
        res = solve_bruteforce(inst, stats)
    elif method == "twosat":
        res = solve_2sat(inst, stats)
    elif method == "string":
        res = solve_string(inst, cfg, stats)
    elif method == "cliquebased":
        res = solve_cliquebased(inst, _scene_provider(scene, cfg), cfg, stats)
    elif method == "fat":
        if scene is None:
            raise ValueError("method fat needs a scene")
        res = solve_fat(inst, scene, cfg, stats)
    else:
        raise ValueError(f"{method!r} is not a list-homomorphism method")
    if res.answer and not verify_homomorphism(inst, res.witness):
        raise WitnessError(f"{method} returned an invalid witness")
    return res


def cost_tables(H: TargetGraph, f: InstanceFile) -> CostTables:
    """Cost tables of a weighted instance file; missing entries cost 0."""
    vcost = [[Fraction(0)] * H.size for _ in range(f.n)]
    for (v, a), q in f.vcost.items():
        vcost[v][H.index(a)] = q
    ecost: dict = {}
    for (u, v, a, b), q in f.ecost.items():
        i, j = H.index(a), H.index(b)
        if u > v:
            u, v, i, j = v, u, j, i
        ecost.setdefault((u, v), {})[(i, j)] = q
    return CostTables(vcost, ecost or None, f.budget)


def solve_weighted(
    H: TargetGraph, f: InstanceFile, cfg: RunConfig = DEFAULT, method: str | None = None
) -> MinCostResult:
    """Minimum cost under the file's lists; ``whom`` whenever edge costs exist."""
    method = method or cfg.method
    costs = cost_tables(H, f)
    if method not in COST_METHODS:
        method = "whom" if costs.ecost else "mincost"
    inst = f.bind(H)
    stats = Stats.with_limits(cfg.node_limit, cfg.time_limit)
    fn = solve_whom if method == "whom" else solve_mincost
    res = fn(inst.graph, H, costs, None, cfg, stats, inst.lists)
    if res.witness is not None and not verify_homomorphism(inst, res.witness):
        raise WitnessError(f"{method} returned an invalid witness")
    if res.witness is not None and costs.cost(inst.graph, res.witness) != res.value:
        raise WitnessError(f"{method} reported a cost its witness does not have")
    return res


# ------------------------------------------------------------------ records


@dataclass(frozen=True)
class BenchRecord:
    instance: str
    n: int
    m: int
    area: str
    method: str
    wall_time: str
    nodes: int
    answer: str

    def __post_init__(self):
        if self.answer not in ANSWERS:
            raise ValueError(f"answer must be one of {ANSWERS}")


CSV_HEADER = tuple(f.name for f in fields(BenchRecord))


def records_csv(records: Sequence[BenchRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(astuple(r))
    return buf.getvalue()


def _area_of(scene: Scene | None) -> str:
    return str(area(scene.objects)) if scene is not None and len(scene) else ""


def record_for(
    name: str,
    inst: ListInstance,
    scene: Scene | None,
    method: str,
    seconds: float | None,
    nodes: int,
    answer: str,
) -> BenchRecord:
    wall = "" if seconds is None else f"{seconds:.6f}"
    return BenchRecord(name, inst.n, inst.graph.m, _area_of(scene), method, wall, nodes, answer)


# -------------------------------------------------------------- corpus bench


def target_for(path: Path) -> Path:
    """``<name>.h`` next to the instance, else ``target.h`` in its directory."""
    own = path.with_suffix(".h")
    if own.exists():
        return own
    shared = path.parent / "target.h"
    if shared.exists():
        return shared
    raise FileNotFoundError(f"no target graph for {path.name}")


def load_case(path: Path) -> tuple[TargetGraph, InstanceFile, Scene | None]:
    H = TargetGraph.loads(target_for(path).read_text())
    f = InstanceFile.loads(path.read_text())
    scene = None
    if f.scene is not None:
        scene = Scene.loads((path.parent / f.scene).read_text())
    return H, f, scene


def _bench_one(args) -> BenchRecord:
    path, method, cfg, timed = args
    path = Path(path)
    name = path.name
    try:
        H, f, scene = load_case(path)
        inst = f.bind(H)
    except Exception:  # noqa: BLE001 - a broken file is a row, not a crash
        return BenchRecord(name, 0, 0, "", method, "", 0, "ERROR")
    t0 = time.perf_counter()
    try:
        if method in COST_METHODS or f.weighted:
            res = solve_weighted(H, f, cfg, method)
            if res.timed_out:
                answer = "TIMEOUT"
            elif f.budget is not None:
                answer = "YES" if res.decide(f.budget) else "NO"
            else:
                answer = "YES" if res.value is not None else "NO"
            nodes = res.stats.nodes
        else:
            res = solve(inst, scene, cfg, method)
            answer, nodes = res.verdict, res.stats.nodes
    except (PredatorPresent, ValueError, WitnessError):
        answer, nodes = "ERROR", 0
    seconds = time.perf_counter() - t0 if timed else None
    return record_for(name, inst, scene, method, seconds, nodes, answer)


def bench(
    corpus: str | os.PathLike,
    methods: Sequence[str] = ("auto",),
    cfg: RunConfig = DEFAULT,
    timed: bool = True,
) -> str:
    """One CSV row per (instance, method), instances in name order.

    With ``cfg.parallelism > 1`` rows are computed in worker processes; the
    output order does not depend on scheduling.
    """
    paths = sorted(Path(corpus).glob("*.inst"))
    jobs = [(str(p), m, replace(cfg, method=m), timed) for p in paths for m in methods]
    if cfg.parallelism > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.parallelism) as pool:
            rows = list(pool.map(_bench_one, jobs))
    else:
        rows = [_bench_one(j) for j in jobs]
    return records_csv(rows)
