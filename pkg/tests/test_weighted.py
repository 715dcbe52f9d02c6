import itertools
import random
from dataclasses import replace
from fractions import Fraction

import pytest

from geohom.config import DEFAULT
from geohom.geometry import intersection_graph, validate_fat_similarly_sized
from geohom.graph import Graph
from geohom.solver import ListInstance
from geohom.target import TargetGraph
from geohom.weighted import (
    CostTables,
    encode_max_cut,
    encode_vertex_cover,
    gen_mchom_vc_triangles,
    lists_to_costs,
    solve_mincost,
    solve_whom,
    transfer_edge_costs,
)
from helpers import brute_max_cut, brute_vertex_cover, oracle, random_graph, random_lists, random_target

F = Fraction
SMALL_BASE = replace(DEFAULT, base_n=2)


def exhaustive_min(g, H, costs, lists=None):
    best = None
    lists = lists or [H.full_mask] * g.n
    for f in itertools.product(range(H.size), repeat=g.n):
        if any(not (lists[v] >> f[v]) & 1 for v in range(g.n)):
            continue
        if not all(H.adjacent(f[u], f[v]) for u, v in g.edges()):
            continue
        c = costs.cost(g, f)
        if best is None or c < best:
            best = c
    return best


def random_costs(rng, n, k, edges=None):
    vcost = [[F(rng.randint(0, 6), rng.choice((1, 2, 3))) for _ in range(k)] for _ in range(n)]
    ecost = None
    if edges is not None:
        ecost = {
            e: {(a, b): F(rng.randint(0, 4)) for a in range(k) for b in range(k) if rng.random() < 0.5}
            for e in edges
        }
    return CostTables(vcost, ecost or None)


def test_mincost_examples():
    H = TargetGraph.from_edges("a", [("a", "a")])
    res = solve_mincost(Graph.empty(1), H, CostTables([[F(5)]]))
    assert res.value == 5 and res.witness == (0,)
    k3 = Graph.from_edges(3, itertools.combinations(range(3), 2))
    g, H, costs = encode_vertex_cover(k3)
    assert solve_mincost(g, H, costs).value == 2


def test_lists_to_costs_examples():
    H = TargetGraph.from_edges("12", [("1", "2")])
    g, costs = lists_to_costs(ListInstance.full(H, Graph.empty(2)))
    assert all(q == 0 for row in costs.vcost for q in row) and costs.budget == 0
    g, costs = lists_to_costs(ListInstance(H, Graph.empty(1), (0,)))
    assert costs.vcost == [[1, 1]]
    assert not solve_mincost(g, H, costs).decide(costs.budget)


def test_lists_to_costs_matches_lhom():
    rng = random.Random(101)
    for _ in range(200):
        H = random_target(rng)
        n = rng.randint(1, 7)
        inst = ListInstance(H, random_graph(rng, n, 0.4), tuple(random_lists(rng, H, n)))
        g, costs = lists_to_costs(inst)
        assert solve_mincost(g, H, costs).decide(costs.budget) == oracle(inst)


def test_mincost_matches_exhaustive():
    rng = random.Random(103)
    for _ in range(150):
        H = random_target(rng, rng.randint(1, 3))
        n = rng.randint(1, 7)
        g = random_graph(rng, n, 0.4)
        costs = random_costs(rng, n, H.size)
        want = exhaustive_min(g, H, costs)
        for cfg in (DEFAULT, SMALL_BASE):
            res = solve_mincost(g, H, costs, cfg=cfg)
            assert res.value == want
            if want is not None:
                assert costs.cost(g, res.witness) == want


def test_mincost_respects_lists():
    rng = random.Random(107)
    for _ in range(100):
        H = random_target(rng, rng.randint(1, 3))
        n = rng.randint(1, 6)
        g = random_graph(rng, n, 0.4)
        lists = random_lists(rng, H, n)
        costs = random_costs(rng, n, H.size)
        assert solve_mincost(g, H, costs, lists=lists).value == exhaustive_min(g, H, costs, lists)


def test_whom_matches_exhaustive():
    rng = random.Random(109)
    for _ in range(150):
        H = random_target(rng, rng.randint(1, 3))
        n = rng.randint(1, 7)
        g = random_graph(rng, n, 0.4)
        costs = random_costs(rng, n, H.size, g.edges())
        want = exhaustive_min(g, H, costs)
        for cfg in (DEFAULT, SMALL_BASE):
            assert solve_whom(g, H, costs, cfg=cfg).value == want


def test_mincost_rejects_edge_costs_and_bad_tables():
    g, H, costs = encode_max_cut(Graph.from_edges(2, [(0, 1)]))
    with pytest.raises(ValueError):
        solve_mincost(g, H, costs)
    with pytest.raises(ValueError):
        solve_whom(g, H, CostTables([[F(0)]]))
    with pytest.raises(ValueError):
        CostTables([[F(-1)]])


def test_vertex_cover_and_max_cut_encodings():
    rng = random.Random(113)
    for _ in range(60):
        g = random_graph(rng, rng.randint(1, 8), 0.4)
        G, H, costs = encode_vertex_cover(g)
        assert solve_mincost(G, H, costs).value == brute_vertex_cover(g)
        G, H, costs = encode_max_cut(g)
        assert solve_whom(G, H, costs).value == g.m - brute_max_cut(g)


def test_weighted_max_cut():
    g = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    w = {(0, 1): F(3), (1, 2): F(1), (0, 2): F(1, 2)}
    G, H, costs = encode_max_cut(g, w)
    total = sum(w.values())
    assert solve_whom(G, H, costs).value == total - brute_max_cut(g, w)


def test_transfer_identity():
    rng = random.Random(127)
    for _ in range(100):
        n = rng.randint(1, 6)
        k = rng.randint(1, 3)
        g = random_graph(rng, n, 0.5)
        costs = random_costs(rng, n, k, g.edges())
        colored = {v: rng.randrange(k) for v in range(n) if rng.random() < 0.4}
        kept, sub, offset = transfer_edge_costs(g, costs, colored)
        gs, _ = g.induced(kept)
        for rest in itertools.product(range(k), repeat=len(kept)):
            f = [0] * n
            for v, c in colored.items():
                f[v] = c
            for v, c in zip(kept, rest):
                f[v] = c
            assert costs.cost(g, f) == offset + sub.cost(gs, rest)


def test_vc_triangle_generator():
    rng = random.Random(131)
    for _ in range(15):
        g = random_graph(rng, rng.randint(1, 6), 0.4)
        vc = brute_vertex_cover(g)
        for k in {max(vc - 1, 0), vc}:
            scene, inst, r_max = gen_mchom_vc_triangles(g, k)
            assert len(scene) == 4 * g.n + g.m
            assert intersection_graph(scene) == inst.graph
            assert validate_fat_similarly_sized(scene, r_max)
            res = solve_mincost(inst.graph, inst.target, inst.costs)
            assert res.decide(F(k)) == (vc <= k)
