import random
from dataclasses import replace
from fractions import Fraction

import pytest

from geohom.config import DEFAULT
from geohom.fat import _FatSolver, is_rc_instance, reduce_to_rc, solve_fat, solve_rc
from geohom.geometry import Disk, Point, Scene, cell_cliques, intersection_graph
from geohom.graph import Graph
from geohom.scaling import ribbon_instance
from geohom.solver import ListInstance, Stats, solve_bruteforce
from geohom.target import TargetGraph, max_reflexive_clique
from helpers import corpus, is_hom, oracle, random_target

IR = TargetGraph.from_edges("ir", [("i", "r"), ("r", "r")])
REFL3 = TargetGraph.from_edges("abc", [("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("b", "c"), ("a", "c")])
REFL_P3 = TargetGraph.from_edges("abc", [("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("b", "c")])


def unit_disk(x, y):
    c = Point(Fraction(x), Fraction(y))
    return Disk(c, Fraction(1), anchor=c)


def test_is_rc_examples():
    assert is_rc_instance(ListInstance.from_labels(IR, Graph.empty(2), ["r", "r"]))
    assert not is_rc_instance(ListInstance.from_labels(IR, Graph.empty(1), ["ir"]))
    assert not is_rc_instance(ListInstance.from_labels(REFL_P3, Graph.empty(1), ["ac"]))
    assert is_rc_instance(ListInstance.from_labels(REFL_P3, Graph.empty(1), ["ab"]))


def test_reduce_to_rc_single_vertex():
    inst = ListInstance.full(IR, Graph.empty(1))
    got = {(tuple(b.forced.items()), b.kept, b.instance.lists) for b in reduce_to_rc(inst, [[0]])}
    assert got == {(((0, IR.index("i")),), (), ()), ((), (0,), (IR.mask_of("r"),))}


def test_reduce_to_rc_fully_reflexive_has_no_removals():
    H = REFL_P3
    inst = ListInstance.full(H, Graph.from_edges(3, [(0, 1)]))
    branches = list(reduce_to_rc(inst, [[0, 1], [2]]))
    # two maximal reflexive cliques {a,b}, {b,c} per cell
    assert len(branches) == 4
    assert all(not b.forced and b.kept == (0, 1, 2) for b in branches)


def test_reduce_to_rc_requires_partition():
    inst = ListInstance.full(IR, Graph.empty(2))
    with pytest.raises(ValueError):
        list(reduce_to_rc(inst, [[0]]))


def test_reduce_to_rc_stream_equivalence():
    for case in corpus()[:400]:
        inst, scene = case.inst, case.scene
        cells = cell_cliques(scene)
        any_yes = False
        for b in reduce_to_rc(inst, cells):
            assert is_rc_instance(b.instance)
            if oracle(b.instance):
                any_yes = True
                w = solve_rc(b.instance).witness
                lifted = b.lift(w)
                assert is_hom(inst, [lifted[v] for v in range(inst.n)])
        assert any_yes == oracle(inst)


def test_solve_rc_dispatch():
    rng = random.Random(89)
    single = ListInstance.from_labels(REFL3, Graph.from_edges(2, [(0, 1)]), ["a", "b"])
    assert solve_rc(single).answer
    for _ in range(200):
        H = random_target(rng, rng.randint(2, 5))
        n = rng.randint(1, 8)
        g = Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
        inst = ListInstance.full(H, g)
        for b in reduce_to_rc(inst, [[v] for v in range(n)]):
            res = solve_rc(b.instance)
            assert res.answer == oracle(b.instance)
            if max_reflexive_clique(H)[0] <= 2:
                assert res.method == "rc-twosat"
            break
    big = ListInstance.full(REFL3, Graph.from_edges(3, [(0, 1), (1, 2)]))
    assert solve_rc(big).method == "rc-brute" and solve_rc(big).answer
    with pytest.raises(ValueError):
        solve_rc(ListInstance.full(IR, Graph.empty(1)))


def test_solve_fat_matches_oracle_on_corpus():
    tight = replace(DEFAULT, c_area=Fraction(1, 4))
    for case in corpus()[:400]:
        want = oracle(case.inst)
        for cfg in (DEFAULT, tight):
            res = solve_fat(case.inst, case.scene, cfg)
            assert res.answer == want
            if want:
                assert is_hom(case.inst, res.witness)


def test_single_cell_scene_uses_reduction_only():
    s = Scene((unit_disk(Fraction(1, 4), Fraction(1, 4)), unit_disk(Fraction(3, 4), Fraction(1, 2))))
    inst = ListInstance.full(IR, intersection_graph(s))
    res = solve_fat(inst, s)
    assert res.answer and res.stats.separators == 0


def test_long_chain_uses_line_separators():
    for n in (40, 80):
        scene, inst = ribbon_instance(n)
        res = solve_fat(inst, scene)
        assert res.stats.separators >= 2
        assert res.answer == solve_bruteforce(inst).answer
        scene, inst = ribbon_instance(n, stride=4)
        # without the unsatisfiable tail the ribbon is a YES instance
        yes = inst.with_lists(inst.lists[:-3] + (inst.target.mask_of("12"),) * 3)
        res = solve_fat(yes, scene)
        assert res.answer and is_hom(yes, res.witness)


def test_line_cuts_shrink_area():
    scene, inst = ribbon_instance(160)
    solver = _FatSolver(inst, scene, DEFAULT, Stats())
    assert solver.solve(set(range(inst.n)), list(inst.lists), 0) is None
    assert len(solver.levels) >= 2
    stack = []
    for depth, a in solver.levels:
        while stack and stack[-1][0] >= depth:
            stack.pop()
        if stack:
            assert 4 * a <= 3 * stack[-1][1]
        stack.append((depth, a))


def test_solve_fat_rejects_mismatched_scene():
    s = Scene((unit_disk(0, 0), unit_disk(5, 0)))
    with pytest.raises(ValueError):
        solve_fat(ListInstance.full(IR, Graph.from_edges(2, [(0, 1)])), s)
    with pytest.raises(ValueError):
        solve_fat(ListInstance.full(IR, Graph.empty(3)), s)
    thin = Scene((Disk(Point(0, 0), Fraction(1, 2), anchor=Point(0, 0)),))
    with pytest.raises(ValueError):
        solve_fat(ListInstance.full(IR, Graph.empty(1)), thin)
