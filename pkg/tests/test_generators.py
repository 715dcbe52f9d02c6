import itertools
import random
from dataclasses import replace

import pytest

from geohom.geometry import Point, Scene, Triangle
from geohom.generators import (
    CLAUSE_TEMPLATE,
    CONNECTOR_TEMPLATE,
    TEMPLATES,
    VARIABLE_TEMPLATE,
    CnfFormatError,
    CnfFormula,
    ConvexFatLayout,
    gen_convexfat_3sat,
    geometry_audit,
    h5_target,
    is_equilateral,
    pad_clause,
    parse_dimacs,
    verify_gadget_contract,
)
from geohom.graph import Graph
from geohom.solver import ListInstance, enumerate_homomorphisms, solve_bruteforce
from geohom.target import reflexive_partition

H5 = h5_target()


def formula(n, *clauses):
    return CnfFormula(n, tuple(pad_clause(c) for c in clauses))


def test_parse_dimacs_examples():
    assert parse_dimacs("p cnf 1 1\n1 0\n") == CnfFormula(1, ((1, 1, 1),))
    assert parse_dimacs("p cnf 1 1\n1 -1 0\n").clauses == ((1, -1, -1),)
    with pytest.raises(CnfFormatError):
        parse_dimacs("p cnf 1 1\n0\n")


def test_parse_dimacs_details():
    text = "c comment\np cnf 3 2\n1 -2\n 3 0 -1 2 3 0\n"
    f = parse_dimacs(text)
    assert f.clauses == ((1, -2, 3), (-1, 2, 3))
    assert parse_dimacs(f.dumps()) == f
    for bad in ("1 0\n", "p cnf 1 1\n2 0\n", "p cnf 1 2\n1 0\n", "p cnf 1 1\n1\n",
                "p cnf 2 1\n1 2 -1 2 0\n", "p cnf x 1\n", "p cnf 1 1\n1 a 0\n"):
        with pytest.raises(CnfFormatError):
            parse_dimacs(bad)


def test_h5_loops_and_connector_argument():
    assert reflexive_partition(H5)[0] == {"1", "2"}
    # p - q - r with q in {1, 2} copies the color of p to r inside {3, 5}
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    inst = ListInstance.from_labels(H5, g, ["35", "12", "35"])
    proj = {(H5.labels[f[0]], H5.labels[f[2]]) for f in enumerate_homomorphisms(inst)}
    assert proj == {("3", "3"), ("5", "5")}


def test_templates_pass_contracts():
    for t in TEMPLATES:
        assert verify_gadget_contract(t, H5), t.name
    assert (VARIABLE_TEMPLATE.n, CLAUSE_TEMPLATE.n, CONNECTOR_TEMPLATE.n) == (7, 13, 3)


def test_widened_lists_break_contracts():
    full = frozenset("12345")
    for t in TEMPLATES:
        broken = 0
        for i in range(t.n):
            lists = t.lists[:i] + (full,) + t.lists[i + 1:]
            if not verify_gadget_contract(replace(t, lists=lists), H5):
                broken += 1
        assert broken > 0, t.name


def test_template_size_cap():
    big = replace(CLAUSE_TEMPLATE, cells=CLAUSE_TEMPLATE.cells * 2, lists=CLAUSE_TEMPLATE.lists * 2)
    with pytest.raises(ValueError):
        verify_gadget_contract(big, H5)


def test_template_triangles_are_equilateral_and_fat():
    for t in TEMPLATES:
        for o in t.scene().objects:
            assert is_equilateral(o) and o.contains_anchor_disk()


def test_generator_examples():
    unsat = formula(1, [1], [-1])
    scene, inst = gen_convexfat_3sat(unsat)
    assert solve_bruteforce(inst).answer is False
    sat = formula(3, [1, 2, 3])
    scene, inst = gen_convexfat_3sat(sat)
    assert solve_bruteforce(inst).answer is True
    scene, inst = gen_convexfat_3sat(formula(2, [1, -2, 2]))
    assert len(scene) == inst.n == 30


def test_empty_formula():
    scene, inst = gen_convexfat_3sat(CnfFormula(0, ()))
    assert len(scene) == 0 and inst.n == 0
    assert geometry_audit(scene, inst)


def test_equisatisfiable_on_random_formulas():
    rng = random.Random(137)
    for _ in range(40):
        N, M = rng.randint(1, 4), rng.randint(1, 4)
        clauses = [[rng.choice((1, -1)) * rng.randint(1, N) for _ in range(3)] for _ in range(M)]
        f = formula(N, *clauses)
        scene, inst = gen_convexfat_3sat(f)
        assert len(scene) == 7 * N + 16 * M
        res = solve_bruteforce(inst)
        assert res.answer == f.brute_force_sat()
        if res.answer:
            # reading variables off x: color 5 means true
            lay = ConvexFatLayout(N, M)
            value = [H5.labels[res.witness[lay.var_vertex(v, 0)]] == "5" for v in range(N)]
            assert f.satisfied_by(value)


def test_connector_neighbours_share_colors():
    f = formula(2, [1, -2, 2])
    scene, inst = gen_convexfat_3sat(f)
    lay = ConvexFatLayout(2, 1)
    qs = [lay.connector_vertex(0, i) for i in range(3)]
    pairs = []
    for q in qs:
        gadget_nbrs = sorted(w for w in inst.graph.adj[q] if w not in qs)
        assert len(gadget_nbrs) == 2
        pairs.append(gadget_nbrs)
    count = 0
    for h in enumerate_homomorphisms(inst):
        count += 1
        for a, b in pairs:
            assert h[a] == h[b]
        if count > 2000:
            break
    assert count > 0


def test_audit_is_clean_and_catches_corruption():
    f = formula(2, [1, 2, -1], [-2, -1, 1])
    scene, inst = gen_convexfat_3sat(f)
    assert geometry_audit(scene, inst)
    objs = list(scene.objects)
    # move the second variable gadget onto the first
    lay = ConvexFatLayout(2, 2)
    shift = objs[lay.var_vertex(1, 0)].a - objs[lay.var_vertex(0, 0)].a
    for r in range(7):
        t = objs[lay.var_vertex(1, r)]
        objs[lay.var_vertex(1, r)] = Triangle(
            t.a - shift + Point(1, 0), t.b - shift + Point(1, 0), t.c - shift + Point(1, 0), anchor=t.anchor
        )
    report = geometry_audit(Scene(tuple(objs)), inst)
    assert not report and report.extra
    short = geometry_audit(Scene(tuple(objs[:-1])), inst)
    assert not short and short.count_mismatch


def test_generator_is_deterministic():
    f = formula(3, [1, -2, 3], [-1, 2, -3])
    a = gen_convexfat_3sat(f)
    b = gen_convexfat_3sat(f)
    assert a[0].dumps() == b[0].dumps() and a[1] == b[1]


def test_formula_validation():
    with pytest.raises(ValueError):
        CnfFormula(1, ((1, 2, 1),))
    with pytest.raises(ValueError):
        CnfFormula(1, ((1, 1),))
    with pytest.raises(CnfFormatError):
        pad_clause([1, 2, 3, 4])
    f = formula(2, [1, 2])
    assert f.satisfied_by([True, False]) and not f.satisfied_by([False, False])
    assert all(
        f.satisfied_by(a) == any(a) for a in itertools.product((False, True), repeat=2)
    )
