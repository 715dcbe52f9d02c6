import math

import pytest

from geohom.fat import solve_fat
from geohom.geometry import validate_fat_similarly_sized
from geohom.scaling import growth_rate, ribbon_instance, scaling_report, scaling_target
from geohom.target import max_reflexive_clique
from helpers import is_hom


def test_growth_rate_fits_log2_slope():
    ns = [10, 20, 30, 40]
    assert math.isclose(growth_rate(ns, [2 ** (n // 2) for n in ns]), 0.5)
    assert growth_rate(ns, [7, 7, 7, 7]) == 0.0
    assert growth_rate([5, 5], [1, 100]) == 0.0


def test_ribbon_family_shape():
    assert max_reflexive_clique(scaling_target())[0] == 2
    for n in (12, 40):
        scene, inst = ribbon_instance(n)
        assert len(scene) == inst.n == n
        assert validate_fat_similarly_sized(scene, 2)
        assert solve_fat(inst, scene).answer is False
    with pytest.raises(ValueError):
        ribbon_instance(3)


def test_ribbon_yes_variant_has_witness():
    scene, inst = ribbon_instance(40, stride=4)
    yes = inst.with_lists(inst.lists[:-3] + (inst.target.mask_of("12"),) * 3)
    res = solve_fat(yes, scene)
    assert res.answer and is_hom(yes, res.witness)


def test_small_report_is_stable_and_ok():
    a = scaling_report((40, 60, 80), timed=False, stride=8)
    b = scaling_report((40, 60, 80), timed=False, stride=8)
    assert a.csv() == b.csv()
    assert a.ok and a.fat_rate < a.brute_rate
    rows = a.csv().splitlines()
    assert rows[0] == "instance,n,m,area,method,wall_time,nodes,answer" and len(rows) == 7
    assert "OK" in a.summary()
