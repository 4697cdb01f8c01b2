import math
from decimal import Decimal

import pytest

from complog.costs import INF
from complog.errors import BudgetExceeded
from complog.models import START, MentalGraph, augment, build_mental_graph, build_world_base
from complog.oracle import OracleBudget, brute_cd, brute_cw, prob_complement, relaxation_distance
from complog.syntax import EventRef, GoalSet

from strategies import load

D = Decimal


def test_prob_complement_values():
    assert prob_complement([2, 2, 2]) == pytest.approx(0.41504, abs=1e-5)
    assert prob_complement([5]) == 5
    assert prob_complement([1, 1]) == 0
    assert prob_complement([]) == math.inf


def test_prob_complement_mass_check():
    assert prob_complement([2, 2, 2], target_cost=2) == pytest.approx(2 - math.log2(3))
    with pytest.raises(ValueError):
        prob_complement([1, 1], target_cost=1)
    with pytest.raises(ValueError):
        prob_complement([float("inf")])


def test_brute_cd_colouring():
    g = build_mental_graph(load("colouring.complog"))
    assert brute_cd(g, ["x", "y"]) == 6
    assert brute_cd(g, GoalSet(frozenset({"x"}))) == 4
    assert relaxation_distance(g, "y") == 4


def test_relaxation_unreachable():
    g = MentalGraph(("a", "b"), {(START, "a"): D(1)})
    assert relaxation_distance(g, "b") == INF
    assert brute_cd(g, ["b"]) == INF


def test_brute_cd_budget():
    g = MentalGraph(tuple(f"n{i}" for i in range(13)), {})
    with pytest.raises(BudgetExceeded):
        brute_cd(g, ["n0"])


def test_brute_cw_colouring():
    base = build_world_base(augment(load("colouring.complog")), depth_bound=5)
    goals = GoalSet(events=frozenset({EventRef.parse("+x"), EventRef.parse("+y")}))
    assert brute_cw(base, None, goals) == 7


def test_brute_cw_budget():
    base = build_world_base(augment(load("colouring.complog")), depth_bound=9)
    goals = GoalSet(events=frozenset({EventRef.parse("+x")}))
    with pytest.raises(BudgetExceeded):
        brute_cw(base, None, goals, OracleBudget(max_depth=6))
    with pytest.raises(BudgetExceeded):
        brute_cw(base.with_depth(5), None, goals, OracleBudget(max_sequences=3))
