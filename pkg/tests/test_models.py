import random
from decimal import Decimal

import pytest
from hypothesis import given, settings

from complog.errors import AugmentError
from complog.models import (
    CATALYST,
    RACE,
    START,
    WorldState,
    augment,
    build_mental_graph,
    build_world_base,
    initial_state,
    merge,
    split,
)
from complog.syntax import EventRef, Program, parse_program, render_program

from strategies import load, programs, random_declarative

D = Decimal


def test_split_colouring():
    decl, act = split(load("colouring.complog"))
    assert len(decl) == 7 and len(act) == 0


def test_split_die():
    decl, act = split(load("die.complog"))
    assert len(decl) == 4 and len(act) == 4


def test_split_empty():
    decl, act = split(Program())
    assert decl == Program() and act == Program()


@settings(max_examples=200, deadline=None)
@given(programs())
def test_split_merge_identity(prog):
    decl, act = split(prog)
    for merged in (merge(decl, act), merge(act, decl)):
        assert split(merged) == (decl, act)
    assert sorted(map(repr, merged.statements)) == sorted(map(repr, prog.statements))


def test_augment_race():
    out = augment(parse_program("x. x -> y."), RACE)
    assert render_program(out) == "+x.\n+x => +y."


def test_augment_catalyst():
    out = augment(parse_program("x. x -> y."), CATALYST)
    assert render_program(out) == "+x.\n: x => +y."


@pytest.mark.parametrize("mode", [RACE, CATALYST])
def test_augment_fact_only(mode):
    assert render_program(augment(parse_program("4 :: x."), mode)) == "4 :: +x."


def test_augment_rejects_active_input():
    with pytest.raises(AugmentError):
        augment(parse_program("+x."))


def test_augment_colouring_matches_listing():
    assert augment(load("colouring.complog")) == load("colouring_active.complog")


@pytest.mark.parametrize("mode", [RACE, CATALYST])
def test_augment_preserves_count_and_weight(mode):
    rng = random.Random(7)
    for _ in range(100):
        decl = random_declarative(rng)
        out = augment(decl, mode)
        assert len(out) == len(decl)
        assert sum(s.weight for s in out) == sum(s.weight for s in decl)


def test_mental_graph_colouring():
    g = build_mental_graph(load("colouring.complog"))
    assert g.nodes == ("x", "y", "z")
    assert len(g.edges) == 7
    assert g.edges[(START, "x")] == 4
    assert g.edges[("z", "x")] == 1
    # deterministic ordering: start edges first
    assert [e[:2] for e in g.edge_list()][:3] == [(START, "x"), (START, "y"), (START, "z")]


def test_mental_graph_parallel_edges_collapse():
    g = build_mental_graph(parse_program("2 :: x. 1 :: x."))
    assert dict(g.edges) == {(START, "x"): D(1)}


def test_mental_graph_ontology():
    g = build_mental_graph(load("fauna.complog"))
    assert g.edges[("pigeon", "bird")] == 0
    assert g.edges[(START, "bird")] == 3
    assert len(g.nodes) == 9


def test_mental_graph_given_is_free_fact():
    g = build_mental_graph(parse_program("5 :: x. given: x."))
    assert g.edges[(START, "x")] == 0


def test_mental_graph_monotone():
    rng = random.Random(11)
    for _ in range(100):
        prog = random_declarative(rng)
        extra = random_declarative(rng).statements[:1]
        before = build_mental_graph(prog)
        after = build_mental_graph(Program(prog.statements + extra))
        assert set(before.nodes) <= set(after.nodes)
        for key, c in before.edges.items():
            assert key in after.edges and after.edges[key] <= c


def test_world_base_colouring_race():
    base = build_world_base(augment(load("colouring.complog")))
    assert len(base.spontaneous) == 3
    assert len(base.rules) == 4
    assert all(r.trigger is not None for r in base.rules)
    assert [r.id for r in base.rules] == ["r0", "r1", "r2", "r3"]


def test_world_base_die():
    _, act = split(load("die.complog"))
    base = build_world_base(act)
    assert [str(s.event) for s in base.spontaneous] == ["+die1", "+die2", "+die3", "+die4"]
    assert base.rules == ()


def test_world_base_empty():
    base = build_world_base(Program())
    assert base.spontaneous == () and base.rules == () and base.depth_bound == 10


def test_event_fact_and_spontaneous_rule_normalize_alike():
    a = build_world_base(parse_program("4 :: +x."))
    b = build_world_base(parse_program("4 :: => +x."))
    assert a == b


def test_depth_bound_validated():
    with pytest.raises(ValueError):
        build_world_base(Program(), depth_bound=0)


def test_initial_state_from_given():
    state = initial_state(parse_program("given: x. given: +y. given: #e."))
    assert state.held == frozenset({"x", "y"})
    assert [str(t) for t in state.tokens] == ["#e", "+y"]
    assert state.occurred == state.tokens
    assert state.step == 0


def test_world_state_after_applies_effects_in_order():
    x = EventRef.parse
    s = WorldState().after([x("+a"), x("-a")])
    assert "a" not in s.held
    s = WorldState().after([x("-a"), x("+a")])
    assert "a" in s.held
    s2 = s.after([x("+b")], cost=D(2), consumed=x("+a"))
    assert sorted(str(t) for t in s2.tokens) == ["+b", "-a"]
    assert sorted(str(t) for t in s2.occurred) == ["+a", "+b", "-a"]
    assert s2.cost == 2 and s2.step == 2
