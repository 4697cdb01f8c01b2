from decimal import Decimal

import pytest
from hypothesis import given, settings

from complog.errors import (
    ComplogSyntaxError,
    DuplicateStatementError,
    LexError,
    NegativeWeightError,
    ParseError,
)
from complog.syntax import (
    ActiveRule,
    ConditionFact,
    DeclRule,
    EventFact,
    EventRef,
    Given,
    GivenEvent,
    GoalSet,
    Program,
    parse_goal,
    parse_program,
    render_program,
    tokenize,
)

from strategies import FIXTURES, programs


def ev(text):
    return EventRef.parse(text)


def test_condition_fact():
    assert parse_program("4 :: eagle.").statements == (ConditionFact("eagle", Decimal(4)),)


def test_event_fact():
    assert parse_program("12 :: #eagle.").statements == (EventFact(ev("#eagle"), Decimal(12)),)


def test_default_weight_is_zero():
    assert parse_program("x -> y.").statements == (DeclRule("x", "y", Decimal(0)),)


def test_consuming_rule():
    (stmt,) = parse_program("3 :: +x => +y, -x.").statements
    assert stmt == ActiveRule(ev("+x"), frozenset(), (ev("+y"), ev("-x")), Decimal(3))


def test_eca_rule():
    (stmt,) = parse_program("#push : electricity => +light.").statements
    assert stmt == ActiveRule(ev("#push"), frozenset({"electricity"}), (ev("+light"),), Decimal(0))


def test_spontaneous_and_catalyst_rules():
    prog = parse_program("2 :: => +die1.  : x, w => +y.")
    assert prog.statements == (
        ActiveRule(None, frozenset(), (ev("+die1"),), Decimal(2)),
        ActiveRule(None, frozenset({"x", "w"}), (ev("+y"),), Decimal(0)),
    )


def test_given_statements():
    prog = parse_program("given: x. given: +y. given -> x.")
    assert prog.statements == (Given("x"), GivenEvent(ev("+y")), DeclRule("given", "x", Decimal(0)))


def test_condition_and_event_namesakes_coexist():
    prog = parse_program("4 :: eagle. 12 :: #eagle.")
    assert len(prog) == 2


def test_comments_and_whitespace():
    prog = parse_program("% header\n4::x.% trailing\n\n  x->y .")
    assert prog.statements == (ConditionFact("x", Decimal(4)), DeclRule("x", "y", Decimal(0)))


def test_decimal_weights_are_exact():
    (stmt,) = parse_program("0.123456 :: x.").statements
    assert stmt.weight == Decimal("0.123456")
    assert render_program(Program((stmt,))) == "0.123456 :: x."


def test_spans_recorded():
    prog = parse_program("x.\n  4 :: y.")
    assert prog.spans == ((1, 1), (2, 3))


def test_tokenize_positions():
    toks = tokenize("4 :: x ->\n y.")
    assert [(t.type, t.line, t.column) for t in toks][:4] == [
        ("NUMBER", 1, 1), ("::", 1, 3), ("IDENT", 1, 6), ("->", 1, 8)]


@pytest.mark.parametrize("text, err, pos", [
    ("4 :: x", ParseError, (1, 7)),
    ("x -> .", ParseError, (1, 6)),
    ("4 x.", ParseError, (1, 3)),
    ("x @ y.", LexError, (1, 3)),
    ("x.\n  y -> y.", ParseError, (2, 3)),
    ("-2 :: x.", NegativeWeightError, (1, 1)),
    ("x.\n4 :: y.\nx.", DuplicateStatementError, (3, 1)),
    ("+x => .", ParseError, (1, 7)),
    (": => +y.", ParseError, (1, 3)),
    ("3 :: given: x.", ParseError, (1, 1)),
    ("_x.", LexError, (1, 1)),
    ("4. x.", ParseError, (1, 2)),
])
def test_rejections_carry_positions(text, err, pos):
    with pytest.raises(err) as info:
        parse_program(text)
    assert (info.value.line, info.value.column) == pos
    assert isinstance(info.value, ComplogSyntaxError)


def test_duplicates_compare_weights_numerically():
    with pytest.raises(DuplicateStatementError):
        parse_program("4 :: x. 4.0 :: x.")
    assert len(parse_program("4 :: x. 5 :: x.")) == 2


def test_render_canonical():
    assert render_program(Program((ConditionFact("x", Decimal(4)),))) == "4 :: x."
    assert render_program(Program()) == ""


def test_render_active_forms():
    text = "+x.\n+x => +y.\n: x => +y.\n3 :: #push : a, b => +light, -a.\ngiven: +q."
    assert render_program(parse_program(text)) == text


@pytest.mark.parametrize("name", [
    "colouring.complog", "colouring_active.complog", "fauna.complog", "die.complog",
    "eagle.complog", "race.complog", "catalyst.complog", "augmentation.complog",
    "eca.complog", "empty.complog",
])
def test_fixture_round_trip(name):
    prog = parse_program((FIXTURES / name).read_text())
    assert parse_program(render_program(prog)) == prog


@settings(max_examples=300, deadline=None)
@given(programs())
def test_round_trip_generated(prog):
    assert parse_program(render_program(prog)) == prog


def test_goal_forms():
    assert parse_goal("<x, y>") == GoalSet(frozenset({"x", "y"}))
    assert parse_goal("⟨x, y⟩") == GoalSet(frozenset({"x", "y"}))
    assert parse_goal("") == GoalSet()
    assert parse_goal("<>") == GoalSet()
    assert parse_goal("+x, +y") == GoalSet(events=frozenset({ev("+x"), ev("+y")}))
    assert parse_goal("x, #y") == GoalSet(frozenset({"x"}), frozenset({ev("#y")}))


@pytest.mark.parametrize("text", ["<x, y", "x y", "x,", "<x> z", "⟨x>"])
def test_goal_errors(text):
    with pytest.raises(ParseError):
        parse_goal(text)


def test_event_ref_rendering():
    assert [str(ev(t)) for t in ("#a", "+a", "-a")] == ["#a", "+a", "-a"]
    with pytest.raises(ValueError):
        EventRef.parse("a")
