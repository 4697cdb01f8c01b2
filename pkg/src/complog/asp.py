"""Export a program and query as an ASP-Core-2 encoding (clingo-compatible).

The model part reifies graph edges as ``cost/3`` facts with ``start/1`` and
``goal/1``. The control part is a shared exploration core, the constraints
of the selected machine, and a ``#minimize`` directive. Nothing is solved
here.

Costs are scaled to integers (``#sum`` is integer-valued) by the least
common denominator of all exported weights; the factor is stated in the
header.

The productive encoding works on a plain graph: rules with several effects,
a trigger plus a context, several context conditions, or terminations have
no edge form and are listed as skipped in comments. Token multiplicities
are not tracked.
"""

from __future__ import annotations

import math
import re
from decimal import Decimal
from fractions import Fraction

from .models import (
    RACE,
    START,
    MentalGraph,
    WorldRuleBase,
    augment,
    build_mental_graph,
    build_world_base,
    split,
)
from .syntax import INITIATE, EventRef, GoalSet, Program

EPISTEMIC, PRODUCTIVE = "epistemic", "productive"
_BARE = re.compile(r"[a-z][A-Za-z0-9_]*\Z")

CORE = """\
% exploration
edge(X, Y) :- cost(X, Y, _).
reached(X, 0) :- start(X).
:- goal(Y), not reached(Y, _).
"""

EPISTEMIC_AXIOMS = """\
% epistemic: time is irrelevant, coloured nodes are never consumed
{ path(X, Y) } :- reached(X, N), edge(X, Y).
reached(Y, N) :- path(X, Y), reached(X, N).
"""

EPISTEMIC_OPT = """\
% optimization
totalcost(T) :- T = #sum{C,X,Y : path(X, Y), cost(X, Y, C)}.
#minimize {T: totalcost(T)}.
"""

PRODUCTIVE_AXIOMS = """\
% productive: one firing per step, tokens consumed unless start or catalyst
#defined catalyst/2.
avail(X, N) :- reached(X, N).
avail(X, N + 1) :- avail(X, N), N < depth, not fired(X, N).
avail(X, N + 1) :- avail(X, N), N < depth, start(X).
fired(X, N) :- path(X, Y, N), not catalyst(X, Y).
{ path(X, Y, N) } :- avail(X, N), edge(X, Y), N < depth.
reached(Y, N + 1) :- path(X, Y, N).
% interleaving: only one event can be caused at once
:- reached(X, N), reached(Y, N), X != Y.
:- path(X, Y, N), path(X2, Y2, N), (X, Y) != (X2, Y2).
% spontaneous and catalyst edges fire at most once
once(X, Y) :- start(X), edge(X, Y).
once(X, Y) :- catalyst(X, Y).
:- once(X, Y), path(X, Y, N), path(X, Y, M), N < M.
"""

PRODUCTIVE_OPT = """\
% optimization
totalcost(T) :- T = #sum{C,X,Y,N : path(X, Y, N), cost(X, Y, C)}.
#minimize {T: totalcost(T)}.
"""


def _const(name: str) -> str:
    return name if _BARE.match(name) else '"' + name + '"'


def _event_node(e: EventRef) -> str:
    return e.base if e.kind == INITIATE else str(e)


def _start_name(names) -> str:
    taken = set(names)
    if "s" not in taken:
        return "s"
    i = 0
    while f"s{i}" in taken:
        i += 1
    return f"s{i}"


def _scale(costs) -> int:
    factor = 1
    for c in costs:
        den = Fraction(Decimal(c)).denominator
        factor = factor * den // math.gcd(factor, den)
    return factor


def _fmt_int(value: Decimal, factor: int) -> str:
    scaled = Fraction(Decimal(value)) * factor
    assert scaled.denominator == 1
    return str(scaled.numerator)


def _epistemic_edges(graph: MentalGraph):
    return [(src, dst, c) for src, dst, c in graph.edge_list()], [], []


def _productive_edges(base: WorldRuleBase):
    edges: dict[tuple[str, str], Decimal] = {}
    catalysts, skipped = set(), []

    def add(src, dst, c):
        key = (src, dst)
        if key not in edges or c < edges[key]:
            edges[key] = c

    for s in base.spontaneous:
        if s.event.kind == "terminate":
            skipped.append(s.label)
            continue
        add(START, _event_node(s.event), s.cost)
    for r in base.rules:
        if len(r.effects) != 1 or r.effects[0].kind == "terminate":
            skipped.append(r.label)
            continue
        dst = _event_node(r.effects[0])
        if r.trigger is not None and not r.context:
            add(_event_node(r.trigger), dst, r.cost)
        elif r.trigger is None and len(r.context) == 1:
            (ctx,) = r.context
            add(ctx, dst, r.cost)
            catalysts.add((ctx, dst))
        else:
            skipped.append(r.label)
    order = sorted(edges, key=lambda k: (k[0] != START, k[0], k[1]))
    return [(s, d, edges[(s, d)]) for s, d in order], sorted(catalysts), skipped


def export_asp(program: Program, goals: GoalSet = GoalSet(), machine: str = EPISTEMIC,
               depth_bound: int = 10, augment_mode: str = RACE) -> str:
    """Render the encoding; a purely declarative program is augmented first
    when the productive machine is requested."""
    decl, act = split(program)
    if machine == PRODUCTIVE and not act.statements and decl.statements:
        act = augment(decl, augment_mode)
    if machine == EPISTEMIC:
        edges, catalysts, skipped = _epistemic_edges(build_mental_graph(decl))
        goal_nodes = sorted(set(goals.conditions) | {e.base for e in goals.events})
    elif machine == PRODUCTIVE:
        edges, catalysts, skipped = _productive_edges(build_world_base(act, depth_bound))
        goal_nodes = sorted(set(_event_node(e) for e in goals.events)
                            | set(goals.conditions), key=str)
    else:
        raise ValueError(f"unknown machine {machine!r}")

    names = {n for s, d, _ in edges for n in (s, d)} | set(goal_nodes)
    start = _start_name(names)

    def node(n):
        return start if n == START else _const(n)

    factor = _scale(c for _, _, c in edges)
    out = [f"% CompLog ASP encoding, {machine} machine",
           f"% edge costs in bits scaled by {factor}"]
    for label in skipped:
        out.append(f"% skipped (no edge form): {label}")
    if machine == PRODUCTIVE:
        out.append(f"#const depth = {depth_bound}.")
    out.append("")
    out += [f"cost({node(s)}, {node(d)}, {_fmt_int(c, factor)})." for s, d, c in edges]
    out += [f"catalyst({node(s)}, {node(d)})." for s, d in catalysts]
    out.append(f"start({start}).")
    if goal_nodes:
        out.append(" ".join(f"goal({node(g)})." for g in goal_nodes))
    out.append("")
    text = "\n".join(out) + "\n" + CORE + "\n"
    if machine == EPISTEMIC:
        text += EPISTEMIC_AXIOMS + "\n" + EPISTEMIC_OPT
    else:
        text += PRODUCTIVE_AXIOMS + "\n" + PRODUCTIVE_OPT
    return text
