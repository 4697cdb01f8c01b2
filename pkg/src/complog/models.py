"""Mental and world models built from a parsed program.

The declarative half of a program becomes a :class:`MentalGraph` (conditions
as nodes, a virtual start node, weighted edges). The active half becomes a
:class:`WorldRuleBase` searched by the productive engine.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from decimal import Decimal
from types import MappingProxyType
from typing import Iterable, Mapping

from .costs import ZERO
from .errors import AugmentError
from .syntax import (
    ACTIVE,
    DECLARATIVE,
    INITIATE,
    TERMINATE,
    ActiveRule,
    ConditionFact,
    DeclRule,
    EventFact,
    EventRef,
    Given,
    GivenEvent,
    Program,
    initiate,
    render_statement,
)

#: Virtual root of the mental graph. Not a valid identifier, so it can never
#: collide with a condition name.
START = "$start"

RACE, CATALYST = "race", "catalyst"
DEFAULT_DEPTH = 10


def split(program: Program) -> tuple[Program, Program]:
    decl, decl_spans, act, act_spans = [], [], [], []
    spans = program.spans or ((None,) * len(program.statements))
    for stmt, span in zip(program.statements, spans):
        if isinstance(stmt, DECLARATIVE):
            decl.append(stmt)
            decl_spans.append(span)
        else:
            act.append(stmt)
            act_spans.append(span)
    keep = bool(program.spans)
    return (Program(tuple(decl), tuple(decl_spans) if keep else ()),
            Program(tuple(act), tuple(act_spans) if keep else ()))


def merge(*programs: Program) -> Program:
    return Program(tuple(s for p in programs for s in p.statements))


def augment(declarative: Program, mode: str = RACE) -> Program:
    """Read a declarative program as an active one.

    Facts become initiation events. Rules become triggered rules in ``race``
    mode (the trigger token is consumed) or context-only rules in
    ``catalyst`` mode (the body condition is required but not consumed).
    """
    if mode not in (RACE, CATALYST):
        raise ValueError(f"unknown augmentation mode {mode!r}")
    out = []
    for stmt in declarative.statements:
        if isinstance(stmt, ConditionFact):
            out.append(EventFact(initiate(stmt.cond), stmt.weight))
        elif isinstance(stmt, DeclRule):
            effects = (initiate(stmt.head),)
            if mode == RACE:
                out.append(ActiveRule(initiate(stmt.body), frozenset(), effects, stmt.weight))
            else:
                out.append(ActiveRule(None, frozenset({stmt.body}), effects, stmt.weight))
        elif isinstance(stmt, Given):
            out.append(GivenEvent(initiate(stmt.cond)))
        else:
            raise AugmentError(f"active statement in declarative input: {render_statement(stmt)}")
    return Program(tuple(out), declarative.spans)


# ---------------------------------------------------------------------------
# mental graph

def _edge_key(edge):
    src, dst = edge
    return (src != START, src, dst)


@dataclass(frozen=True)
class MentalGraph:
    nodes: tuple = ()
    edges: Mapping = field(default_factory=dict)

    def __post_init__(self):
        ordered = {k: self.edges[k] for k in sorted(self.edges, key=_edge_key)}
        object.__setattr__(self, "edges", MappingProxyType(ordered))
        object.__setattr__(self, "nodes", tuple(sorted(set(self.nodes))))

    def __contains__(self, node) -> bool:
        return node == START or node in self.nodes

    def edge_list(self) -> list[tuple[str, str, Decimal]]:
        return [(s, d, c) for (s, d), c in self.edges.items()]

    def successors(self, node) -> list[tuple[str, Decimal]]:
        return [(d, c) for (s, d), c in self.edges.items() if s == node]

    def predecessors(self, node) -> list[tuple[str, Decimal]]:
        return [(s, c) for (s, d), c in self.edges.items() if d == node]

    def adjacency(self) -> dict[str, list[tuple[str, Decimal]]]:
        adj = {START: [], **{n: [] for n in self.nodes}}
        for (s, d), c in self.edges.items():
            adj[s].append((d, c))
        return adj

    def without(self, removed: Iterable[str]) -> "MentalGraph":
        gone = set(removed)
        return MentalGraph(
            tuple(n for n in self.nodes if n not in gone),
            {k: c for k, c in self.edges.items() if k[0] not in gone and k[1] not in gone},
        )

    def with_edge(self, src: str, dst: str, cost) -> "MentalGraph":
        edges = dict(self.edges)
        key = (src, dst)
        edges[key] = min(edges.get(key, cost), Decimal(cost))
        nodes = set(self.nodes) | {dst} | ({src} - {START})
        return MentalGraph(tuple(nodes), edges)


def build_mental_graph(declarative: Program) -> MentalGraph:
    """Collect declarative statements into a graph; active ones are ignored.

    Parallel edges keep their minimum cost.
    """
    nodes: set[str] = set()
    edges: dict[tuple[str, str], Decimal] = {}

    def add(src, dst, cost):
        key = (src, dst)
        if key not in edges or cost < edges[key]:
            edges[key] = cost

    for stmt in declarative.statements:
        if isinstance(stmt, ConditionFact):
            nodes.add(stmt.cond)
            add(START, stmt.cond, stmt.weight)
        elif isinstance(stmt, Given):
            nodes.add(stmt.cond)
            add(START, stmt.cond, ZERO)
        elif isinstance(stmt, DeclRule):
            nodes.update((stmt.body, stmt.head))
            add(stmt.body, stmt.head, stmt.weight)
    return MentalGraph(tuple(nodes), edges)


# ---------------------------------------------------------------------------
# world model

@dataclass(frozen=True)
class Spontaneous:
    id: str
    event: EventRef
    cost: Decimal
    cap: int = 1

    @property
    def label(self) -> str:
        return f"{self.id}: => {self.event}"


@dataclass(frozen=True)
class Rule:
    id: str
    trigger: EventRef | None
    context: frozenset
    effects: tuple
    cost: Decimal
    cap: int = 1

    @property
    def capped(self) -> bool:
        """Trigger-less rules are bounded by ``cap`` firings per execution."""
        return self.trigger is None

    @property
    def label(self) -> str:
        parts = [self.id + ":"]
        if self.trigger is not None:
            parts.append(str(self.trigger))
        if self.context:
            parts.append(": " + ", ".join(sorted(self.context)))
        parts.append("=> " + ", ".join(str(e) for e in self.effects))
        return " ".join(parts)


@dataclass(frozen=True)
class WorldRuleBase:
    spontaneous: tuple = ()
    rules: tuple = ()
    depth_bound: int = DEFAULT_DEPTH

    def __post_init__(self):
        if self.depth_bound < 1:
            raise ValueError("depth_bound must be >= 1")

    def events(self) -> set[EventRef]:
        out = {s.event for s in self.spontaneous}
        for r in self.rules:
            out.update(r.effects)
            if r.trigger is not None:
                out.add(r.trigger)
        return out

    def produced(self) -> set[EventRef]:
        out = {s.event for s in self.spontaneous}
        for r in self.rules:
            out.update(r.effects)
        return out

    def with_depth(self, depth_bound: int) -> "WorldRuleBase":
        return replace(self, depth_bound=depth_bound)

    def without_event(self, event: EventRef) -> "WorldRuleBase":
        """Drop every entry that produces or is triggered by ``event``."""
        return replace(
            self,
            spontaneous=tuple(s for s in self.spontaneous if s.event != event),
            rules=tuple(r for r in self.rules if r.trigger != event and event not in r.effects),
        )


def build_world_base(active: Program, depth_bound: int = DEFAULT_DEPTH,
                     cap: int = 1) -> WorldRuleBase:
    """Normalize active statements; declarative ones are ignored.

    Event facts and trigger-less, context-free single-effect rules become the
    same spontaneous entry. Ids follow program order: ``s0, s1, ...`` for
    spontaneous entries and ``r0, r1, ...`` for rules.
    """
    spont, rules = [], []
    for stmt in active.statements:
        if isinstance(stmt, EventFact):
            spont.append((stmt.event, stmt.weight))
        elif isinstance(stmt, ActiveRule):
            if stmt.trigger is None and not stmt.context and len(stmt.effects) == 1:
                spont.append((stmt.effects[0], stmt.weight))
            else:
                rules.append(stmt)
    return WorldRuleBase(
        tuple(Spontaneous(f"s{i}", e, w, cap) for i, (e, w) in enumerate(spont)),
        tuple(Rule(f"r{i}", r.trigger, r.context, r.effects, r.weight, cap)
              for i, r in enumerate(rules)),
        depth_bound,
    )


def _multiset(items) -> tuple:
    return tuple(sorted(items))


@dataclass(frozen=True)
class WorldState:
    """Search state of the world machine.

    ``tokens`` and ``occurred`` are sorted tuples used as multisets;
    ``fired`` holds ``(entry id, count)`` pairs for capped entries.
    """

    held: frozenset = frozenset()
    tokens: tuple = ()
    occurred: tuple = ()
    fired: tuple = ()
    step: int = 0
    cost: Decimal = ZERO

    def fired_count(self, entry_id: str) -> int:
        return dict(self.fired).get(entry_id, 0)

    def after(self, events: Iterable[EventRef], cost=ZERO, fired_id: str | None = None,
              consumed: EventRef | None = None, advance: bool = True) -> "WorldState":
        held = set(self.held)
        tokens = Counter(self.tokens)
        occurred = Counter(self.occurred)
        if consumed is not None:
            if tokens[consumed] < 1:
                raise ValueError(f"no token {consumed} to consume")
            tokens[consumed] -= 1
        for e in events:
            tokens[e] += 1
            occurred[e] += 1
            if e.kind == INITIATE:
                held.add(e.base)
            elif e.kind == TERMINATE:
                held.discard(e.base)
        fired = dict(self.fired)
        if fired_id is not None:
            fired[fired_id] = fired.get(fired_id, 0) + 1
        return WorldState(
            frozenset(held),
            _multiset(tokens.elements()),
            _multiset(occurred.elements()),
            tuple(sorted(fired.items())),
            self.step + 1 if advance else self.step,
            self.cost + cost,
        )


def initial_state(program: Program) -> WorldState:
    """Seed a world state from ``given`` statements.

    Both ``given: x.`` and ``given: +x.`` make ``x`` held; only the event
    form adds a token.
    """
    state = WorldState()
    for stmt in program.statements:
        if isinstance(stmt, Given):
            state = replace(state, held=state.held | {stmt.cond})
        elif isinstance(stmt, GivenEvent):
            state = state.after([stmt.event], advance=False)
    return state


def is_declarative_only(program: Program) -> bool:
    return not any(isinstance(s, ACTIVE) for s in program.statements)
