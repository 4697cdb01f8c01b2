"""Causal complexity: cheapest interleaved execution of the world model.

Uniform-cost search over world states. Each step fires exactly one entry:

* a spontaneous entry pays its cost and emits its event;
* a triggered rule consumes one token of its trigger (race condition),
  needs its context conditions held (catalysts, not consumed), pays its cost
  and emits its effects left to right;
* a trigger-less rule needs only its context and fires at most ``cap`` times
  per execution. Spontaneous entries share the same cap.

Emitted events become tokens and are recorded as occurred; ``+x`` makes
``x`` held, ``-x`` removes it. An event goal is met once the event has
occurred (even if its token was consumed later); a condition goal is met if
the condition is held in the final state.
"""

from __future__ import annotations

import hashlib
import heapq
from collections import Counter
from dataclasses import dataclass
from decimal import Decimal
from itertools import count

from .costs import INF, ZERO
from .models import WorldRuleBase, WorldState
from .syntax import INITIATE, TERMINATE, EventRef, GoalSet


@dataclass(frozen=True)
class FiringStep:
    kind: str          # "spontaneous" | "rule"
    entry_id: str
    label: str
    cost: Decimal
    events: tuple
    digest: str


@dataclass(frozen=True)
class ExecutionWitness:
    steps: tuple = ()
    total: Decimal = ZERO

    def trace(self) -> str:
        from .costs import fmt_cost
        return "\n".join(f"{i}. {s.label}  ({fmt_cost(s.cost)})"
                         for i, s in enumerate(self.steps, 1))


@dataclass(frozen=True)
class ProductiveResult:
    cost: Decimal
    witness: ExecutionWitness | None
    depth_bound: int
    depth_exhausted: bool = False
    structurally_unreachable: bool = False
    final_state: WorldState | None = None

    @property
    def reachable(self) -> bool:
        return self.witness is not None


@dataclass(frozen=True)
class _Entry:
    kind: str
    entry_id: str
    label: str
    cost: Decimal
    trigger: EventRef | None
    context: frozenset
    effects: tuple
    cap_slot: int | None
    cap: int


def _entries(base: WorldRuleBase) -> list[_Entry]:
    out, slot = [], 0
    for s in base.spontaneous:
        out.append(_Entry("spontaneous", s.id, s.label, s.cost, None, frozenset(),
                          (s.event,), slot, s.cap))
        slot += 1
    for r in base.rules:
        cap_slot = None
        if r.capped:
            cap_slot, slot = slot, slot + 1
        out.append(_Entry("rule", r.id, r.label, r.cost, r.trigger, r.context,
                          r.effects, cap_slot, r.cap))
    return out


def _apply(held: frozenset, tokens: Counter, effects) -> frozenset:
    held = set(held)
    for e in effects:
        tokens[e] += 1
        if e.kind == INITIATE:
            held.add(e.base)
        elif e.kind == TERMINATE:
            held.discard(e.base)
    return frozenset(held)


def _digest(held, tokens, fired) -> str:
    text = repr((sorted(held), sorted(str(t) for t in tokens), fired))
    return hashlib.sha1(text.encode()).hexdigest()[:12]


def _as_goals(goals) -> GoalSet:
    if isinstance(goals, GoalSet):
        return goals
    return GoalSet.of(*goals)


def relaxed_reach(base: WorldRuleBase, initial: WorldState) -> tuple[set, set]:
    """Events and conditions reachable ignoring consumption, caps, depth and
    terminations. An over-approximation used to tell structural
    unreachability apart from an exhausted depth bound."""
    events = set(initial.occurred) | set(initial.tokens)
    conds = set(initial.held)
    changed = True
    while changed:
        changed = False
        for entry in _entries(base):
            if entry.trigger is not None and entry.trigger not in events:
                continue
            if not entry.context <= conds:
                continue
            for e in entry.effects:
                if e not in events:
                    events.add(e)
                    changed = True
                if e.kind == INITIATE and e.base not in conds:
                    conds.add(e.base)
                    changed = True
    return events, conds


def cw(base: WorldRuleBase, initial: WorldState | None = None, goals=GoalSet()) -> ProductiveResult:
    """Minimum total cost of an execution satisfying ``goals``."""
    goals = _as_goals(goals)
    initial = initial or WorldState()
    goal_events = frozenset(goals.events)
    goal_conds = frozenset(goals.conditions)
    entries = _entries(base)
    n_slots = sum(1 for e in entries if e.cap_slot is not None)
    depth = base.depth_bound

    fired0 = [0] * n_slots
    for e in entries:
        if e.cap_slot is not None:
            fired0[e.cap_slot] = initial.fired_count(e.entry_id)
    start = (
        frozenset(initial.held),
        tuple(sorted(Counter(initial.tokens).items())),
        tuple(fired0),
        frozenset(goal_events & set(initial.occurred)),
    )

    def satisfied(state) -> bool:
        held, _, _, occ = state
        return occ == goal_events and goal_conds <= held

    tie = count()
    heap = [(ZERO, initial.step, (), next(tie), start, ())]
    expanded: dict = {}
    truncated = False
    while heap:
        cost, step, labels, _, state, path = heapq.heappop(heap)
        prev = expanded.get(state)
        if prev is not None and prev <= step:
            continue
        expanded[state] = step
        if satisfied(state):
            witness = _replay(entries, initial, path)
            return ProductiveResult(cost, witness, depth, final_state=_to_world_state(
                state, initial, witness, entries))
        held, tok_items, fired, occ = state
        tokens = dict(tok_items)
        for idx, entry in enumerate(entries):
            if entry.cap_slot is not None and fired[entry.cap_slot] >= entry.cap:
                continue
            if entry.trigger is not None and tokens.get(entry.trigger, 0) < 1:
                continue
            if not entry.context <= held:
                continue
            if step >= depth:
                truncated = True
                break
            toks = Counter(tokens)
            if entry.trigger is not None:
                toks[entry.trigger] -= 1
                if not toks[entry.trigger]:
                    del toks[entry.trigger]
            new_held = _apply(held, toks, entry.effects)
            new_fired = fired
            if entry.cap_slot is not None:
                lst = list(fired)
                lst[entry.cap_slot] += 1
                new_fired = tuple(lst)
            new_occ = occ | (goal_events & set(entry.effects))
            nxt = (new_held, tuple(sorted(toks.items())), new_fired, frozenset(new_occ))
            seen = expanded.get(nxt)
            if seen is not None and seen <= step + 1:
                continue
            heapq.heappush(heap, (cost + entry.cost, step + 1, labels + (entry.label,),
                                  next(tie), nxt, path + (idx,)))

    events, conds = relaxed_reach(base, initial)
    structural = not (goal_events <= events and goal_conds <= conds)
    return ProductiveResult(INF, None, depth,
                            depth_exhausted=truncated and not structural,
                            structurally_unreachable=structural)


def _replay(entries: list[_Entry], initial: WorldState, path) -> ExecutionWitness:
    held = frozenset(initial.held)
    tokens = Counter(initial.tokens)
    fired: Counter = Counter()
    steps = []
    for idx in path:
        entry = entries[idx]
        if entry.trigger is not None:
            tokens[entry.trigger] -= 1
            tokens += Counter()  # drop zero counts
        held = _apply(held, tokens, entry.effects)
        if entry.cap_slot is not None:
            fired[entry.entry_id] += 1
        steps.append(FiringStep(entry.kind, entry.entry_id, entry.label, entry.cost,
                                entry.effects,
                                _digest(held, tokens.elements(), sorted(fired.items()))))
    return ExecutionWitness(tuple(steps), sum((s.cost for s in steps), ZERO))


def _to_world_state(state, initial: WorldState, witness: ExecutionWitness, entries) -> WorldState:
    held, tok_items, _, _ = state
    occurred = Counter(initial.occurred)
    fired = Counter(dict(initial.fired))
    for s in witness.steps:
        occurred.update(s.events)
    capped = {e.entry_id for e in entries if e.cap_slot is not None}
    for s in witness.steps:
        if s.entry_id in capped:
            fired[s.entry_id] += 1
    return WorldState(
        held,
        tuple(sorted(Counter(dict(tok_items)).elements())),
        tuple(sorted(occurred.elements())),
        tuple(sorted(fired.items())),
        initial.step + len(witness.steps),
        initial.cost + witness.total,
    )


def cw_value(base: WorldRuleBase, initial: WorldState | None = None, goals=GoalSet()) -> Decimal:
    return cw(base, initial, goals).cost


def enumerate_min_alternatives(base: WorldRuleBase, initial: WorldState | None,
                               candidate_events, excluded=()) -> list[tuple[EventRef, Decimal]]:
    """Single-goal causal cost of each candidate not in ``excluded``.

    Sorted by cost, then by rendered event. Unreachable candidates are
    listed with infinite cost.
    """
    excluded = set(excluded)
    out = []
    for e in sorted(set(candidate_events) - excluded):
        out.append((e, cw(base, initial, GoalSet(events=frozenset({e}))).cost))
    out.sort(key=lambda item: (item[1], str(item[0])))
    return out
