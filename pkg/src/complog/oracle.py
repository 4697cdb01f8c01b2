"""Brute-force reference computations for cross-checking the engines.

Nothing here is shared with :mod:`complog.epistemic` or
:mod:`complog.productive`: each routine walks the raw model data on its own.
Intended for small instances only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal

from .costs import INF, ZERO
from .errors import BudgetExceeded
from .models import START, MentalGraph, WorldRuleBase, WorldState
from .syntax import GoalSet


@dataclass(frozen=True)
class OracleBudget:
    max_nodes: int = 12
    max_depth: int = 6
    max_sequences: int = 10**7

    def __post_init__(self):
        if min(self.max_nodes, self.max_depth, self.max_sequences) < 1:
            raise ValueError("budget fields must be positive")


def brute_cd(graph: MentalGraph, goals, budget: OracleBudget = OracleBudget()) -> Decimal:
    """Cheapest colouring by exhausting every coloured node set.

    ``best[S]`` is the minimum cost of any colouring order that ends with
    exactly the set ``S`` coloured; each order adds one node through one edge
    from an already coloured node (or the start node). Sets are visited by
    increasing size, so every order of every subset is covered.
    """
    targets = set(goals.conditions if isinstance(goals, GoalSet) else goals)
    nodes = list(graph.nodes)
    if len(nodes) > budget.max_nodes:
        raise BudgetExceeded(f"{len(nodes)} nodes > {budget.max_nodes}")
    if not targets:
        return ZERO
    index = {n: i for i, n in enumerate(nodes)}
    incoming: list[list[tuple[int, Decimal]]] = [[] for _ in nodes]
    for (src, dst), c in graph.edges.items():
        incoming[index[dst]].append((-1 if src == START else index[src], c))
    goal_mask = 0
    for t in targets:
        if t not in index:
            return INF
        goal_mask |= 1 << index[t]

    best: dict[int, Decimal] = {0: ZERO}
    answer = INF
    by_size = sorted(range(1 << len(nodes)), key=lambda m: bin(m).count("1"))
    for mask in by_size:
        if mask not in best:
            continue
        here = best[mask]
        if mask & goal_mask == goal_mask and here < answer:
            answer = here
        for v in range(len(nodes)):
            if mask >> v & 1:
                continue
            for src, c in incoming[v]:
                if src == -1 or mask >> src & 1:
                    nxt = mask | 1 << v
                    if nxt not in best or here + c < best[nxt]:
                        best[nxt] = here + c
    return answer


def relaxation_distance(graph: MentalGraph, target: str) -> Decimal:
    """Shortest start-to-target distance by repeated edge relaxation."""
    dist = {START: ZERO}
    for _ in range(len(graph.nodes) + 1):
        changed = False
        for (src, dst), c in graph.edges.items():
            if src in dist and (dst not in dist or dist[src] + c < dist[dst]):
                dist[dst] = dist[src] + c
                changed = True
        if not changed:
            break
    return dist.get(target, INF)


def brute_cw(base: WorldRuleBase, initial: WorldState | None, goals,
             budget: OracleBudget = OracleBudget()) -> Decimal:
    """Cheapest execution by enumerating every firing sequence up to depth.

    Depth-first over all sequences; a branch is cut only once its cost
    already exceeds the best complete execution found.
    """
    if base.depth_bound > budget.max_depth:
        raise BudgetExceeded(f"depth {base.depth_bound} > {budget.max_depth}")
    if not isinstance(goals, GoalSet):
        goals = GoalSet.of(*goals)
    initial = initial or WorldState()

    # (trigger, context, effects, cost, capped, cap, key)
    moves = [(None, frozenset(), (s.event,), s.cost, True, s.cap, s.id)
             for s in base.spontaneous]
    moves += [(r.trigger, r.context, r.effects, r.cost, r.trigger is None, r.cap, r.id)
              for r in base.rules]

    def done(held, occurred):
        return all(e in occurred for e in goals.events) and goals.conditions <= held

    best = [INF]
    visited = [0]

    def walk(held, tokens, occurred, fired, depth, cost):
        visited[0] += 1
        if visited[0] > budget.max_sequences:
            raise BudgetExceeded("sequence budget exhausted")
        if cost > best[0]:
            return
        if done(held, occurred):
            best[0] = min(best[0], cost)
        if depth == base.depth_bound:
            return
        for trigger, context, effects, c, capped, cap, key in moves:
            if capped and fired.get(key, 0) >= cap:
                continue
            if trigger is not None and tokens.count(trigger) == 0:
                continue
            if not context <= held:
                continue
            new_tokens = list(tokens)
            if trigger is not None:
                new_tokens.remove(trigger)
            new_held = set(held)
            new_occurred = list(occurred)
            for e in effects:
                new_tokens.append(e)
                new_occurred.append(e)
                if e.kind == "initiate":
                    new_held.add(e.base)
                elif e.kind == "terminate":
                    new_held.discard(e.base)
            new_fired = dict(fired)
            if capped:
                new_fired[key] = new_fired.get(key, 0) + 1
            walk(frozenset(new_held), new_tokens, new_occurred, new_fired, depth + 1, cost + c)

    walk(frozenset(initial.held), list(initial.tokens), list(initial.occurred),
         dict(initial.fired),
         initial.step, ZERO)
    return best[0]


def prob_complement(costs, target_cost=None) -> float:
    """Aggregate alternative costs as ``-log2(sum 2**-c)``.

    Reads each cost as the code length of an outcome; the result is the code
    length of "one of them". With ``target_cost`` given, the target and the
    alternatives must not carry more than unit mass together.
    """
    costs = [float(c) for c in costs]
    if any(math.isinf(c) or math.isnan(c) for c in costs):
        raise ValueError("costs must be finite")
    if not costs:
        return math.inf
    mass = math.fsum(2.0 ** -c for c in costs)
    if target_cost is not None:
        total = mass + 2.0 ** -float(target_cost)
        if total > 1 + 1e-12:
            raise ValueError(f"target and alternatives carry mass {total} > 1")
    return -math.log2(mass)
