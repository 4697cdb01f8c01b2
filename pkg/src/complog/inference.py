"""Unexpectedness and the measures derived from it.

``U = C_W - C_D``: the causal cost of a situation minus its description
cost. The ex-ante cost adds the description cost back (``U + C_D``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from typing import Callable

from .costs import INF, ZERO, fmt_cost, is_finite
from .epistemic import EpistemicResult, cd, descriptor_distances, shortest_from
from .errors import NoCandidatesError, QueryError, UnknownEventError
from .models import (
    DEFAULT_DEPTH,
    RACE,
    START,
    MentalGraph,
    WorldRuleBase,
    WorldState,
    augment,
    build_mental_graph,
    build_world_base,
    initial_state,
    split,
)
from .productive import ProductiveResult, cw, relaxed_reach
from .syntax import NAMED, EventRef, GoalSet, Program, initiate

EPISTEMIC, PRODUCTIVE = "epistemic", "productive"
HIGH_ALTERNATIVE, LOW_AGGREGATE, EXHAUSTED = "high_alternative", "low_aggregate", "exhausted"


@dataclass(frozen=True)
class Models:
    mental: MentalGraph
    world: WorldRuleBase
    initial: WorldState
    augmented: str | None = None


def build_models(program: Program, augment_mode: str = RACE,
                 depth_bound: int = DEFAULT_DEPTH) -> Models:
    """Mental graph plus world model; a purely declarative program is
    augmented to obtain its world model."""
    decl, act = split(program)
    if not act.statements and decl.statements:
        active = augment(decl, augment_mode)
        return Models(build_mental_graph(decl), build_world_base(active, depth_bound),
                      initial_state(active), augment_mode)
    return Models(build_mental_graph(decl), build_world_base(act, depth_bound),
                  initial_state(program))


def counterpart_event(cond: str, world: WorldRuleBase) -> EventRef:
    """The world-side event standing for condition ``cond``: ``+cond`` when the
    world model knows it, else ``#cond`` when that exists, else ``+cond``."""
    known = world.events()
    plus = initiate(cond)
    if plus in known:
        return plus
    named = EventRef(NAMED, cond)
    return named if named in known else plus


def route_goals(goals: GoalSet, world: WorldRuleBase) -> tuple[GoalSet, GoalSet]:
    """Split a query into its (mental, world) goal sets."""
    mental = GoalSet(frozenset(goals.conditions) | {e.base for e in goals.events})
    world_goals = GoalSet(events=frozenset(goals.events)
                          | {counterpart_event(c, world) for c in goals.conditions})
    return mental, world_goals


def _attribute(err: QueryError, machine: str) -> QueryError:
    if err.machine is None:
        err.machine = machine
    return err


def _run_cd(graph, goals) -> EpistemicResult:
    try:
        return cd(graph, goals)
    except QueryError as err:
        raise _attribute(err, EPISTEMIC)


def _run_cw(base, initial, goals) -> ProductiveResult:
    try:
        return cw(base, initial, goals)
    except QueryError as err:
        raise _attribute(err, PRODUCTIVE)


# ---------------------------------------------------------------------------
# unexpectedness

@dataclass(frozen=True)
class UnexpectednessReport:
    goals: GoalSet
    mental_goals: GoalSet
    world_goals: GoalSet
    cw: Decimal
    cd: Decimal
    u: Decimal | None          # None when both sides are infinite
    u_clamped: Decimal | None
    ex_ante: Decimal
    world: ProductiveResult
    mental: EpistemicResult
    augmented: str | None = None

    @property
    def u_infinite(self) -> bool:
        return self.u is not None and not is_finite(self.u)

    def as_kv(self) -> list[tuple[str, str]]:
        return [
            ("goals", str(self.goals)),
            ("mental_goals", str(self.mental_goals)),
            ("world_goals", str(self.world_goals)),
            ("augmented", self.augmented or "none"),
            ("cw", fmt_cost(self.cw)),
            ("cd", fmt_cost(self.cd)),
            ("u", "undefined" if self.u is None else fmt_cost(self.u)),
            ("u_clamped", "undefined" if self.u_clamped is None else fmt_cost(self.u_clamped)),
            ("ex_ante", fmt_cost(self.ex_ante)),
            ("u_infinite", str(self.u_infinite).lower()),
            ("cw_depth_bound", str(self.world.depth_bound)),
            ("cw_depth_exhausted", str(self.world.depth_exhausted).lower()),
            ("cw_structurally_unreachable", str(self.world.structurally_unreachable).lower()),
            ("cd_unreachable", ",".join(self.mental.unreachable)),
        ]


def _difference(cw_cost: Decimal, cd_cost: Decimal) -> Decimal | None:
    if is_finite(cw_cost) and is_finite(cd_cost):
        return cw_cost - cd_cost
    if is_finite(cd_cost):
        return INF
    if is_finite(cw_cost):
        return -INF
    return None


def unexpectedness(program: Program, goals: GoalSet, augment_mode: str = RACE,
                   depth_bound: int = DEFAULT_DEPTH,
                   models: Models | None = None) -> UnexpectednessReport:
    m = models or build_models(program, augment_mode, depth_bound)
    mental_goals, world_goals = route_goals(goals, m.world)
    mental = _run_cd(m.mental, mental_goals)
    world = _run_cw(m.world, m.initial, world_goals)
    u = _difference(world.cost, mental.cost)
    u_clamped = None if u is None else max(u, ZERO)
    if is_finite(world.cost) and is_finite(mental.cost):
        ex_ante = u + mental.cost
    else:
        ex_ante = world.cost
    return UnexpectednessReport(goals, mental_goals, world_goals, world.cost, mental.cost,
                                u, u_clamped, ex_ante, world, mental, m.augmented)


# ---------------------------------------------------------------------------
# relevant description

@dataclass(frozen=True)
class DescriptorCandidate:
    atom: str
    cd: Decimal
    u: Decimal
    admissible: bool
    hops: int


@dataclass(frozen=True)
class DescriptionVerdict:
    observed: EventRef
    cw: Decimal
    chosen: str
    candidates: tuple

    def candidate(self, atom: str) -> DescriptorCandidate:
        return next(c for c in self.candidates if c.atom == atom)

    def as_kv(self) -> list[tuple[str, str]]:
        out = [("observed", str(self.observed)), ("cw", fmt_cost(self.cw)),
               ("chosen", self.chosen), ("chosen.u", fmt_cost(self.candidate(self.chosen).u))]
        for c in self.candidates:
            out += [(f"candidate.{c.atom}.cd", fmt_cost(c.cd)),
                    (f"candidate.{c.atom}.u", fmt_cost(c.u)),
                    (f"candidate.{c.atom}.admissible", str(c.admissible).lower()),
                    (f"candidate.{c.atom}.hops", str(c.hops))]
        return out


def describe(program: Program, observed: EventRef, augment_mode: str = RACE,
             depth_bound: int = DEFAULT_DEPTH, models: Models | None = None) -> DescriptionVerdict:
    """Pick the condition that best describes an observed event.

    Candidates are the conditions derivable from the event's namesake
    condition. Among those with ``U >= 0`` the smallest ``U`` wins; if none
    qualifies, the largest ``U`` among describable atoms does. Ties go to
    fewer rule hops, then name.
    """
    m = models or build_models(program, augment_mode, depth_bound)
    if observed not in m.world.events():
        raise UnknownEventError(f"unknown event: {observed}", [str(observed)], PRODUCTIVE)
    world = _run_cw(m.world, m.initial, GoalSet(events=frozenset({observed})))
    if not world.reachable:
        raise QueryError(f"{observed} cannot be produced within depth {m.world.depth_bound}",
                         [str(observed)], PRODUCTIVE)
    namesake = observed.base
    if namesake not in m.mental.nodes:
        raise NoCandidatesError(f"no condition {namesake} to describe {observed} with",
                                [namesake], EPISTEMIC)
    dist = descriptor_distances(m.mental, namesake)
    candidates = []
    for atom, (_, hops) in sorted(dist.items()):
        cost = _run_cd(m.mental, GoalSet(frozenset({atom}))).cost
        u = world.cost - cost if is_finite(cost) else INF
        candidates.append(DescriptorCandidate(atom, cost, u, is_finite(cost) and u >= 0, hops))

    admissible = [c for c in candidates if c.admissible]
    if admissible:
        chosen = min(admissible, key=lambda c: (c.u, c.hops, c.atom))
    else:
        # an atom the mind cannot reach is no description at all
        pool = [c for c in candidates if is_finite(c.cd)] or candidates
        chosen = min(pool, key=lambda c: (-c.u, c.hops, c.atom))
    return DescriptionVerdict(observed, world.cost, chosen.atom, tuple(candidates))


# ---------------------------------------------------------------------------
# negation

@dataclass(frozen=True)
class NegationReport:
    target: str
    machine: str
    target_cost: Decimal
    alternatives: tuple          # (node, cost) in examination order
    aggregated: float
    stop_reason: str

    def as_kv(self) -> list[tuple[str, str]]:
        out = [("target", self.target), ("machine", self.machine),
               ("target_cost", fmt_cost(self.target_cost))]
        for i, (node, c) in enumerate(self.alternatives, 1):
            out += [(f"alternative.{i}", node), (f"alternative.{i}.cost", fmt_cost(c))]
        out += [("aggregated", fmt_cost(self.aggregated)), ("stop_reason", self.stop_reason)]
        return out


def aggregate(costs) -> float:
    """``-log2(sum 2**-c)``; infinite for an empty list."""
    finite = [float(c) for c in costs if is_finite(c)]
    if not finite:
        return math.inf
    low = min(finite)
    # shift by the minimum to keep the sum in range
    return low - math.log2(math.fsum(2.0 ** (low - c) for c in finite))


def _iterate(c0: Decimal, remaining: set, cost_of: Callable, remove: Callable,
             theta_high: float, theta_low: float):
    examined: list[tuple[str, Decimal]] = []
    aggregated = math.inf
    while True:
        scored = sorted((cost_of(node), node) for node in remaining)
        if not scored or not is_finite(scored[0][0]):
            return examined, aggregated, EXHAUSTED
        cost, node = scored[0]
        examined.append((node, cost))
        aggregated = aggregate(c for _, c in examined)
        remaining.discard(node)
        remove(node)
        if float(cost - c0) >= theta_high:
            return examined, aggregated, HIGH_ALTERNATIVE
        if float(c0) - aggregated >= theta_low:
            return examined, aggregated, LOW_AGGREGATE


def negate(program: Program, target, machine: str = PRODUCTIVE, candidates=None,
           theta_high: float = 1.0, theta_low: float = 1.0, augment_mode: str = RACE,
           depth_bound: int = DEFAULT_DEPTH, models: Models | None = None) -> NegationReport:
    """Approximate the cost of "not ``target``" by its cheapest stand-ins.

    The target is removed from the model; the cheapest remaining alternative
    is recorded and removed in turn, and the recorded costs are aggregated
    as ``-log2(sum 2**-c)``. The loop stops once an alternative costs at
    least ``theta_high`` more than the target, once the aggregate is at
    least ``theta_low`` below it, or when no finite alternative is left.
    """
    m = models or build_models(program, augment_mode, depth_bound)
    if machine == EPISTEMIC:
        return _negate_epistemic(m, target, candidates, theta_high, theta_low)
    if machine == PRODUCTIVE:
        return _negate_productive(m, target, candidates, theta_high, theta_low)
    raise ValueError(f"unknown machine {machine!r}")


def _negate_epistemic(m: Models, target, candidates, theta_high, theta_low) -> NegationReport:
    node = target.base if isinstance(target, EventRef) else str(target)
    c0 = _run_cd(m.mental, GoalSet(frozenset({node}))).cost
    if not is_finite(c0):
        raise QueryError(f"{node} has no finite description cost", [node], EPISTEMIC)
    graph = m.mental
    if candidates is None:
        sources = {s for s, _ in graph.predecessors(node)}
        pool = {d for (s, d) in graph.edges if s in sources and d != node}
        if not pool:
            pool = set(shortest_from(graph.adjacency(), START)) - {START, node}
    else:
        pool = {c.base if isinstance(c, EventRef) else str(c) for c in candidates} - {node}
    work = [graph.without([node])]

    def cost_of(alt):
        if alt not in work[0].nodes:
            return INF
        return cd(work[0], GoalSet(frozenset({alt}))).cost

    def remove(alt):
        work[0] = work[0].without([alt])

    examined, agg, reason = _iterate(c0, set(pool), cost_of, remove, theta_high, theta_low)
    return NegationReport(node, EPISTEMIC, c0, tuple(examined), agg, reason)


def _negate_productive(m: Models, target, candidates, theta_high, theta_low) -> NegationReport:
    if isinstance(target, EventRef):
        event = target
    elif target and target[0] in "#+-":
        event = EventRef.parse(target)
    else:
        event = counterpart_event(target, m.world)
    c0 = _run_cw(m.world, m.initial, GoalSet(events=frozenset({event}))).cost
    if not is_finite(c0):
        raise QueryError(f"{event} has no finite causal cost", [str(event)], PRODUCTIVE)
    base = m.world
    if candidates is None:
        pool = set()
        if any(s.event == event for s in base.spontaneous):
            pool.update(s.event for s in base.spontaneous)
        for r in base.rules:
            if event in r.effects:
                for other in base.rules:
                    if other.trigger == r.trigger and other.context == r.context:
                        pool.update(other.effects)
        pool.discard(event)
        if not pool:
            pool = relaxed_reach(base, m.initial)[0] - {event}
    else:
        pool = {c if isinstance(c, EventRef) else EventRef.parse(c) for c in candidates} - {event}
    by_name = {str(e): e for e in pool}
    work = [base.without_event(event)]

    def cost_of(alt):
        return cw(work[0], m.initial, GoalSet(events=frozenset({by_name[alt]}))).cost

    def remove(alt):
        work[0] = work[0].without_event(by_name[alt])

    examined, agg, reason = _iterate(c0, set(by_name), cost_of, remove, theta_high, theta_low)
    return NegationReport(str(event), PRODUCTIVE, c0, tuple(examined), agg, reason)
