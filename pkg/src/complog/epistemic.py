"""Description complexity: minimum-cost colouring of the mental graph.

Colouring a set of goal conditions from the start node is a directed Steiner
arborescence problem. It is solved exactly with a Dreyfus-Wagner dynamic
program over goal subsets; each subset layer is closed with a reverse
Dijkstra pass, so a single goal reduces to plain shortest paths.

Costs are compared as ``(bits, coloured nodes)`` pairs. Among equal-cost
colourings the witness has the fewest coloured nodes, then the
lexicographically smallest sorted node list.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from decimal import Decimal
from itertools import count
from types import MappingProxyType
from typing import Iterable, Mapping

from .costs import INF, ZERO
from .errors import MixedQueryError, UnknownAtomError
from .models import START, MentalGraph
from .syntax import GoalSet


@dataclass(frozen=True)
class ColouringWitness:
    chosen: Mapping = field(default_factory=dict)  # node -> (source, cost)
    total: Decimal = ZERO

    def __post_init__(self):
        object.__setattr__(self, "chosen", MappingProxyType(dict(sorted(self.chosen.items()))))

    @property
    def coloured(self) -> frozenset:
        return frozenset(self.chosen)

    def edges(self) -> list[tuple[str, str, Decimal]]:
        return [(src, node, c) for node, (src, c) in self.chosen.items()]


@dataclass(frozen=True)
class EpistemicResult:
    cost: Decimal
    witness: ColouringWitness | None
    unreachable: tuple = ()

    @property
    def reachable(self) -> bool:
        return not self.unreachable


def _goal_atoms(goals) -> list[str]:
    if isinstance(goals, GoalSet):
        if goals.events:
            raise MixedQueryError(
                "epistemic queries range over conditions only",
                [str(e) for e in sorted(goals.events)])
        return sorted(goals.conditions)
    return sorted(set(goals))


def shortest_from(adj: Mapping, source: str) -> dict[str, tuple[Decimal, int]]:
    """Single-source ``(cost, edges)`` distances over an adjacency map."""
    dist = {source: (ZERO, 0)}
    heap = [(ZERO, 0, source)]
    while heap:
        c, n, node = heapq.heappop(heap)
        if dist.get(node, (INF, 0)) < (c, n):
            continue
        for dst, w in adj.get(node, ()):
            cand = (c + w, n + 1)
            if cand < dist.get(dst, (INF, 0)):
                dist[dst] = cand
                heapq.heappush(heap, (cand[0], cand[1], dst))
    return dist


class _Steiner:
    """One Dreyfus-Wagner solve over a fixed graph and terminal list."""

    def __init__(self, adj: Mapping, terminals: list[str]):
        self.adj = adj
        self.terminals = terminals
        self.radj: dict[str, list[tuple[str, Decimal]]] = {v: [] for v in adj}
        for src, outs in adj.items():
            for dst, w in outs:
                self.radj[dst].append((src, w))
        self.dp: dict[int, dict] = {}
        self.back: dict[int, dict] = {}
        self.split: dict[int, dict] = {}

    def solve(self) -> tuple[Decimal, int]:
        k = len(self.terminals)
        full = (1 << k) - 1
        for mask in range(1, full + 1):
            seeds: dict[str, tuple] = {}
            splits: dict[str, int] = {}
            if mask & (mask - 1) == 0:
                seeds[self.terminals[mask.bit_length() - 1]] = (ZERO, 0)
            else:
                low = mask & -mask
                sub = (mask - 1) & mask
                while sub:
                    # each unordered split once: the lowest terminal stays in ``sub``
                    if sub & low:
                        a, b = self.dp[sub], self.dp[mask ^ sub]
                        for v, (ca, na) in a.items():
                            other = b.get(v)
                            if other is None:
                                continue
                            cand = (ca + other[0], na + other[1])
                            if v not in seeds or cand < seeds[v]:
                                seeds[v] = cand
                                splits[v] = sub
                    sub = (sub - 1) & mask
            self._close(mask, seeds)
            self.split[mask] = splits
        return self.dp[full].get(START, (INF, 0))

    def _close(self, mask: int, seeds: dict):
        # dp[mask][v] = min_u dist(v, u) + seeds[u], by Dijkstra on reversed edges
        dist = dict(seeds)
        back = {v: None for v in seeds}
        tie = count()
        heap = [(c, n, next(tie), v) for v, (c, n) in sorted(seeds.items())]
        heapq.heapify(heap)
        done = set()
        while heap:
            c, n, _, u = heapq.heappop(heap)
            if u in done or dist[u] != (c, n):
                continue
            done.add(u)
            for v, w in self.radj.get(u, ()):
                cand = (c + w, n + 1)
                if v not in dist or cand < dist[v]:
                    dist[v] = cand
                    back[v] = (u, w)
                    heapq.heappush(heap, (cand[0], cand[1], next(tie), v))
        self.dp[mask] = dist
        self.back[mask] = back

    def tree(self) -> dict[str, tuple[str, Decimal]]:
        chosen: dict[str, tuple[str, Decimal]] = {}
        stack = [((1 << len(self.terminals)) - 1, START)]
        while stack:
            mask, v = stack.pop()
            while self.back[mask][v] is not None:
                u, w = self.back[mask][v]
                chosen[u] = (v, w)
                v = u
            sub = self.split[mask].get(v)
            if sub is not None:
                stack.append((sub, v))
                stack.append((mask ^ sub, v))
        return chosen


def _solve(adj, terminals):
    st = _Steiner(adj, terminals)
    return st.solve(), st


def _restrict(adj: Mapping, forbidden: set) -> dict:
    return {v: [(d, w) for d, w in outs if d not in forbidden]
            for v, outs in adj.items() if v not in forbidden}


def cd(graph: MentalGraph, goals) -> EpistemicResult:
    """Minimum description cost of colouring every goal condition."""
    atoms = _goal_atoms(goals)
    unknown = [a for a in atoms if a not in graph or a == START]
    if unknown:
        raise UnknownAtomError(f"unknown condition(s): {', '.join(unknown)}", unknown)
    if not atoms:
        return EpistemicResult(ZERO, ColouringWitness({}, ZERO))
    adj = graph.adjacency()
    reach = shortest_from(adj, START)
    missing = tuple(a for a in atoms if a not in reach)
    if missing:
        return EpistemicResult(INF, None, missing)

    best, st = _solve(adj, atoms)
    size = best[1]
    if size > len(atoms):
        st = _lex_smallest(adj, atoms, best)
    chosen = st.tree()
    witness = ColouringWitness(chosen, sum((c for _, c in chosen.values()), ZERO))
    return EpistemicResult(best[0], witness)


def _lex_smallest(adj, atoms: list[str], best) -> _Steiner:
    """Pin down the optimal colouring whose sorted node list is smallest.

    Walks the nodes in order, keeping each one that some optimal colouring
    (avoiding the nodes already rejected) can include.
    """
    required, forbidden = set(atoms), set()
    for v in sorted(n for n in adj if n != START):
        if v in required:
            continue
        if len(required) == best[1]:
            break
        sub = _restrict(adj, forbidden)
        if v not in shortest_from(sub, START):
            forbidden.add(v)
            continue
        value, _ = _solve(sub, sorted(required | {v}))
        if value == best:
            required.add(v)
        else:
            forbidden.add(v)
    forbidden |= set(adj) - required - {START}
    value, st = _solve(_restrict(adj, forbidden), sorted(required))
    assert value == best, (value, best)
    return st


def cd_value(graph: MentalGraph, goals) -> Decimal:
    return cd(graph, goals).cost


def descriptor_distances(graph: MentalGraph, source: str) -> dict[str, tuple[Decimal, int]]:
    """``(summed rule cost, rule hops)`` from ``source`` along rule edges."""
    if source == START or source not in graph:
        raise UnknownAtomError(f"unknown condition: {source}", [source])
    adj = {v: outs for v, outs in graph.adjacency().items() if v != START}
    return shortest_from(adj, source)


def reachable_descriptors(graph: MentalGraph, source: str) -> list[tuple[str, Decimal]]:
    """Conditions derivable from ``source`` through declarative rules.

    Start-node facts are not followed. ``source`` itself is included at cost 0.
    Sorted by cost, then hops, then name.
    """
    dist = descriptor_distances(graph, source)
    order = sorted(dist.items(), key=lambda kv: (kv[1][0], kv[1][1], kv[0]))
    return [(atom, c) for atom, (c, _) in order]


def colouring_cost(witness: ColouringWitness) -> Decimal:
    return sum((c for _, c in witness.chosen.values()), ZERO)


def check_witness(graph: MentalGraph, witness: ColouringWitness, goals: Iterable[str]) -> None:
    """Raise AssertionError unless ``witness`` is a valid colouring of ``goals``."""
    for node, (src, c) in witness.chosen.items():
        assert graph.edges.get((src, node)) == c, (src, node, c)
        assert src == START or src in witness.chosen, (src, node)
    for g in goals:
        assert g in witness.chosen, g
    # acyclic: every node walks back to START
    for node in witness.chosen:
        seen = set()
        while node != START:
            assert node not in seen, "cycle in colouring"
            seen.add(node)
            node = witness.chosen[node][0]
