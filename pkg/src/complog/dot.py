"""Graphviz DOT renderings of models and witnesses. Output is deterministic."""

from __future__ import annotations

from .costs import fmt_cost
from .epistemic import ColouringWitness
from .models import START, MentalGraph, WorldRuleBase
from .productive import ExecutionWitness


def _q(name: str) -> str:
    return '"' + str(name).replace("\\", "\\\\").replace('"', '\\"') + '"'


def mental_dot(graph: MentalGraph, witness: ColouringWitness | None = None) -> str:
    chosen = set()
    coloured = set()
    if witness is not None:
        chosen = {(src, dst) for dst, (src, _) in witness.chosen.items()}
        coloured = set(witness.coloured)
    lines = ["digraph mental {", "  rankdir=LR;",
             f'  {_q(START)} [label="s", shape=circle, style=filled, fillcolor=black, fontcolor=white];']
    for n in graph.nodes:
        attrs = ", style=filled, fillcolor=black, fontcolor=white" if n in coloured else ""
        lines.append(f"  {_q(n)} [shape=circle{attrs}];")
    for src, dst, c in graph.edge_list():
        attrs = f'label="{fmt_cost(c)}"'
        if witness is not None:
            attrs += ", penwidth=2" if (src, dst) in chosen else ", color=gray"
        lines.append(f"  {_q(src)} -> {_q(dst)} [{attrs}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def world_dot(base: WorldRuleBase) -> str:
    """Events as ellipses, context conditions as boxes, rules as labelled edges."""
    events = sorted(base.events(), key=str)
    conds = sorted({c for r in base.rules for c in r.context})
    lines = ["digraph world {", "  rankdir=LR;",
             f'  {_q(START)} [label="s", shape=circle, style=filled, fillcolor=black, fontcolor=white];']
    lines += [f"  {_q(str(e))} [shape=ellipse];" for e in events]
    lines += [f"  {_q(c)} [shape=box];" for c in conds]
    for s in base.spontaneous:
        lines.append(f'  {_q(START)} -> {_q(str(s.event))} [label="{s.id}: {fmt_cost(s.cost)}"];')
    for r in base.rules:
        label = f'label="{r.id}: {fmt_cost(r.cost)}"'
        for e in r.effects:
            if r.trigger is not None:
                lines.append(f"  {_q(str(r.trigger))} -> {_q(str(e))} [{label}];")
            else:
                for c in sorted(r.context) or [START]:
                    lines.append(f"  {_q(c)} -> {_q(str(e))} [{label}, style=dashed];")
            if r.trigger is not None:
                for c in sorted(r.context):
                    lines.append(f"  {_q(c)} -> {_q(str(e))} [style=dotted, arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def timeline_dot(witness: ExecutionWitness) -> str:
    lines = ["digraph execution {", "  rankdir=LR;", '  t0 [label="t0", shape=point];']
    for i, step in enumerate(witness.steps, 1):
        lines.append(f'  t{i} [label="t{i}\\n{step.label}\\n{fmt_cost(step.cost)} bits", shape=box];')
        lines.append(f"  t{i - 1} -> t{i};")
    lines.append("}")
    return "\n".join(lines) + "\n"
