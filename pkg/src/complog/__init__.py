"""CompLog: a complexity-based logic-programming engine.

Programs weight conditions, events and rules in bits. Two searches price a
query: the cheapest colouring of the mental graph (description complexity)
and the cheapest execution of the world model (causal complexity). Their
difference is the unexpectedness of the situation.
"""

__version__ = "0.1.0"

from .costs import INF
from .epistemic import cd, reachable_descriptors
from .inference import describe, negate, unexpectedness
from .models import augment, build_mental_graph, build_world_base, split
from .productive import cw, enumerate_min_alternatives
from .syntax import EventRef, GoalSet, Program, parse_goal, parse_program, render_program

__all__ = [
    "INF",
    "EventRef",
    "GoalSet",
    "Program",
    "augment",
    "build_mental_graph",
    "build_world_base",
    "cd",
    "cw",
    "describe",
    "enumerate_min_alternatives",
    "negate",
    "parse_goal",
    "parse_program",
    "reachable_descriptors",
    "render_program",
    "split",
    "unexpectedness",
]
