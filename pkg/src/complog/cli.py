"""``complog`` command-line front-end.

Exit status: 0 on success, 1 when a query cannot be answered (unknown atom,
unreachable goal), 2 on parse or usage errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence, TextIO

from . import __version__
from .asp import export_asp
from .costs import fmt_cost, is_finite
from .dot import mental_dot, timeline_dot, world_dot
from .epistemic import cd
from .errors import ComplogSyntaxError, QueryError
from .inference import (
    EPISTEMIC,
    PRODUCTIVE,
    build_models,
    describe,
    negate,
    route_goals,
    unexpectedness,
)
from .models import CATALYST, RACE, augment, split
from .productive import cw
from .syntax import EventRef, parse_goal, parse_program, render_program

PLACES = 5


class UsageError(Exception):
    pass


def _num(value, fmt: str) -> str:
    return fmt_cost(value, None if fmt == "kv" else PLACES)


def _emit_kv(pairs, out: TextIO) -> None:
    for key, value in pairs:
        out.write(f"{key}={value}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="complog", description="CompLog query engine")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("program", help="path to a .complog file")
        p.add_argument("--format", choices=("text", "kv"), default="text")
        p.add_argument("--depth", type=int, default=10, help="depth bound of the world search")
        p.add_argument("--mode", choices=(RACE, CATALYST), default=RACE,
                       help="augmentation mode for purely declarative programs")
        return p

    command("check", "parse and validate a program")
    for name, help_ in (("cd", "description complexity"), ("cw", "causal complexity"),
                        ("u", "unexpectedness"), ("exante", "ex-ante causal cost")):
        command(name, help_).add_argument("--goals", default="", help='e.g. "<x, y>"')
    command("describe", "most relevant description of an event").add_argument(
        "--event", required=True, help='observed event, e.g. "#pigeon"')
    p = command("negate", "negation proxy by successive alternatives")
    p.add_argument("--target", required=True)
    p.add_argument("--machine", choices=(EPISTEMIC, PRODUCTIVE), default=PRODUCTIVE)
    p.add_argument("--candidates", default=None, help="comma-separated candidate nodes")
    p.add_argument("--theta-high", type=float, default=1.0)
    p.add_argument("--theta-low", type=float, default=1.0)
    command("augment", "print the declarative part read as an active program")
    p = command("export-dot", "Graphviz rendering of a model")
    p.add_argument("--graph", choices=("mental", "world", "timeline"), default="mental")
    p.add_argument("--goals", default=None,
                   help="mental: highlight the colouring; timeline: the execution to draw")
    p = command("export-asp", "ASP encoding for an external solver")
    p.add_argument("--goals", default="")
    p.add_argument("--machine", choices=(EPISTEMIC, PRODUCTIVE), default=EPISTEMIC)
    return parser


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise UsageError(f"cannot read {path}: {err.strerror}") from err
    return parse_program(text)


def _goals(text: str):
    try:
        return parse_goal(text)
    except ComplogSyntaxError as err:
        raise UsageError(f"bad goal {text!r}: {err}") from err


def _event(text: str) -> EventRef:
    try:
        return EventRef.parse(text)
    except ValueError as err:
        raise UsageError(str(err)) from err


def _run(args, out: TextIO) -> int:
    program = _load(args.program)
    fmt = args.format

    if args.command == "check":
        decl, act = split(program)
        if fmt == "kv":
            _emit_kv([("statements", len(program)), ("declarative", len(decl)),
                      ("active", len(act))], out)
        else:
            out.write(f"{len(program)} statements ({len(decl)} declarative, {len(act)} active)\n")
        return 0

    if args.command == "augment":
        decl, _ = split(program)
        text = render_program(augment(decl, args.mode))
        out.write(text + ("\n" if text else ""))
        return 0

    if args.command == "export-asp":
        out.write(export_asp(program, _goals(args.goals), args.machine, args.depth, args.mode))
        return 0

    models = build_models(program, args.mode, args.depth)

    if args.command == "export-dot":
        if args.graph == "world":
            out.write(world_dot(models.world))
            return 0
        if args.graph == "timeline":
            _, world_goals = route_goals(_goals(args.goals or ""), models.world)
            res = cw(models.world, models.initial, world_goals)
            if res.witness is None:
                raise QueryError(f"no execution reaches {world_goals}", machine=PRODUCTIVE)
            out.write(timeline_dot(res.witness))
            return 0
        witness = None
        if args.goals is not None:
            mental_goals, _ = route_goals(_goals(args.goals), models.world)
            witness = cd(models.mental, mental_goals).witness
        out.write(mental_dot(models.mental, witness))
        return 0

    if args.command == "cd":
        mental_goals, _ = route_goals(_goals(args.goals), models.world)
        res = cd(models.mental, mental_goals)
        if fmt == "kv":
            _emit_kv([("goals", str(mental_goals)), ("cd", _num(res.cost, fmt)),
                      ("unreachable", ",".join(res.unreachable))], out)
        else:
            out.write(f"cd={_num(res.cost, fmt)}\n")
            if res.witness is not None:
                for src, node, c in res.witness.edges():
                    out.write(f"  {node} <- {'s' if src.startswith('$') else src} ({_num(c, fmt)})\n")
            else:
                out.write(f"unreachable: {', '.join(res.unreachable)}\n")
        return 0 if res.reachable else 1

    if args.command == "cw":
        _, world_goals = route_goals(_goals(args.goals), models.world)
        res = cw(models.world, models.initial, world_goals)
        if fmt == "kv":
            _emit_kv([("goals", str(world_goals)), ("cw", _num(res.cost, fmt)),
                      ("depth_bound", res.depth_bound),
                      ("depth_exhausted", str(res.depth_exhausted).lower()),
                      ("structurally_unreachable", str(res.structurally_unreachable).lower())], out)
        else:
            out.write(f"cw={_num(res.cost, fmt)}\n")
            if res.witness is not None:
                if res.witness.steps:
                    out.write(res.witness.trace() + "\n")
            else:
                why = "depth bound exhausted" if res.depth_exhausted else "structurally unreachable"
                out.write(f"unreachable within depth {res.depth_bound}: {why}\n")
        return 0 if res.reachable else 1

    if args.command in ("u", "exante"):
        rep = unexpectedness(program, _goals(args.goals), models=models)
        if fmt == "kv":
            _emit_kv(rep.as_kv(), out)
        elif args.command == "exante":
            out.write(f"ex_ante={_num(rep.ex_ante, fmt)}\n")
        else:
            u = "undefined" if rep.u is None else _num(rep.u, fmt)
            uc = "undefined" if rep.u_clamped is None else _num(rep.u_clamped, fmt)
            out.write(f"cw={_num(rep.cw, fmt)} cd={_num(rep.cd, fmt)} u={u}\n")
            out.write(f"u_clamped={uc} ex_ante={_num(rep.ex_ante, fmt)}\n")
            if rep.augmented:
                out.write(f"world model: augmented ({rep.augmented})\n")
        return 0 if is_finite(rep.cw) and is_finite(rep.cd) else 1

    if args.command == "describe":
        verdict = describe(program, _event(args.event), models=models)
        if fmt == "kv":
            _emit_kv(verdict.as_kv(), out)
        else:
            out.write(f"{verdict.chosen}\n")
            for c in verdict.candidates:
                mark = "*" if c.atom == verdict.chosen else " "
                flag = "" if c.admissible else "  (U < 0)"
                out.write(f" {mark} {c.atom}: cd={_num(c.cd, fmt)} u={_num(c.u, fmt)}{flag}\n")
        return 0

    if args.command == "negate":
        cands = None
        if args.candidates:
            cands = [c.strip() for c in args.candidates.split(",") if c.strip()]
        rep = negate(program, args.target, args.machine, cands, args.theta_high,
                     args.theta_low, models=models)
        if fmt == "kv":
            _emit_kv(rep.as_kv(), out)
        else:
            out.write(f"{rep.target}: {_num(rep.target_cost, fmt)}\n")
            for node, c in rep.alternatives:
                out.write(f"  {node}: {_num(c, fmt)}\n")
            out.write(f"aggregated={_num(rep.aggregated, fmt)} stop={rep.stop_reason}\n")
        return 0

    raise UsageError(f"unknown command {args.command}")


def main(argv: Sequence[str] | None = None, stdout: TextIO | None = None,
         stderr: TextIO | None = None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return _run(args, out)
    except ComplogSyntaxError as exc:
        err.write(f"{args.program}:{exc}\n")
        return 2
    except UsageError as exc:
        err.write(f"complog: {exc}\n")
        return 2
    except QueryError as exc:
        err.write(f"complog: {exc}\n")
        return 1


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
