"""CompLog front-end: tokenizer, recursive-descent parser, canonical renderer.

Surface grammar (see ``docs/language.md`` for the EBNF)::

    4 :: eagle.                      condition fact
    12 :: #eagle.                    event fact
    1 :: z -> x.                     declarative rule
    3 :: +x => +y, -x.               active rule (trigger, effects)
    #push : electricity => +light.   ECA rule (trigger, context, effects)
    : x => +y.                       catalyst rule (context only)
    2 :: => +die1.                   spontaneous rule
    given: x.   given: +x.           zero-cost evidence

``%`` starts a comment that runs to the end of the line. An omitted weight
means 0 bits.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from decimal import Decimal
from functools import total_ordering
from typing import Iterator, Union

from .costs import ZERO, fmt_cost
from .errors import DuplicateStatementError, LexError, NegativeWeightError, ParseError

IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

NAMED, INITIATE, TERMINATE = "named", "initiate", "terminate"
_PREFIX = {NAMED: "#", INITIATE: "+", TERMINATE: "-"}
_KIND = {v: k for k, v in _PREFIX.items()}


@total_ordering
@dataclass(frozen=True)
class EventRef:
    kind: str
    base: str

    def __post_init__(self):
        if self.kind not in _PREFIX:
            raise ValueError(f"unknown event kind {self.kind!r}")
        if not IDENT_RE.match(self.base):
            raise ValueError(f"invalid atom name {self.base!r}")

    def __str__(self) -> str:
        return _PREFIX[self.kind] + self.base

    def __lt__(self, other):
        if not isinstance(other, EventRef):
            return NotImplemented
        return str(self) < str(other)

    @classmethod
    def parse(cls, text: str) -> "EventRef":
        text = text.strip()
        if not text or text[0] not in _KIND:
            raise ValueError(f"not an event reference: {text!r}")
        return cls(_KIND[text[0]], text[1:])


def initiate(base: str) -> EventRef:
    return EventRef(INITIATE, base)


@dataclass(frozen=True)
class ConditionFact:
    cond: str
    weight: Decimal = ZERO


@dataclass(frozen=True)
class EventFact:
    event: EventRef
    weight: Decimal = ZERO


@dataclass(frozen=True)
class DeclRule:
    body: str
    head: str
    weight: Decimal = ZERO


@dataclass(frozen=True)
class ActiveRule:
    trigger: EventRef | None
    context: frozenset
    effects: tuple
    weight: Decimal = ZERO

    def __post_init__(self):
        if not self.effects:
            raise ValueError("active rule needs at least one effect")


@dataclass(frozen=True)
class Given:
    cond: str


@dataclass(frozen=True)
class GivenEvent:
    event: EventRef


Statement = Union[ConditionFact, EventFact, DeclRule, ActiveRule, Given, GivenEvent]
DECLARATIVE = (ConditionFact, DeclRule, Given)
ACTIVE = (EventFact, ActiveRule, GivenEvent)


@dataclass(frozen=True)
class Program:
    statements: tuple = ()
    spans: tuple = field(default=(), compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.statements)

    def __iter__(self) -> Iterator[Statement]:
        return iter(self.statements)

    @property
    def declarative(self) -> tuple:
        return tuple(s for s in self.statements if isinstance(s, DECLARATIVE))

    @property
    def active(self) -> tuple:
        return tuple(s for s in self.statements if isinstance(s, ACTIVE))


@dataclass(frozen=True)
class GoalSet:
    conditions: frozenset = frozenset()
    events: frozenset = frozenset()

    def __bool__(self) -> bool:
        return bool(self.conditions or self.events)

    def __str__(self) -> str:
        return "<" + ", ".join(sorted(self.conditions) + [str(e) for e in sorted(self.events)]) + ">"

    @classmethod
    def of(cls, *items) -> "GoalSet":
        """Build from strings (``"x"``, ``"+x"``) or EventRefs."""
        conds, events = set(), set()
        for item in items:
            if isinstance(item, EventRef):
                events.add(item)
            elif item and item[0] in _KIND:
                events.add(EventRef.parse(item))
            else:
                conds.add(item)
        return cls(frozenset(conds), frozenset(events))


# ---------------------------------------------------------------------------
# tokenizer

@dataclass(frozen=True)
class Token:
    type: str
    value: str
    line: int
    column: int


_TOKEN_SPEC = [
    ("WS", r"[ \t\r\n]+"),
    ("COMMENT", r"%[^\n]*"),
    ("NUMBER", r"\d+(?:\.\d+)?"),
    ("IDENT", r"[A-Za-z][A-Za-z0-9_]*"),
    ("OP", r"::|->|=>|[:,.#+\-<>⟨⟩]"),
]
_TOKEN_RE = re.compile("|".join(f"(?P<{name}>{rx})" for name, rx in _TOKEN_SPEC))


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise LexError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        value = m.group()
        if kind not in ("WS", "COMMENT"):
            tokens.append(Token(value if kind == "OP" else kind, value, line, pos - line_start + 1))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            line_start = pos + value.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


# ---------------------------------------------------------------------------
# parser

def _describe(tok: Token) -> str:
    return "end of input" if tok.type == "EOF" else repr(tok.value)


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, offset: int = 1) -> Token:
        return self.toks[min(self.i + offset, len(self.toks) - 1)]

    def advance(self) -> Token:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def at(self, *types: str) -> bool:
        return self.tok.type in types

    def fail(self, expected: str, tok: Token | None = None):
        tok = tok or self.tok
        raise ParseError(f"expected {expected}, found {_describe(tok)}", tok.line, tok.column)

    def expect(self, type_: str, what: str | None = None) -> Token:
        if self.tok.type != type_:
            self.fail(what or repr(type_))
        return self.advance()

    def atom(self) -> str:
        return self.expect("IDENT", "a condition name").value

    def event(self) -> EventRef:
        if not self.at("#", "+", "-"):
            self.fail("an event ('#x', '+x' or '-x')")
        prefix = self.advance().value
        return EventRef(_KIND[prefix], self.atom())

    def event_list(self) -> tuple:
        out = [self.event()]
        while self.at(","):
            self.advance()
            out.append(self.event())
        return tuple(out)

    def atom_list(self) -> frozenset:
        out = [self.atom()]
        while self.at(","):
            self.advance()
            out.append(self.atom())
        return frozenset(out)

    # statements

    def statement(self) -> Statement:
        start = self.tok
        if self.at("-") and self.peek().type == "NUMBER":
            raise NegativeWeightError("weights must be >= 0", start.line, start.column)
        weight = None
        if self.at("NUMBER"):
            weight = Decimal(self.advance().value)
            self.expect("::", "'::' after weight")
        if self.at("IDENT") and self.tok.value == "given" and self.peek().type == ":":
            if weight is not None:
                raise ParseError("'given' statements take no weight", start.line, start.column)
            self.advance()
            self.advance()
            stmt = GivenEvent(self.event()) if self.at("#", "+", "-") else Given(self.atom())
            self.expect(".", "'.'")
            return stmt
        w = ZERO if weight is None else weight

        if self.at("IDENT"):
            name_tok = self.tok
            cond = self.atom()
            if self.at("->"):
                self.advance()
                head = self.atom()
                if head == cond:
                    raise ParseError(f"declarative rule {cond} -> {head} is a self-loop",
                                     name_tok.line, name_tok.column)
                self.expect(".", "'.'")
                return DeclRule(cond, head, w)
            self.expect(".", "'.' or '->'")
            return ConditionFact(cond, w)

        trigger = None
        if self.at("#", "+", "-"):
            trigger = self.event()
            if self.at("."):
                self.advance()
                return EventFact(trigger, w)
        elif not self.at(":", "=>"):
            self.fail("a statement")
        context = frozenset()
        if self.at(":"):
            self.advance()
            context = self.atom_list()
        self.expect("=>", "'=>'")
        effects = self.event_list()
        self.expect(".", "'.' or ','")
        return ActiveRule(trigger, context, effects, w)

    def program(self) -> Program:
        stmts, spans, seen = [], [], {}
        while not self.at("EOF"):
            tok = self.tok
            stmt = self.statement()
            if stmt in seen:
                line, col = seen[stmt]
                raise DuplicateStatementError(
                    f"duplicate statement (first at {line}:{col})", tok.line, tok.column)
            seen[stmt] = (tok.line, tok.column)
            stmts.append(stmt)
            spans.append((tok.line, tok.column))
        return Program(tuple(stmts), tuple(spans))

    def goal(self) -> GoalSet:
        closer = None
        if self.at("<", "⟨"):
            closer = ">" if self.advance().value == "<" else "⟩"
        conds, events = set(), set()
        if not self.at("EOF", closer or "EOF"):
            while True:
                if self.at("#", "+", "-"):
                    events.add(self.event())
                else:
                    conds.add(self.atom())
                if not self.at(","):
                    break
                self.advance()
        if closer:
            self.expect(closer, repr(closer))
        self.expect("EOF", "end of goal")
        return GoalSet(frozenset(conds), frozenset(events))


def parse_program(text: str) -> Program:
    return _Parser(text).program()


def parse_goal(text: str) -> GoalSet:
    """Parse ``"<x, +y>"``, ``"⟨x, y⟩"``, ``"x, y"`` or ``""``."""
    return _Parser(text).goal()


# ---------------------------------------------------------------------------
# renderer

def _prefix(weight: Decimal) -> str:
    return "" if weight == 0 else f"{fmt_cost(weight)} :: "


def render_statement(stmt: Statement) -> str:
    if isinstance(stmt, ConditionFact):
        return f"{_prefix(stmt.weight)}{stmt.cond}."
    if isinstance(stmt, EventFact):
        return f"{_prefix(stmt.weight)}{stmt.event}."
    if isinstance(stmt, DeclRule):
        return f"{_prefix(stmt.weight)}{stmt.body} -> {stmt.head}."
    if isinstance(stmt, ActiveRule):
        lhs = []
        if stmt.trigger is not None:
            lhs.append(str(stmt.trigger))
        if stmt.context:
            lhs.append(": " + ", ".join(sorted(stmt.context)))
        lhs.append("=> " + ", ".join(str(e) for e in stmt.effects))
        return f"{_prefix(stmt.weight)}{' '.join(lhs)}."
    if isinstance(stmt, Given):
        return f"given: {stmt.cond}."
    if isinstance(stmt, GivenEvent):
        return f"given: {stmt.event}."
    raise TypeError(f"not a statement: {stmt!r}")


def render_program(program: Program) -> str:
    return "\n".join(render_statement(s) for s in program.statements)
