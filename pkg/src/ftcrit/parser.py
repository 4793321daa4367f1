"""Reader and writer for FTDL, the line-oriented fault-tree description language.

::

    # comment
    event x1 rate 18e-3 "Vehicle Failure"
    event x2 rate 1.347e-4 "Human Factor"
    top OR(x1, AND(x2, NOT(x1)))

Grammar::

    file       := (event_decl NEWLINE)* top_decl
    event_decl := "event" ID "rate" NUMBER STRING
    top_decl   := "top" gate
    gate       := KEYWORD "(" [gate ("," gate)*] ")" | ID
    KEYWORD    := AND | OR | NAND | NOR | XOR | NOT

Newlines inside parentheses are ignored, so a gate may span lines. NAND, NOR
and XOR are desugared while parsing; :func:`serialize_ftdl` writes the
desugared form and leaves a comment naming the original gate.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .errors import DanglingReference, DuplicateEventId, ModelError
from .model import And, Atomic, BasicEvent, FaultTree, Not, Or, build_tree, gate_text, iter_gates

GATE_KEYWORDS = ("AND", "OR", "NAND", "NOR", "XOR", "NOT")
KEYWORDS = frozenset(GATE_KEYWORDS + ("event", "rate", "top"))
MAX_DEPTH = 200


class ParseError(Exception):
    """A located FTDL error; ``kind`` is Lexical, Syntax or Semantic."""

    def __init__(self, line: int, column: int, kind: str, message: str):
        super().__init__(f"{line}:{column}: {kind} error: {message}")
        self.line = line
        self.column = column
        self.kind = kind
        self.message = message


@dataclass(frozen=True)
class Token:
    type: str  # NUMBER ID STRING LPAREN RPAREN COMMA NEWLINE EOF
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(
    r"""
    (?P<SKIP>[ \t\r\f\v]+|\#[^\n]*)
  | (?P<NEWLINE>\n)
  | (?P<NUMBER>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?(?![A-Za-z0-9_.]))
  | (?P<ID>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<STRING>"(?:[^"\\\n]|\\[^\n])*")
  | (?P<LPAREN>\()
  | (?P<RPAREN>\))
  | (?P<COMMA>,)
    """,
    re.VERBOSE,
)

_ESCAPES = {'"': '"', "\\": "\\", "n": "\n", "t": "\t"}


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    line, line_start, pos, depth = 1, 0, 0, 0
    while pos < len(source):
        match = _TOKEN_RE.match(source, pos)
        column = pos - line_start + 1
        if match is None:
            char = source[pos]
            if char == '"':
                raise ParseError(line, column, "Lexical", "unterminated string")
            raise ParseError(line, column, "Lexical", f"unexpected character {char!r}")
        kind, text = match.lastgroup, match.group()
        pos = match.end()
        if kind == "NEWLINE":
            if depth == 0:
                tokens.append(Token(kind, text, line, column))
            line, line_start = line + 1, pos
            continue
        if kind == "SKIP":
            continue
        if kind == "LPAREN":
            depth += 1
        elif kind == "RPAREN":
            depth = max(0, depth - 1)
        tokens.append(Token(kind, text, line, column))
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


def _unescape(tok: Token) -> str:
    out, body, i = [], tok.text[1:-1], 0
    while i < len(body):
        ch = body[i]
        if ch == "\\":
            nxt = body[i + 1]
            if nxt not in _ESCAPES:
                raise ParseError(tok.line, tok.column + i + 1, "Lexical", f"unknown escape \\{nxt}")
            out.append(_ESCAPES[nxt])
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.decl_at: dict[str, Token] = {}
        self.refs: dict[str, Token] = {}

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.type != "EOF":
            self.pos += 1
        return tok

    def error(self, tok: Token, message: str, kind: str = "Syntax") -> ParseError:
        return ParseError(tok.line, tok.column, kind, message)

    def expect(self, type_: str, what: str, text: str | None = None) -> Token:
        tok = self.next()
        if tok.type != type_ or (text is not None and tok.text != text):
            found = "end of input" if tok.type == "EOF" else repr(tok.text or tok.type)
            raise self.error(tok, f"expected {what}, found {found}")
        return tok

    def skip_newlines(self) -> None:
        while self.peek().type == "NEWLINE":
            self.next()

    def parse_file(self) -> FaultTree:
        events: list[BasicEvent] = []
        self.skip_newlines()
        while self.peek().type == "ID" and self.peek().text == "event":
            events.append(self.parse_event())
            self.expect("NEWLINE", "end of line after event declaration")
            self.skip_newlines()
        self.expect("ID", "'event' or 'top'", "top")
        top = self.parse_gate(0)
        self.skip_newlines()
        self.expect("EOF", "end of input after top gate")
        return self.validate(events, top)

    def parse_event(self) -> BasicEvent:
        keyword = self.next()
        ident = self.expect("ID", "event id")
        if ident.text in KEYWORDS:
            raise self.error(ident, f"{ident.text!r} is reserved and cannot name an event")
        self.expect("ID", "'rate'", "rate")
        num = self.expect("NUMBER", "failure rate")
        rate = float(num.text)
        if not math.isfinite(rate):
            raise self.error(num, f"rate {num.text} is not finite", "Semantic")
        if rate < 0:
            raise self.error(num, f"rate {num.text} is negative", "Semantic")
        label = _unescape(self.expect("STRING", "quoted label"))
        if ident.text in self.decl_at:
            raise self.error(ident, f"event {ident.text} declared more than once", "Semantic")
        self.decl_at[ident.text] = keyword
        return BasicEvent(ident.text, label, rate)

    def parse_gate(self, depth: int):
        tok = self.next()
        if depth > MAX_DEPTH:
            raise self.error(tok, f"gates nested deeper than {MAX_DEPTH}")
        if tok.type != "ID":
            found = "end of input" if tok.type == "EOF" else repr(tok.text or tok.type)
            raise self.error(tok, f"expected gate or event id, found {found}")
        if tok.text not in GATE_KEYWORDS:
            if tok.text in KEYWORDS:
                raise self.error(tok, f"{tok.text!r} is reserved and cannot name an event")
            self.refs.setdefault(tok.text, tok)
            return Atomic(tok.text)
        self.expect("LPAREN", f"'(' after {tok.text}")
        children = []
        if self.peek().type != "RPAREN":
            children.append(self.parse_gate(depth + 1))
            while self.peek().type == "COMMA":
                self.next()
                children.append(self.parse_gate(depth + 1))
        self.expect("RPAREN", "',' or ')'")
        return self.build_gate(tok, children)

    def build_gate(self, tok: Token, children):
        name, n = tok.text, len(children)
        if name == "AND":
            return And(children)
        if name == "OR":
            return Or(children)
        if name == "NOT":
            if n != 1:
                raise self.error(tok, f"NOT takes exactly 1 input, got {n}")
            return Not(children[0])
        if name == "XOR" and n != 2:
            raise self.error(tok, f"XOR takes exactly 2 inputs, got {n}")
        if name in ("NAND", "NOR") and n < 1:
            raise self.error(tok, f"{name} takes at least 1 input")
        note = f"{name}({', '.join(gate_text(c) for c in children)})"
        if name == "NAND":
            return Not(And(children), sugar=note)
        if name == "NOR":
            return Not(Or(children), sugar=note)
        a, b = children
        return Or([And([Not(a), b]), And([a, Not(b)])], sugar=note)

    def validate(self, events, top) -> FaultTree:
        try:
            return build_tree(events, top)
        except ModelError as exc:
            if isinstance(exc, DanglingReference):
                tok = self.refs.get(exc.event_id)
            elif isinstance(exc, DuplicateEventId):
                tok = None
            else:
                tok = self.decl_at.get(exc.event_id)
            tok = tok or self.tokens[0]
            raise self.error(tok, str(exc), "Semantic") from None


def parse_ftdl(source: str | bytes) -> FaultTree:
    """Parse FTDL text into a validated tree; raises :class:`ParseError`."""
    if isinstance(source, bytes):
        try:
            source = source.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(1, exc.start + 1, "Lexical", "input is not valid UTF-8") from None
    return _Parser(tokenize(source)).parse_file()


def load_ftdl(path) -> FaultTree:
    with open(path, "rb") as fh:
        return parse_ftdl(fh.read())


def format_number(x: float) -> str:
    """Shortest text that reads back as exactly ``x``."""
    if x == int(x) and abs(x) < 1e16:
        return str(int(x))
    return repr(float(x))


def _quote(text: str) -> str:
    body = text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n").replace("\t", "\\t")
    return f'"{body}"'


def serialize_ftdl(tree: FaultTree) -> str:
    """Canonical FTDL: one line per event in declaration order, then the top gate."""
    lines = [f"event {e.id} rate {format_number(e.rate)} {_quote(e.label)}" for e in tree.events]
    for gate in iter_gates(tree.top):
        note = getattr(gate, "sugar", None)
        if note:
            lines.append(f"# {note} written out in AND/OR/NOT form")
    lines.append(f"top {gate_text(tree.top)}")
    return "\n".join(lines) + "\n"
