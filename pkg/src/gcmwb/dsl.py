"""The job DSL: a tiny recursive-descent parser with positioned errors.

Grammar (whitespace and #-comments are skipped):

    job        := statement* EOF
    statement  := ring_decl | params_decl | run_stmt
    ring_decl  := 'ring' NAME '=' field? '[' names ']' '/' '(' polys? ')' ';'
    field      := 'F' digits (one token, e.g. F101) | 'Q'
    params_decl:= 'params' NAME '=' '(' polys ')' ';'
    run_stmt   := 'run' command ('with' NAME '=' INT (',' NAME '=' INT)*)? ';'
    command    := NAME ('-' NAME)*

Polynomial syntax: integers, variables, + - * ^ and parentheses. Every
byte string yields either a JobSpec or a positioned DslError; nothing
panics. Parsed jobs round-trip through serialize_job.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DslSemanticError, DslSyntaxError
from .fields import is_prime
from .localring import RingPresentation
from .poly import Polynomial, PolyRing, ring_of

COMMANDS = ("invariants", "graded", "rees", "suite", "gcm-test")
DEFAULT_CHARACTERISTIC = 101


@dataclass(frozen=True)
class Token:
    kind: str            # "ident" | "int" | "punct" | "eof"
    text: str
    line: int
    column: int


_PUNCT = set("=[](),;/+-*^")


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_col = col
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("int", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("ident", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch in _PUNCT:
            tokens.append(Token("punct", ch, line, start_col))
            col += 1
            i += 1
            continue
        raise DslSyntaxError(f"unexpected character {ch!r}", line, start_col)
    tokens.append(Token("eof", "", line, col))
    return tokens


class _Cursor:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def expect(self, kind: str, text: str | None = None) -> Token:
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text if text is not None else kind
            got = tok.text if tok.text else tok.kind
            raise DslSyntaxError(f"expected {want!r}, found {got!r}",
                                 tok.line, tok.column)
        return self.advance()

    def match(self, kind: str, text: str | None = None) -> bool:
        tok = self.peek()
        return tok.kind == kind and (text is None or tok.text == text)


@dataclass(frozen=True)
class JobSpec:
    ring_name: str
    presentation: RingPresentation
    params: dict
    command: str | None
    options: dict

    def __eq__(self, other):
        return (isinstance(other, JobSpec)
                and self.ring_name == other.ring_name
                and self.presentation == other.presentation
                and self.params == other.params
                and self.command == other.command
                and self.options == other.options)


def parse_job(text: str) -> JobSpec:
    """Parse a whole job; every input yields a JobSpec or a DslError."""
    cur = _Cursor(tokenize(text))
    ring_name = None
    presentation = None
    ring = None
    params: dict = {}
    command = None
    options: dict = {}
    while not cur.match("eof"):
        tok = cur.peek()
        if cur.match("ident", "ring"):
            if presentation is not None:
                raise DslSemanticError("only one ring per job", tok.line,
                                       tok.column)
            ring_name, presentation, ring = _parse_ring(cur)
        elif cur.match("ident", "params"):
            if ring is None:
                raise DslSemanticError("params before any ring declaration",
                                       tok.line, tok.column)
            name, plist = _parse_params(cur, ring)
            params[name] = plist
        elif cur.match("ident", "run"):
            if command is not None:
                raise DslSemanticError("only one run statement per job",
                                       tok.line, tok.column)
            command, options = _parse_run(cur)
        else:
            got = tok.text if tok.text else tok.kind
            raise DslSyntaxError(
                f"expected 'ring', 'params' or 'run', found {got!r}",
                tok.line, tok.column)
    if presentation is None:
        eof = cur.peek()
        raise DslSemanticError("job declares no ring", eof.line, eof.column)
    return JobSpec(ring_name, presentation, params, command, options)


def _parse_ring(cur: _Cursor):
    cur.expect("ident", "ring")
    name = cur.expect("ident").text
    cur.expect("punct", "=")
    char = DEFAULT_CHARACTERISTIC
    tok = cur.peek()
    if cur.match("ident"):
        head = cur.advance()
        if head.text == "Q":
            char = 0
        elif head.text.startswith("F") and head.text[1:].isdigit():
            char = int(head.text[1:])
            if not is_prime(char):
                raise DslSemanticError("characteristic must be prime",
                                       head.line, head.column)
        else:
            raise DslSemanticError(
                f"expected a field like F101 or Q, found {head.text!r}",
                head.line, head.column)
    cur.expect("punct", "[")
    names = [cur.expect("ident").text]
    while cur.match("punct", ","):
        cur.advance()
        names.append(cur.expect("ident").text)
    closing = cur.expect("punct", "]")
    if len(set(names)) != len(names):
        raise DslSemanticError("duplicate variable names", closing.line,
                               closing.column)
    try:
        ring = ring_of(char, names)
    except ValueError as ex:
        raise DslSemanticError(str(ex), tok.line, tok.column) from None
    cur.expect("punct", "/")
    cur.expect("punct", "(")
    gens = []
    if not cur.match("punct", ")"):
        while True:
            gtok = cur.peek()
            g = _parse_expr(cur, ring)
            if g.constant_term() != ring.field.zero:
                raise DslSemanticError("generator has nonzero constant term",
                                       gtok.line, gtok.column)
            gens.append(g)
            if cur.match("punct", ","):
                cur.advance()
                continue
            break
    cur.expect("punct", ")")
    cur.expect("punct", ";")
    pres = RingPresentation(char, tuple(names), tuple(gens))
    return name, pres, ring


def _parse_params(cur: _Cursor, ring: PolyRing):
    cur.expect("ident", "params")
    name = cur.expect("ident").text
    cur.expect("punct", "=")
    cur.expect("punct", "(")
    elems = [_parse_expr(cur, ring)]
    while cur.match("punct", ","):
        cur.advance()
        elems.append(_parse_expr(cur, ring))
    cur.expect("punct", ")")
    cur.expect("punct", ";")
    return name, tuple(elems)


def _parse_run(cur: _Cursor):
    cur.expect("ident", "run")
    head = cur.expect("ident")
    parts = [head.text]
    while cur.match("punct", "-"):
        cur.advance()
        parts.append(cur.expect("ident").text)
    command = "-".join(parts)
    if command not in COMMANDS:
        raise DslSemanticError(
            f"unknown command {command!r}; expected one of {COMMANDS}",
            head.line, head.column)
    options: dict = {}
    if cur.match("ident", "with"):
        cur.advance()
        while True:
            key = cur.expect("ident")
            if key.text not in ("n", "m", "seed"):
                raise DslSemanticError(
                    f"unknown option {key.text!r}; expected n, m or seed",
                    key.line, key.column)
            cur.expect("punct", "=")
            val = cur.expect("int")
            options[key.text] = int(val.text)
            if cur.match("punct", ","):
                cur.advance()
                continue
            break
    cur.expect("punct", ";")
    return command, options


# -- polynomial expressions --------------------------------------------------


def _parse_expr(cur: _Cursor, ring: PolyRing) -> Polynomial:
    result = _parse_term(cur, ring)
    while cur.match("punct", "+") or cur.match("punct", "-"):
        op = cur.advance().text
        rhs = _parse_term(cur, ring)
        result = result + rhs if op == "+" else result - rhs
    return result


def _parse_term(cur: _Cursor, ring: PolyRing) -> Polynomial:
    result = _parse_unary(cur, ring)
    while cur.match("punct", "*"):
        cur.advance()
        result = result * _parse_unary(cur, ring)
    return result


def _parse_unary(cur: _Cursor, ring: PolyRing) -> Polynomial:
    if cur.match("punct", "-"):
        cur.advance()
        return -_parse_unary(cur, ring)
    return _parse_power(cur, ring)


def _parse_power(cur: _Cursor, ring: PolyRing) -> Polynomial:
    base = _parse_atom(cur, ring)
    if cur.match("punct", "^"):
        cur.advance()
        exp = cur.expect("int")
        return base ** int(exp.text)
    return base


def _parse_atom(cur: _Cursor, ring: PolyRing) -> Polynomial:
    tok = cur.peek()
    if tok.kind == "int":
        cur.advance()
        return ring.const(int(tok.text))
    if tok.kind == "ident":
        if tok.text not in ring.index:
            raise DslSemanticError(f"unknown variable {tok.text!r}",
                                   tok.line, tok.column)
        cur.advance()
        return ring.var(tok.text)
    if tok.kind == "punct" and tok.text == "(":
        cur.advance()
        inner = _parse_expr(cur, ring)
        cur.expect("punct", ")")
        return inner
    got = tok.text if tok.text else tok.kind
    raise DslSyntaxError(
        f"expected an integer, variable or '(', found {got!r}",
        tok.line, tok.column)


def parse_polynomial_text(ring: PolyRing, text: str) -> Polynomial:
    """Standalone polynomial parser over a fixed ring."""
    cur = _Cursor(tokenize(text))
    poly = _parse_expr(cur, ring)
    tok = cur.peek()
    if tok.kind != "eof":
        raise DslSyntaxError(f"trailing input {tok.text!r}", tok.line,
                             tok.column)
    return poly


def serialize_job(spec: JobSpec) -> str:
    """Canonical job text; parse(serialize(parse(t))) equals parse(t)."""
    pres = spec.presentation
    head = "Q" if pres.characteristic == 0 else f"F{pres.characteristic}"
    gens = ", ".join(str(g) for g in pres.defining)
    lines = [f"ring {spec.ring_name} = {head}[{','.join(pres.variables)}]"
             f"/({gens});"]
    for name, elems in spec.params.items():
        lines.append(f"params {name} = ({', '.join(str(e) for e in elems)});")
    if spec.command is not None:
        opts = ", ".join(f"{k}={v}" for k, v in sorted(spec.options.items()))
        suffix = f" with {opts}" if opts else ""
        lines.append(f"run {spec.command}{suffix};")
    return "\n".join(lines) + "\n"
