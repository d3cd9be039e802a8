"""Abstract syntax, lexer, parser and printer for the collection language.

The core is mini-ML (variables, constants, pairs, ``fun``, application,
``let``) plus ``trans [ p1 => e1 ; ... ; x => e ]``.  Patterns are paths of
elementary patterns joined by ``,`` (any neighbour) or ``|d>`` (the
neighbour in direction ``d``); an elementary pattern is ``x``, ``x/guard``
or ``* as x``.

A program is a sequence of ``let x = e;;`` bindings and bare ``e;;`` items.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Union

from .errors import ParseError

Loc = tuple[int, int]

DIRECTIONS = ("left", "right", "north", "south", "east", "west")
SEQ_DIRECTIONS = frozenset({"left", "right"})
GRID_DIRECTIONS = frozenset({"north", "south", "east", "west"})

# Operators that only make sense on a pattern variable of the enclosing rule.
POSITIONAL_OPS = frozenset(DIRECTIONS) | frozenset(f"is_{d}" for d in DIRECTIONS)

KEYWORDS = frozenset({"trans", "fun", "let", "in", "true", "false", "as", "mod", "self"})
RESERVED = frozenset({"trans", "fun", "let", "in", "self", "as", "mod", "true", "false"})

INFIX_OPS = frozenset({"::", "+", "-", "*", "/", "mod", "<", ">", "=", "&&", "||",
                       "+.", "-.", "*.", "/."})


# ---------------------------------------------------------------------------
# AST

@dataclass(frozen=True)
class Var:
    name: str
    loc: Loc | None = field(default=None, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Const:
    value: int | float | bool | str
    loc: Loc | None = field(default=None, compare=False, repr=False, kw_only=True)

    def __eq__(self, other):
        # 1 == True in Python; literals of different base types must differ.
        return (isinstance(other, Const) and type(self.value) is type(other.value)
                and self.value == other.value)

    def __hash__(self):
        return hash((type(self.value), self.value))


@dataclass(frozen=True)
class Pair:
    first: "Expr"
    second: "Expr"
    loc: Loc | None = field(default=None, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Fun:
    param: str
    body: "Expr"
    loc: Loc | None = field(default=None, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class App:
    fn: "Expr"
    arg: "Expr"
    loc: Loc | None = field(default=None, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Let:
    name: str
    bound: "Expr"
    body: "Expr"
    loc: Loc | None = field(default=None, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Trans:
    rules: tuple["Rule", ...]
    loc: Loc | None = field(default=None, compare=False, repr=False, kw_only=True)


Expr = Union[Var, Const, Pair, Fun, App, Let, Trans]


@dataclass(frozen=True)
class Plain:
    name: str


@dataclass(frozen=True)
class Guarded:
    name: str
    guard: Expr


@dataclass(frozen=True)
class Star:
    name: str


ElemPattern = Union[Plain, Guarded, Star]

COMMA = ","


@dataclass(frozen=True)
class PatternItem:
    """One elementary pattern and the link that leads to it.

    ``link`` is ``None`` for the first item, :data:`COMMA` for a plain
    neighbourhood step, otherwise a direction name.
    """

    elem: ElemPattern
    link: str | None = None


@dataclass(frozen=True)
class Pattern:
    items: tuple[PatternItem, ...]

    def names(self) -> list[str]:
        return [it.elem.name for it in self.items]

    @property
    def is_bare_variable(self) -> bool:
        return len(self.items) == 1 and isinstance(self.items[0].elem, Plain)


@dataclass(frozen=True)
class Rule:
    pattern: Pattern
    body: Expr


@dataclass(frozen=True)
class Binding:
    name: str
    expr: Expr
    loc: Loc | None = field(default=None, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class ExprItem:
    expr: Expr
    loc: Loc | None = field(default=None, compare=False, repr=False, kw_only=True)


Item = Union[Binding, ExprItem]


def binop(op: str, lhs: Expr, rhs: Expr, loc: Loc | None = None) -> App:
    return App(App(Var(op, loc=loc), lhs, loc=loc), rhs, loc=loc)


# ---------------------------------------------------------------------------
# Lexer

@dataclass(frozen=True)
class Token:
    kind: str  # INT FLOAT STRING IDENT KW OP DIR EOF
    value: object
    line: int
    col: int

    @property
    def loc(self) -> Loc:
        return (self.line, self.col)


_OPERATORS = [";;", "->", "=>", "::", "&&", "||", "+.", "-.", "*.", "/.",
              "(", ")", "[", "]", ";", ",", "/", "+", "-", "*", "<", ">", "="]
_FLOAT = re.compile(r"\d+\.\d*(?:[eE][+-]?\d+)?|\d+[eE][+-]?\d+")
_INT = re.compile(r"\d+")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_DIR = re.compile(r"\|([A-Za-z_][A-Za-z0-9_]*)>")
_ESCAPES = {"n": "\n", "t": "\t", '"': '"', "\\": "\\"}


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(source)

    def advance(k: int) -> None:
        nonlocal i, line, col
        for ch in source[i:i + k]:
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        i += k

    while i < n:
        ch = source[i]
        if ch in " \t\r\n":
            advance(1)
            continue
        if source.startswith("(*", i):
            start = (line, col)
            depth = 0
            while True:
                if i >= n:
                    raise ParseError("unterminated comment", start)
                if source.startswith("(*", i):
                    depth += 1
                    advance(2)
                elif source.startswith("*)", i):
                    depth -= 1
                    advance(2)
                    if depth == 0:
                        break
                else:
                    advance(1)
            continue
        start_line, start_col = line, col
        if ch == '"':
            j = i + 1
            chars = []
            while True:
                if j >= n or source[j] == "\n":
                    raise ParseError("unterminated string literal", (start_line, start_col))
                c = source[j]
                if c == '"':
                    break
                if c == "\\":
                    if j + 1 >= n or source[j + 1] not in _ESCAPES:
                        raise ParseError("bad escape in string literal", (start_line, start_col))
                    chars.append(_ESCAPES[source[j + 1]])
                    j += 2
                    continue
                chars.append(c)
                j += 1
            tokens.append(Token("STRING", "".join(chars), start_line, start_col))
            advance(j + 1 - i)
            continue
        m = _FLOAT.match(source, i)
        if m:
            tokens.append(Token("FLOAT", float(m.group()), start_line, start_col))
            advance(m.end() - i)
            continue
        m = _INT.match(source, i)
        if m:
            tokens.append(Token("INT", int(m.group()), start_line, start_col))
            advance(m.end() - i)
            continue
        m = _IDENT.match(source, i)
        if m:
            word = m.group()
            kind = "KW" if word in KEYWORDS else "IDENT"
            tokens.append(Token(kind, word, start_line, start_col))
            advance(m.end() - i)
            continue
        if not source.startswith("||", i):
            m = _DIR.match(source, i)
            if m:
                if m.group(1) not in DIRECTIONS:
                    raise ParseError(f"unknown direction {m.group(1)!r}", (start_line, start_col))
                tokens.append(Token("DIR", m.group(1), start_line, start_col))
                advance(m.end() - i)
                continue
        for op in _OPERATORS:
            if source.startswith(op, i):
                tokens.append(Token("OP", op, start_line, start_col))
                advance(len(op))
                break
        else:
            raise ParseError(f"unexpected character {ch!r}", (start_line, start_col))
    tokens.append(Token("EOF", None, line, col))
    return tokens


# ---------------------------------------------------------------------------
# Parser

_ADD_OPS = ("+", "-", "+.", "-.")
_MUL_OPS = ("*", "/", "*.", "/.")
_CMP_OPS = ("<", ">", "=")


class Parser:
    def __init__(self, source: str):
        self.tokens = tokenize(source)
        self.pos = 0
        # True while parsing a rule guard or body, where `self` is bound.
        self.in_rule = False

    # -- token helpers --

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        t = self.tokens[self.pos]
        if t.kind != "EOF":
            self.pos += 1
        return t

    def at(self, kind: str, value: object = None) -> bool:
        t = self.tok
        return t.kind == kind and (value is None or t.value == value)

    def at_op(self, *ops: str) -> bool:
        return self.tok.kind == "OP" and self.tok.value in ops

    def expect(self, kind: str, value: object = None) -> Token:
        if not self.at(kind, value):
            want = value if value is not None else kind.lower()
            raise ParseError(f"expected {want!r}, found {self._describe(self.tok)}", self.tok.loc)
        return self.next()

    @staticmethod
    def _describe(t: Token) -> str:
        if t.kind == "EOF":
            return "end of input"
        if t.kind == "DIR":
            return f"'|{t.value}>'"
        return repr(t.value)

    def ident(self, what: str = "identifier") -> Token:
        t = self.tok
        if t.kind == "KW" and t.value in RESERVED:
            raise ParseError(f"reserved word {t.value!r} cannot be used as {what}", t.loc)
        if t.kind != "IDENT":
            raise ParseError(f"expected {what}, found {self._describe(t)}", t.loc)
        return self.next()

    # -- program --

    def program(self) -> list[Item]:
        items: list[Item] = []
        while not self.at("EOF"):
            items.append(self.item())
        return items

    def item(self) -> Item:
        start = self.tok
        if self.at("KW", "let"):
            self.next()
            name = self.ident().value
            self.expect("OP", "=")
            bound = self.expr()
            if self.at("KW", "in"):
                self.next()
                body = self.expr()
                self.expect("OP", ";;")
                return ExprItem(Let(name, bound, body, loc=start.loc), loc=start.loc)
            self.expect("OP", ";;")
            return Binding(name, bound, loc=start.loc)
        e = self.expr()
        self.expect("OP", ";;")
        return ExprItem(e, loc=start.loc)

    # -- expressions --

    def expr(self) -> Expr:
        if self.at("KW", "fun"):
            return self.fun()
        if self.at("KW", "let"):
            return self.let()
        return self.or_expr()

    def fun(self) -> Expr:
        start = self.next()
        param = self.ident("parameter name").value
        self.expect("OP", "->")
        return Fun(param, self.expr(), loc=start.loc)

    def let(self) -> Expr:
        start = self.next()
        name = self.ident().value
        self.expect("OP", "=")
        bound = self.expr()
        self.expect("KW", "in")
        return Let(name, bound, self.expr(), loc=start.loc)

    def or_expr(self) -> Expr:
        lhs = self.and_expr()
        while self.at_op("||"):
            t = self.next()
            lhs = binop("||", lhs, self.and_expr(), t.loc)
        return lhs

    def and_expr(self) -> Expr:
        lhs = self.cmp_expr()
        while self.at_op("&&"):
            t = self.next()
            lhs = binop("&&", lhs, self.cmp_expr(), t.loc)
        return lhs

    def cmp_expr(self) -> Expr:
        lhs = self.cons_expr()
        if self.at_op(*_CMP_OPS):
            t = self.next()
            lhs = binop(t.value, lhs, self.cons_expr(), t.loc)
            if self.at_op(*_CMP_OPS):
                raise ParseError("comparison operators are not associative", self.tok.loc)
        return lhs

    def cons_expr(self) -> Expr:
        lhs = self.add_expr()
        if self.at_op("::"):
            t = self.next()
            return binop("::", lhs, self.cons_expr(), t.loc)
        return lhs

    def add_expr(self) -> Expr:
        lhs = self.mul_expr()
        while self.at_op(*_ADD_OPS):
            t = self.next()
            lhs = binop(t.value, lhs, self.mul_expr(), t.loc)
        return lhs

    def mul_expr(self) -> Expr:
        lhs = self.unary()
        while self.at_op(*_MUL_OPS) or self.at("KW", "mod"):
            t = self.next()
            lhs = binop(t.value, lhs, self.unary(), t.loc)
        return lhs

    def unary(self) -> Expr:
        if self.at_op("-"):
            t = self.next()
            if self.at("INT") or self.at("FLOAT"):
                lit = self.next()
                return Const(-lit.value, loc=t.loc)
            return binop("-", Const(0, loc=t.loc), self.unary(), t.loc)
        if self.at("KW", "fun"):
            return self.fun()
        if self.at("KW", "let"):
            return self.let()
        return self.application()

    def _starts_atom(self) -> bool:
        t = self.tok
        if t.kind in ("INT", "FLOAT", "STRING", "IDENT"):
            return True
        if t.kind == "KW":
            return t.value in ("true", "false", "self", "trans")
        return t.kind == "OP" and t.value in ("(", "[")

    def application(self) -> Expr:
        fn = self.atom()
        while self._starts_atom():
            arg_tok = self.tok
            fn = App(fn, self.atom(), loc=arg_tok.loc)
        return fn

    def atom(self) -> Expr:
        t = self.tok
        if t.kind in ("INT", "FLOAT", "STRING"):
            self.next()
            return Const(t.value, loc=t.loc)
        if t.kind == "IDENT":
            self.next()
            return Var(t.value, loc=t.loc)
        if t.kind == "KW":
            if t.value in ("true", "false"):
                self.next()
                return Const(t.value == "true", loc=t.loc)
            if t.value == "self":
                if not self.in_rule:
                    raise ParseError("'self' is only bound inside a transformation rule", t.loc)
                self.next()
                return Var("self", loc=t.loc)
            if t.value == "trans":
                return self.trans()
            raise ParseError(f"unexpected keyword {t.value!r}", t.loc)
        if self.at_op("("):
            self.next()
            first = self.expr()
            if self.at_op(","):
                self.next()
                second = self.expr()
                self.expect("OP", ")")
                return Pair(first, second, loc=t.loc)
            self.expect("OP", ")")
            return first
        if self.at_op("["):
            self.next()
            inner = self.expr()
            self.expect("OP", "]")
            return binop("::", inner, Var("empty_seq", loc=t.loc), t.loc)
        raise ParseError(f"unexpected {self._describe(t)}", t.loc)

    # -- transformations --

    def trans(self) -> Trans:
        start = self.expect("KW", "trans")
        self.expect("OP", "[")
        rules = [self.rule()]
        while self.at_op(";"):
            self.next()
            rules.append(self.rule())
        self.expect("OP", "]")
        last = rules[-1].pattern
        if not last.is_bare_variable:
            raise ParseError("the last rule of a transformation must be a bare variable pattern",
                             start.loc)
        return Trans(tuple(rules), loc=start.loc)

    def rule(self) -> Rule:
        pattern = self.pattern()
        self.expect("OP", "=>")
        saved, self.in_rule = self.in_rule, True
        try:
            body = self.expr()
        finally:
            self.in_rule = saved
        return Rule(pattern, body)

    def pattern(self) -> Pattern:
        items = [PatternItem(self.elem_pattern(), None)]
        while self.at_op(",") or self.at("DIR"):
            t = self.next()
            link = COMMA if t.kind == "OP" else t.value
            items.append(PatternItem(self.elem_pattern(), link))
        seen: set[str] = set()
        for it in items:
            if it.elem.name in seen:
                raise ParseError(f"pattern variable {it.elem.name!r} bound twice", self.tok.loc)
            seen.add(it.elem.name)
        return Pattern(tuple(items))

    def elem_pattern(self) -> ElemPattern:
        if self.at_op("*"):
            star = self.next()
            self.expect("KW", "as")
            name = self.ident("pattern variable").value
            if self.at_op("/"):
                raise ParseError("guard on star pattern is not allowed", star.loc)
            return Star(name)
        name = self.ident("pattern variable").value
        if self.at_op("/"):
            self.next()
            saved, self.in_rule = self.in_rule, True
            try:
                guard = self.or_expr()
            finally:
                self.in_rule = saved
            return Guarded(name, guard)
        return Plain(name)


def parse_program(source: str) -> list[Item]:
    items = Parser(source).program()
    check_positional_ops(items)
    return items


def parse_expr(source: str) -> Expr:
    p = Parser(source)
    e = p.expr()
    if p.at_op(";;"):
        p.next()
    if not p.at("EOF"):
        raise ParseError(f"unexpected {p._describe(p.tok)} after expression", p.tok.loc)
    check_positional_ops([ExprItem(e)])
    return e


def parse_pattern(source: str) -> Pattern:
    p = Parser(source)
    pat = p.pattern()
    if not p.at("EOF"):
        raise ParseError(f"unexpected {p._describe(p.tok)} after pattern", p.tok.loc)
    return pat


# ---------------------------------------------------------------------------
# Positional operators (left, is_left, north, ...) take a pattern variable of
# an enclosing rule as first argument; this is a syntactic restriction.

def check_positional_ops(items: list[Item]) -> None:
    shadowed: frozenset[str] = frozenset()
    for item in items:
        _check_pos(item.expr, frozenset(), shadowed)
        if isinstance(item, Binding) and item.name in POSITIONAL_OPS:
            shadowed = shadowed | {item.name}


def _check_pos(e: Expr, pvars: frozenset[str], shadowed: frozenset[str]) -> None:
    def rebind(name: str, pv: frozenset[str], sh: frozenset[str]):
        pv = pv - {name}
        if name in POSITIONAL_OPS:
            sh = sh | {name}
        return pv, sh

    if isinstance(e, Var):
        if e.name in POSITIONAL_OPS and e.name not in shadowed:
            raise ParseError(f"{e.name!r} must be applied to a pattern variable", e.loc)
    elif isinstance(e, App):
        f = e.fn
        if isinstance(f, Var) and f.name in POSITIONAL_OPS and f.name not in shadowed:
            if not (isinstance(e.arg, Var) and e.arg.name in pvars):
                raise ParseError(
                    f"first argument of {f.name!r} must be a pattern variable", e.arg.loc or e.loc)
            return
        _check_pos(f, pvars, shadowed)
        _check_pos(e.arg, pvars, shadowed)
    elif isinstance(e, Pair):
        _check_pos(e.first, pvars, shadowed)
        _check_pos(e.second, pvars, shadowed)
    elif isinstance(e, Fun):
        _check_pos(e.body, *rebind(e.param, pvars, shadowed))
    elif isinstance(e, Let):
        _check_pos(e.bound, pvars, shadowed)
        _check_pos(e.body, *rebind(e.name, pvars, shadowed))
    elif isinstance(e, Trans):
        for rule in e.rules:
            pv, sh = pvars, shadowed
            for it in rule.pattern.items:
                pv, sh = rebind(it.elem.name, pv, sh)
                if not isinstance(it.elem, Star):
                    pv = pv | {it.elem.name}
                if isinstance(it.elem, Guarded):
                    _check_pos(it.elem.guard, pv, sh)
            _check_pos(rule.body, pv, sh)


# ---------------------------------------------------------------------------
# Printer.  Output re-parses to the same AST.

def _lit(v: object) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return f"({v})" if v < 0 else str(v)
    if isinstance(v, float):
        s = repr(v)
        return f"({s})" if v < 0 else s
    s = str(v).replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n").replace("\t", "\\t")
    return f'"{s}"'


def pretty(e: Expr) -> str:
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Const):
        return _lit(e.value)
    if isinstance(e, Pair):
        return f"({pretty(e.first)}, {pretty(e.second)})"
    if isinstance(e, Fun):
        return f"(fun {e.param} -> {pretty(e.body)})"
    if isinstance(e, Let):
        return f"(let {e.name} = {pretty(e.bound)} in {pretty(e.body)})"
    if isinstance(e, App):
        if isinstance(e.fn, App) and isinstance(e.fn.fn, Var) and e.fn.fn.name in INFIX_OPS:
            return f"({pretty(e.fn.arg)} {e.fn.fn.name} {pretty(e.arg)})"
        if isinstance(e.fn, Var) and e.fn.name in INFIX_OPS:
            raise ValueError(f"partially applied infix operator {e.fn.name!r} has no surface syntax")
        return f"({pretty(e.fn)} {pretty(e.arg)})"
    if isinstance(e, Trans):
        rules = " ; ".join(f"{pretty_pattern(r.pattern)} => {pretty(r.body)}" for r in e.rules)
        return f"trans [ {rules} ]"
    raise TypeError(f"not an expression: {e!r}")


def pretty_pattern(p: Pattern) -> str:
    out = []
    for it in p.items:
        if it.link == COMMA:
            out.append(", ")
        elif it.link is not None:
            out.append(f" |{it.link}> ")
        el = it.elem
        if isinstance(el, Star):
            out.append(f"* as {el.name}")
        elif isinstance(el, Guarded):
            g = pretty(el.guard)
            out.append(f"{el.name}/{g}" if g.startswith("(") else f"{el.name}/({g})")
        else:
            out.append(el.name)
    return "".join(out)


def pretty_program(items: list[Item]) -> str:
    lines = []
    for it in items:
        if isinstance(it, Binding):
            lines.append(f"let {it.name} = {pretty(it.expr)};;")
        else:
            lines.append(f"{pretty(it.expr)};;")
    return "\n".join(lines) + ("\n" if lines else "")


def subexpressions(e: Expr) -> Iterator[Expr]:
    """Pre-order walk, guards and rule bodies included."""
    yield e
    if isinstance(e, App):
        yield from subexpressions(e.fn)
        yield from subexpressions(e.arg)
    elif isinstance(e, Pair):
        yield from subexpressions(e.first)
        yield from subexpressions(e.second)
    elif isinstance(e, Fun):
        yield from subexpressions(e.body)
    elif isinstance(e, Let):
        yield from subexpressions(e.bound)
        yield from subexpressions(e.body)
    elif isinstance(e, Trans):
        for r in e.rules:
            for it in r.pattern.items:
                if isinstance(it.elem, Guarded):
                    yield from subexpressions(it.elem.guard)
            yield from subexpressions(r.body)
