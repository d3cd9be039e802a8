"""Call-by-value evaluation of the core language and its builtins."""

from __future__ import annotations

import random
from collections import ChainMap
from typing import Any

from . import transform
from .collection import Builtin, Closure, Collection, PositionRef, TransValue, value_equal
from .errors import (DivisionByZero, EvalError, FixpointDivergence, NoNeighbor,
                     PositionalArgNotPatternVar)
from .syntax import (App, Binding, Const, Expr, Fun, GRID_DIRECTIONS, Item, Let, Pair,
                     SEQ_DIRECTIONS, Trans, Var)
from .transform import PRIORITY, Strategy

DEFAULT_MAX_STEPS = 100_000


def _int_div(a: int, b: int) -> int:
    if b == 0:
        raise DivisionByZero("division by zero")
    q = abs(a) // abs(b)
    return q if (a >= 0) == (b >= 0) else -q


def _int_mod(a: int, b: int) -> int:
    if b == 0:
        raise DivisionByZero("modulo by zero")
    return a - b * _int_div(a, b)


def _float_div(a: float, b: float) -> float:
    if b == 0.0:
        raise DivisionByZero("float division by zero")
    return a / b


def _coll(v: Any, op: str) -> Collection:
    if not isinstance(v, Collection):
        raise EvalError(f"{op}: expected a collection")
    return v


def _grid_from_rows(interp, rows):
    return Collection.grid([_coll(r, "grid_from_rows").items for r in _coll(rows, "grid_from_rows").items])


def _rows(interp, g):
    g = _coll(g, "rows")
    if g.topo != "grid":
        raise EvalError("rows: expected a grid")
    return Collection.seq(Collection.seq(r) for r in g.rows())


def _fixpoint(interp: "Interpreter", f, c):
    current = c
    for _ in range(interp.max_steps):
        nxt = interp.apply(f, current)
        if value_equal(nxt, current):
            return current
        current = nxt
    raise FixpointDivergence(f"no fixpoint reached within {interp.max_steps} steps")


def _locate(ref: Any, s: Any, op: str) -> tuple[PositionRef, Collection]:
    if not isinstance(ref, PositionRef):
        raise PositionalArgNotPatternVar(f"first argument of {op!r} must be a pattern variable")
    s = _coll(s, op)
    if s is not ref.source and not value_equal(s, ref.source):
        raise PositionalArgNotPatternVar(
            f"{op!r}: the pattern variable was not matched in this collection")
    return ref, s


def _neighbour(direction: str):
    def impl(interp, ref, s):
        ref, s = _locate(ref, s, direction)
        q = s.direction_step(ref.position, direction)
        if q is None:
            raise NoNeighbor(f"no {direction} neighbour")
        return s.value_at(q)
    return impl


def _is_extreme(direction: str):
    def impl(interp, ref, s):
        ref, s = _locate(ref, s, f"is_{direction}")
        return s.direction_step(ref.position, direction) is None
    return impl


def _builtin_table() -> dict[str, Builtin]:
    b: dict[str, Builtin] = {}

    def add(name: str, arity: int, impl, positional: bool = False) -> None:
        b[name] = Builtin(name, arity, impl, (), positional)

    add("::", 2, lambda i, v, c: _coll(c, "::").cons(v))
    add("oneof", 1, lambda i, c: _coll(c, "oneof").oneof())
    add("rest", 1, lambda i, c: _coll(c, "rest").rest())
    add("size", 1, lambda i, c: _coll(c, "size").size())
    add("fixpoint", 2, _fixpoint)
    add("grid_from_rows", 1, _grid_from_rows)
    add("rows", 1, _rows)
    add("not", 1, lambda i, x: not x)
    add("&&", 2, lambda i, x, y: x and y)
    add("||", 2, lambda i, x, y: x or y)
    add("=", 2, lambda i, x, y: value_equal(x, y))
    add("<", 2, lambda i, x, y: x < y)
    add(">", 2, lambda i, x, y: x > y)
    add("+", 2, lambda i, x, y: x + y)
    add("-", 2, lambda i, x, y: x - y)
    add("*", 2, lambda i, x, y: x * y)
    add("/", 2, lambda i, x, y: _int_div(x, y))
    add("mod", 2, lambda i, x, y: _int_mod(x, y))
    add("+.", 2, lambda i, x, y: x + y)
    add("-.", 2, lambda i, x, y: x - y)
    add("*.", 2, lambda i, x, y: x * y)
    add("/.", 2, lambda i, x, y: _float_div(x, y))
    for d in sorted(SEQ_DIRECTIONS | GRID_DIRECTIONS):
        add(d, 2, _neighbour(d), positional=True)
        add(f"is_{d}", 2, _is_extreme(d), positional=True)
    return b


BUILTINS = _builtin_table()
CONSTANT_VALUES = {
    "empty_seq": Collection.seq(),
    "empty_set": Collection.set(),
    "empty_bag": Collection.bag(),
}


class Interpreter:
    """Evaluates expressions; owns the strategy, its random source and the fixpoint budget."""

    def __init__(self, strategy: Strategy = PRIORITY, max_steps: int = DEFAULT_MAX_STEPS):
        self.strategy = strategy
        self.max_steps = max_steps
        self.rng = random.Random(strategy.seed) if strategy.kind == "random" else None
        self.globals: ChainMap = ChainMap({}, dict(CONSTANT_VALUES), dict(BUILTINS))

    # -- environments --

    def new_env(self) -> ChainMap:
        return self.globals.new_child()

    def define(self, name: str, value: Any) -> None:
        self.globals.maps[0][name] = value

    # -- evaluation --

    def eval(self, e: Expr, env: ChainMap | None = None) -> Any:
        if env is None:
            env = self.globals
        try:
            return self._eval(e, env)
        except EvalError as exc:
            if exc.loc is None:
                exc.loc = getattr(e, "loc", None)
            raise

    def _eval(self, e: Expr, env: ChainMap) -> Any:
        if isinstance(e, Var):
            try:
                v = env[e.name]
            except KeyError:
                raise EvalError(f"unbound identifier {e.name!r}", e.loc) from None
            return v.value if isinstance(v, PositionRef) else v
        if isinstance(e, Const):
            return e.value
        if isinstance(e, App):
            f = self._eval(e.fn, env)
            if isinstance(f, Builtin) and f.positional and not f.args:
                ref = env.get(e.arg.name) if isinstance(e.arg, Var) else None
                if not isinstance(ref, PositionRef):
                    raise PositionalArgNotPatternVar(
                        f"first argument of {f.name!r} must be a pattern variable", e.loc)
                return self.apply(f, ref)
            try:
                return self.apply(f, self._eval(e.arg, env))
            except EvalError as exc:
                if exc.loc is None:
                    exc.loc = e.loc
                raise
        if isinstance(e, Fun):
            return Closure(e.param, e.body, env)
        if isinstance(e, Let):
            bound = self._eval(e.bound, env)
            return self._eval(e.body, env.new_child({e.name: bound}))
        if isinstance(e, Pair):
            first = self._eval(e.first, env)
            return (first, self._eval(e.second, env))
        if isinstance(e, Trans):
            return TransValue(e.rules, env)
        raise TypeError(f"not an expression: {e!r}")

    def apply(self, f: Any, arg: Any) -> Any:
        if isinstance(f, Closure):
            return self._eval(f.body, f.env.new_child({f.param: arg}))
        if isinstance(f, TransValue):
            if not isinstance(arg, Collection):
                raise EvalError("a transformation must be applied to a collection")
            return transform.apply_transformation(self, f.rules, f.env, arg, self.rng)
        if isinstance(f, Builtin):
            args = f.args + (arg,)
            if len(args) < f.arity:
                return Builtin(f.name, f.arity, f.impl, args, f.positional)
            return f.impl(self, *args)
        raise EvalError("application of a non-function value")

    def run_item(self, item: Item) -> Any:
        value = self.eval(item.expr)
        if isinstance(item, Binding):
            self.define(item.name, value)
        return value


def eval_expr(e: Expr, strategy: Strategy = PRIORITY, max_steps: int = DEFAULT_MAX_STEPS) -> Any:
    return Interpreter(strategy, max_steps).eval(e)
