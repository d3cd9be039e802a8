"""Runtime values and topological collections.

A collection maps positions to values and carries a neighbourhood relation
over its positions:

* ``seq``  -- positions are indices; ``i`` neighbours ``i-1`` and ``i+1``.
* ``set``  -- positions are indices into the duplicate-free element list;
  every element neighbours every other one.
* ``bag``  -- as ``set`` but duplicates are kept.
* ``grid`` -- positions are ``(row, col)``; von Neumann neighbourhood, row 0
  on top.

Set and bag iteration order is the order of the stored element list, so
matching and ``oneof`` are reproducible.
"""

from __future__ import annotations

import struct
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Sequence

from .errors import (DirectionTopologyMismatch, EmptyCollection, GridUnsupportedOp,
                     IncomparableValue, InvalidPosition, StructuralError)

TOPOLOGIES = ("seq", "set", "bag", "grid")

_GRID_STEPS = {"north": (-1, 0), "south": (1, 0), "east": (0, 1), "west": (0, -1)}
_SEQ_STEPS = {"left": -1, "right": 1}

Position = Any  # int for seq/set/bag, (row, col) for grid


# ---------------------------------------------------------------------------
# Function values

@dataclass(eq=False)
class Closure:
    param: str
    body: Any
    env: Any


@dataclass(eq=False)
class TransValue:
    rules: tuple
    env: Any


@dataclass(eq=False)
class Builtin:
    name: str
    arity: int
    impl: Callable
    args: tuple = ()
    positional: bool = False


@dataclass(frozen=True)
class PositionRef:
    """A pattern variable passed to a positional operator: where it was matched."""

    position: Position
    source: "Collection"
    value: Any


# ---------------------------------------------------------------------------
# Collections

@dataclass(frozen=True, eq=False)
class Collection:
    topo: str
    items: tuple
    shape: tuple[int, int] | None = None
    _key: Any = field(default=None, repr=False, compare=False)

    # -- construction --

    @staticmethod
    def seq(values: Iterable = ()) -> "Collection":
        return Collection("seq", tuple(values))

    @staticmethod
    def set(values: Iterable = ()) -> "Collection":
        seen: set = set()
        kept = []
        for v in values:
            k = value_key(v)
            if k not in seen:
                seen.add(k)
                kept.append(v)
        return Collection("set", tuple(kept))

    @staticmethod
    def bag(values: Iterable = ()) -> "Collection":
        return Collection("bag", tuple(values))

    @staticmethod
    def grid(rows: Sequence[Sequence]) -> "Collection":
        rows = [tuple(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise StructuralError("structural error: grid rows have different lengths")
        return Collection("grid", tuple(v for r in rows for v in r), (len(rows), ncols))

    @staticmethod
    def of(topo: str, values: Iterable) -> "Collection":
        """Build a non-grid collection of the given topology."""
        if topo == "grid":
            raise GridUnsupportedOp("grids are built from rows")
        return getattr(Collection, topo)(values)

    def with_items(self, values: Iterable) -> "Collection":
        """Same topology (and shape, for grids), new contents."""
        if self.topo == "grid":
            items = tuple(values)
            if len(items) != len(self.items):
                raise StructuralError("structural error: grid contents do not fit its shape")
            return Collection("grid", items, self.shape)
        return Collection.of(self.topo, values)

    # -- positions and neighbourhood --

    def __len__(self) -> int:
        return len(self.items)

    def positions(self) -> list[Position]:
        if self.topo == "grid":
            rows, cols = self.shape
            return [(r, c) for r in range(rows) for c in range(cols)]
        return list(range(len(self.items)))

    def _index(self, p: Position) -> int:
        if self.topo == "grid":
            rows, cols = self.shape
            if (not isinstance(p, tuple) or len(p) != 2
                    or not (0 <= p[0] < rows and 0 <= p[1] < cols)):
                raise InvalidPosition(f"invalid grid position {p!r}")
            return p[0] * cols + p[1]
        if not isinstance(p, int) or isinstance(p, bool) or not 0 <= p < len(self.items):
            raise InvalidPosition(f"invalid {self.topo} position {p!r}")
        return p

    def value_at(self, p: Position) -> Any:
        return self.items[self._index(p)]

    def neighbors(self, p: Position) -> list[Position]:
        """Neighbours of ``p`` in canonical position order."""
        self._index(p)
        if self.topo == "seq":
            return [q for q in (p - 1, p + 1) if 0 <= q < len(self.items)]
        if self.topo == "grid":
            rows, cols = self.shape
            r, c = p
            cand = [(r - 1, c), (r, c - 1), (r, c + 1), (r + 1, c)]
            return [(i, j) for i, j in cand if 0 <= i < rows and 0 <= j < cols]
        return [q for q in range(len(self.items)) if q != p]

    def direction_step(self, p: Position, d: str) -> Position | None:
        self._index(p)
        if self.topo == "seq" and d in _SEQ_STEPS:
            q = p + _SEQ_STEPS[d]
            return q if 0 <= q < len(self.items) else None
        if self.topo == "grid" and d in _GRID_STEPS:
            dr, dc = _GRID_STEPS[d]
            r, c = p[0] + dr, p[1] + dc
            rows, cols = self.shape
            return (r, c) if 0 <= r < rows and 0 <= c < cols else None
        raise DirectionTopologyMismatch(f"direction {d!r} is not defined on a {self.topo}")

    # -- polytypic operations --

    def cons(self, v: Any) -> "Collection":
        if self.topo == "grid":
            raise GridUnsupportedOp("'::' is not defined on grids")
        return Collection.of(self.topo, (v,) + self.items)

    def oneof(self) -> Any:
        if self.topo == "grid":
            raise GridUnsupportedOp("'oneof' is not defined on grids")
        if not self.items:
            raise EmptyCollection("oneof of an empty collection")
        return self.items[0]

    def rest(self) -> "Collection":
        if self.topo == "grid":
            raise GridUnsupportedOp("'rest' is not defined on grids")
        if not self.items:
            raise EmptyCollection("rest of an empty collection")
        return Collection(self.topo, self.items[1:])

    def size(self) -> int:
        return len(self.items)

    def rows(self) -> list[tuple]:
        rows, cols = self.shape
        return [self.items[r * cols:(r + 1) * cols] for r in range(rows)]

    # -- equality --

    def key(self) -> Hashable:
        if self._key is None:
            object.__setattr__(self, "_key", _collection_key(self))
        return self._key

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Collection) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Collection<{show_value(self)}>"


def _collection_key(c: Collection) -> Hashable:
    keys = tuple(value_key(v) for v in c.items)
    if c.topo == "seq":
        return ("seq", keys)
    if c.topo == "set":
        return ("set", frozenset(keys))
    if c.topo == "bag":
        return ("bag", frozenset(Counter(keys).items()))
    return ("grid", c.shape, keys)


def value_key(v: Any) -> Hashable:
    """Hashable structural key; two values are equal iff their keys are."""
    if isinstance(v, bool):
        return ("b", v)
    if isinstance(v, int):
        return ("i", v)
    if isinstance(v, float):
        return ("f", struct.pack("<d", v))
    if isinstance(v, str):
        return ("s", v)
    if isinstance(v, tuple):
        return ("p", value_key(v[0]), value_key(v[1]))
    if isinstance(v, Collection):
        return v.key()
    raise IncomparableValue(f"cannot compare functional values ({_kind(v)})")


def value_equal(a: Any, b: Any) -> bool:
    return value_key(a) == value_key(b)


def neighbors(c: Collection, p: Position) -> list[Position]:
    return c.neighbors(p)


def direction_step(c: Collection, p: Position, d: str) -> Position | None:
    return c.direction_step(p, d)


# ---------------------------------------------------------------------------
# Printing

def _kind(v: Any) -> str:
    if isinstance(v, Closure):
        return "<fun>"
    if isinstance(v, TransValue):
        return "<trans>"
    if isinstance(v, Builtin):
        return f"<builtin {v.name}>"
    return type(v).__name__


def show_value(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, float)):
        return repr(v)
    if isinstance(v, str):
        s = v.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n").replace("\t", "\\t")
        return f'"{s}"'
    if isinstance(v, tuple):
        return f"({show_value(v[0])}, {show_value(v[1])})"
    if isinstance(v, Collection):
        if v.topo == "seq":
            if not v.items:
                return "empty_seq"
            return "(" + "::".join(show_value(x) for x in v.items) + "::empty_seq)"
        if v.topo in ("set", "bag"):
            return "{" + ", ".join(show_value(x) for x in v.items) + "}" + v.topo
        rows, cols = v.shape
        body = " ".join("[" + " ".join(show_value(x) for x in r) + "]" for r in v.rows())
        return f"grid({rows} x {cols})[ {body} ]" if body else f"grid({rows} x {cols})[ ]"
    return _kind(v)
