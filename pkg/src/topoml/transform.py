"""Rule application on topological collections.

One application of ``trans [p1 => e1; ...; x => e]`` to a collection:

1. For each rule in order, pick non-intersecting occurrences of its pattern
   among the positions not yet matched, until no further occurrence exists.
   The last rule (a bare variable) then matches every remaining position.
2. Evaluate every rule body (a sequence) and substitute all occurrences at
   once.  Matching always sees the original collection; replacement values
   are never matched again in the same pass.

Substitution on ``seq``/``set``/``bag`` splices the replacement at the
occurrence's leftmost matched position and drops its other positions.  On a
``grid`` the replacement must have exactly one value per matched position,
written back in path order; anything else is a structural error.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Iterator

from .collection import Collection, Position, PositionRef
from .errors import EvalError, StructuralError
from .syntax import COMMA, Guarded, Pattern, Rule, Star

if TYPE_CHECKING:
    from .evaluator import Interpreter


@dataclass(frozen=True)
class Strategy:
    """``priority`` scans anchors in position order; ``random`` shuffles them (seeded)."""

    kind: str = "priority"
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("priority", "random"):
            raise ValueError(f"unknown strategy {self.kind!r}")


PRIORITY = Strategy()


@dataclass
class Occurrence:
    rule_index: int
    positions: tuple[Position, ...]
    bindings: dict[str, Any] = field(default_factory=dict)


def _forward_neighbors(c: Collection, p: Position) -> list[Position]:
    # Along a sequence, try the element after p before the one before it.
    if c.topo == "seq":
        return [q for q in (p + 1, p - 1) if 0 <= q < len(c.items)]
    return c.neighbors(p)


def match_rule(interp: "Interpreter", c: Collection, pattern: Pattern, env: Any,
               available: set, start: Position, rule_index: int = 0) -> Occurrence | None:
    """First occurrence of ``pattern`` anchored at ``start``, or ``None``.

    ``env`` is the scope the guards are evaluated in (it must bind ``self``).
    """
    for occ in iter_matches(interp, c, pattern, env, available, start, rule_index):
        return occ
    return None


def iter_matches(interp: "Interpreter", c: Collection, pattern: Pattern, env: Any,
                 available: set, start: Position, rule_index: int = 0) -> Iterator[Occurrence]:
    items = pattern.items

    def candidates(prev, link, used) -> list:
        if prev is None:
            cands = [start]
        elif link == COMMA:
            cands = _forward_neighbors(c, prev)
        else:
            q = c.direction_step(prev, link)
            cands = [] if q is None else [q]
        return [q for q in cands if q in available and q not in used]

    def paths(prev, link, k, used) -> Iterator[list]:
        if k == 0:
            yield []
            return
        for q in candidates(prev, link, used):
            for tail in paths(q, COMMA, k - 1, used | {q}):
                yield [q] + tail

    def search(idx, prev, used: frozenset, order: tuple, bindings: dict) -> Iterator[Occurrence]:
        if idx == len(items):
            if order:
                yield Occurrence(rule_index, order, dict(bindings))
            return
        item = items[idx]
        elem = item.elem
        if isinstance(elem, Star):
            limit = len(available) - len(used)
            for k in range(limit + 1):
                found = False
                for path in paths(prev, item.link, k, used):
                    found = True
                    bindings[elem.name] = Collection.seq(c.value_at(q) for q in path)
                    last = path[-1] if path else prev
                    yield from search(idx + 1, last, used | set(path), order + tuple(path),
                                      bindings)
                # a simple path of length k+1 extends one of length k
                if not found:
                    break
            bindings.pop(elem.name, None)
            return
        for q in candidates(prev, item.link, used):
            bindings[elem.name] = PositionRef(q, c, c.value_at(q))
            if isinstance(elem, Guarded) and not _guard(interp, elem, env, bindings):
                continue
            yield from search(idx + 1, q, used | {q}, order + (q,), bindings)
        bindings.pop(elem.name, None)

    # A pattern whose leading stars are empty anchors its first plain element at
    # `start`; that case is covered by `candidates(None, ...)`.
    yield from search(0, None, frozenset(), (), {})


def _guard(interp: "Interpreter", elem: Guarded, env: Any, bindings: dict) -> bool:
    result = interp.eval(elem.guard, env.new_child(dict(bindings)))
    if not isinstance(result, bool):
        raise EvalError(f"guard of {elem.name!r} did not evaluate to a boolean")
    return result


def select_occurrences(interp: "Interpreter", c: Collection, rules: tuple[Rule, ...], env: Any,
                       rng: random.Random | None = None) -> list[Occurrence]:
    """Maximal set of non-intersecting occurrences covering every position.

    With ``rng`` the anchor order of each rule is a shuffle drawn from it;
    otherwise anchors are scanned in canonical position order.
    """
    positions = c.positions()
    available = set(positions)
    selection: list[Occurrence] = []
    for index, rule in enumerate(rules[:-1]):
        anchors = list(positions)
        if rng is not None:
            rng.shuffle(anchors)
        # One scan suffices: guards only see the snapshot, and `available`
        # only shrinks, so an anchor that failed cannot succeed later.
        for start in anchors:
            if start not in available:
                continue
            occ = match_rule(interp, c, rule.pattern, env, available, start, index)
            if occ is not None:
                selection.append(occ)
                available.difference_update(occ.positions)
    default = rules[-1].pattern.items[0].elem.name
    last = len(rules) - 1
    for p in positions:
        if p in available:
            selection.append(Occurrence(last, (p,), {default: PositionRef(p, c, c.value_at(p))}))
    return selection


def apply_transformation(interp: "Interpreter", rules: tuple[Rule, ...], captured_env: Any,
                         c: Collection, rng: random.Random | None = None) -> Collection:
    env = captured_env.new_child({"self": c})
    selection = select_occurrences(interp, c, rules, env, rng)
    replacements: list[tuple] = []
    for occ in selection:
        value = interp.eval(rules[occ.rule_index].body, env.new_child(dict(occ.bindings)))
        if not (isinstance(value, Collection) and value.topo == "seq"):
            raise EvalError("rule body did not evaluate to a sequence")
        replacements.append(value.items)
    return substitute(c, selection, replacements)


def substitute(c: Collection, selection: list[Occurrence], replacements: list[tuple]) -> Collection:
    if c.topo == "grid":
        rows, cols = c.shape
        out = list(c.items)
        for occ, values in zip(selection, replacements):
            if len(values) != len(occ.positions):
                raise StructuralError(
                    f"structural error: pattern matched {len(occ.positions)} positions, "
                    f"replacement has {len(values)} elements (grid {rows}x{cols})")
            for (r, col), v in zip(occ.positions, values):
                out[r * cols + col] = v
        return Collection("grid", tuple(out), c.shape)
    at: dict[int, tuple] = {}
    for occ, values in zip(selection, replacements):
        at[min(occ.positions)] = values
    out = []
    for p in range(len(c.items)):
        out.extend(at.get(p, ()))
    return Collection.of(c.topo, out)
