"""Two-sorted type algebra: types over topologies.

A collection type ``[content]topo`` pairs a content type with a topology,
which is either a base topology (``seq``, ``set``, ``bag``, ``grid``) or a
topology variable.  Type variables and topology variables live in separate
namespaces, so substitutions carry one map per sort.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

BASE_TYPES = ("int", "float", "bool", "string")
BASE_TOPOLOGIES = ("bag", "set", "seq", "grid")


@dataclass(frozen=True)
class Base:
    name: str


@dataclass(frozen=True)
class TypeVar:
    id: int


@dataclass(frozen=True)
class Arrow:
    arg: "Type"
    res: "Type"


@dataclass(frozen=True)
class Product:
    first: "Type"
    second: "Type"


@dataclass(frozen=True)
class BaseTopo:
    name: str


@dataclass(frozen=True)
class TopoVar:
    id: int


Topology = Union[BaseTopo, TopoVar]


@dataclass(frozen=True)
class Coll:
    content: "Type"
    topo: Topology


Type = Union[Base, TypeVar, Arrow, Product, Coll]

INT, FLOAT, BOOL, STRING = (Base(n) for n in BASE_TYPES)
SEQ, SET, BAG, GRID = BaseTopo("seq"), BaseTopo("set"), BaseTopo("bag"), BaseTopo("grid")


def fn(*types: Type) -> Type:
    """``fn(a, b, c)`` is ``a -> b -> c``."""
    result = types[-1]
    for t in reversed(types[:-1]):
        result = Arrow(t, result)
    return result


# ---------------------------------------------------------------------------
# Free variables

def _type_vars(t: Type, acc: set[int]) -> None:
    if isinstance(t, TypeVar):
        acc.add(t.id)
    elif isinstance(t, (Arrow, Product)):
        a, b = (t.arg, t.res) if isinstance(t, Arrow) else (t.first, t.second)
        _type_vars(a, acc)
        _type_vars(b, acc)
    elif isinstance(t, Coll):
        _type_vars(t.content, acc)


def _topo_vars(t: Type, acc: set[int]) -> None:
    if isinstance(t, (Arrow, Product)):
        a, b = (t.arg, t.res) if isinstance(t, Arrow) else (t.first, t.second)
        _topo_vars(a, acc)
        _topo_vars(b, acc)
    elif isinstance(t, Coll):
        if isinstance(t.topo, TopoVar):
            acc.add(t.topo.id)
        _topo_vars(t.content, acc)


def free_type_vars(x: "Type | TypeScheme | TypeEnvironment") -> set[int]:
    acc: set[int] = set()
    if isinstance(x, TypeScheme):
        _type_vars(x.body, acc)
        return acc - x.tvars
    if isinstance(x, TypeEnvironment):
        for s in x.values():
            acc |= free_type_vars(s)
        return acc
    _type_vars(x, acc)
    return acc


def free_topo_vars(x: "Type | TypeScheme | TypeEnvironment") -> set[int]:
    acc: set[int] = set()
    if isinstance(x, TypeScheme):
        _topo_vars(x.body, acc)
        return acc - x.rvars
    if isinstance(x, TypeEnvironment):
        for s in x.values():
            acc |= free_topo_vars(s)
        return acc
    if isinstance(x, (BaseTopo, TopoVar)):
        return {x.id} if isinstance(x, TopoVar) else set()
    _topo_vars(x, acc)
    return acc


# ---------------------------------------------------------------------------
# Substitutions

class Substitution:
    """Simultaneous replacement of type variables and topology variables.

    ``s2.compose(s1)`` is ``s2 ∘ s1``: apply ``s1`` first, then ``s2``.
    Composition applies the outer substitution to the range of the inner
    one, which keeps results idempotent as long as the outer domain is
    disjoint from the inner domain.
    """

    __slots__ = ("tmap", "rmap")

    def __init__(self, tmap: Mapping[int, Type] | None = None,
                 rmap: Mapping[int, Topology] | None = None):
        self.tmap: dict[int, Type] = dict(tmap or {})
        self.rmap: dict[int, Topology] = dict(rmap or {})

    @classmethod
    def empty(cls) -> "Substitution":
        return cls()

    def __bool__(self) -> bool:
        return bool(self.tmap or self.rmap)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Substitution)
                and self.tmap == other.tmap and self.rmap == other.rmap)

    def __repr__(self) -> str:
        parts = [f"'{k}<-{show_type(v)}" for k, v in sorted(self.tmap.items())]
        parts += [f"!{k}<-{show_topo(v)}" for k, v in sorted(self.rmap.items())]
        return f"Substitution({', '.join(parts)})"

    def topo(self, r: Topology) -> Topology:
        if isinstance(r, TopoVar):
            return self.rmap.get(r.id, r)
        return r

    def apply(self, t: Type) -> Type:
        if not self:
            return t
        return self._apply(t)

    __call__ = apply

    def _apply(self, t: Type) -> Type:
        if isinstance(t, TypeVar):
            return self.tmap.get(t.id, t)
        if isinstance(t, Base):
            return t
        if isinstance(t, Arrow):
            return Arrow(self._apply(t.arg), self._apply(t.res))
        if isinstance(t, Product):
            return Product(self._apply(t.first), self._apply(t.second))
        if isinstance(t, Coll):
            return Coll(self._apply(t.content), self.topo(t.topo))
        raise TypeError(f"not a type: {t!r}")

    def apply_scheme(self, s: "TypeScheme") -> "TypeScheme":
        inner = Substitution({k: v for k, v in self.tmap.items() if k not in s.tvars},
                             {k: v for k, v in self.rmap.items() if k not in s.rvars})
        return TypeScheme(s.tvars, s.rvars, inner.apply(s.body))

    def apply_env(self, env: "TypeEnvironment") -> "TypeEnvironment":
        if not self:
            return env
        return TypeEnvironment({k: self.apply_scheme(v) for k, v in env.items()})

    def compose(self, inner: "Substitution") -> "Substitution":
        tmap = {k: self.apply(v) for k, v in inner.tmap.items()}
        for k, v in self.tmap.items():
            tmap.setdefault(k, v)
        rmap = {k: self.topo(v) for k, v in inner.rmap.items()}
        for k, v in self.rmap.items():
            rmap.setdefault(k, v)
        return Substitution(tmap, rmap)


# ---------------------------------------------------------------------------
# Schemes and environments

@dataclass(frozen=True)
class TypeScheme:
    tvars: frozenset[int]
    rvars: frozenset[int]
    body: Type

    @classmethod
    def mono(cls, t: Type) -> "TypeScheme":
        return cls(frozenset(), frozenset(), t)

    def normalized(self) -> "TypeScheme":
        """Drop quantifiers that do not occur in the body."""
        return TypeScheme(frozenset(self.tvars & free_type_vars(self.body)),
                          frozenset(self.rvars & free_topo_vars(self.body)), self.body)

    def __str__(self) -> str:
        return show_scheme(self)


class TypeEnvironment(dict):
    """Identifier -> TypeScheme.  Missing identifiers raise ``KeyError``."""

    def extend(self, name: str, scheme: TypeScheme) -> "TypeEnvironment":
        env = TypeEnvironment(self)
        env[name] = scheme
        return env


def generalize(t: Type, env: TypeEnvironment) -> TypeScheme:
    return TypeScheme(frozenset(free_type_vars(t) - free_type_vars(env)),
                      frozenset(free_topo_vars(t) - free_topo_vars(env)), t)


@dataclass
class FreshSupply:
    next_tvar: int = 0
    next_rvar: int = 0

    def tvar(self) -> TypeVar:
        v = TypeVar(self.next_tvar)
        self.next_tvar += 1
        return v

    def rvar(self) -> TopoVar:
        v = TopoVar(self.next_rvar)
        self.next_rvar += 1
        return v


def instantiate(s: TypeScheme, fresh: FreshSupply) -> Type:
    if not s.tvars and not s.rvars:
        return s.body
    sub = Substitution({a: fresh.tvar() for a in sorted(s.tvars)},
                       {r: fresh.rvar() for r in sorted(s.rvars)})
    return sub.apply(s.body)


def scheme(t: Type) -> TypeScheme:
    """Close ``t`` over all of its variables (used for the constant table)."""
    return generalize(t, TypeEnvironment())


# ---------------------------------------------------------------------------
# Canonical renaming, alpha-equivalence and instance matching

def canonical(t: Type) -> Type:
    """Rename variables by first occurrence (left to right), each sort from 0."""
    tnames: dict[int, int] = {}
    rnames: dict[int, int] = {}

    def go(t: Type) -> Type:
        if isinstance(t, TypeVar):
            return TypeVar(tnames.setdefault(t.id, len(tnames)))
        if isinstance(t, Base):
            return t
        if isinstance(t, Arrow):
            a = go(t.arg)
            return Arrow(a, go(t.res))
        if isinstance(t, Product):
            a = go(t.first)
            return Product(a, go(t.second))
        c = go(t.content)
        r = t.topo
        if isinstance(r, TopoVar):
            r = TopoVar(rnames.setdefault(r.id, len(rnames)))
        return Coll(c, r)

    return go(t)


def alpha_equivalent(a: Type, b: Type) -> bool:
    return canonical(a) == canonical(b)


class MatchFailure(Exception):
    """Raised by :func:`match_type`; ``topology`` tells which sort clashed."""

    def __init__(self, message: str, topology: bool = False):
        super().__init__(message)
        self.topology = topology


def match_type(pattern: Type, target: Type, tvars: Iterable[int] | None = None,
               rvars: Iterable[int] | None = None) -> Substitution:
    """One-way matching: find ``s`` over the given variables with ``s(pattern) == target``.

    ``None`` for ``tvars``/``rvars`` means every variable of that sort in
    ``pattern`` may be bound.  Variables of ``target`` are rigid.
    """
    tset = None if tvars is None else set(tvars)
    rset = None if rvars is None else set(rvars)
    tmap: dict[int, Type] = {}
    rmap: dict[int, Topology] = {}

    def topo(p: Topology, r: Topology) -> None:
        if isinstance(p, TopoVar) and (rset is None or p.id in rset):
            bound = rmap.setdefault(p.id, r)
            if bound != r:
                raise MatchFailure(f"{show_topo(bound)} vs {show_topo(r)}", topology=True)
        elif p != r:
            raise MatchFailure(f"{show_topo(p)} vs {show_topo(r)}", topology=True)

    def go(p: Type, t: Type) -> None:
        if isinstance(p, TypeVar) and (tset is None or p.id in tset):
            bound = tmap.setdefault(p.id, t)
            if bound != t:
                raise MatchFailure(f"{show_type(bound)} vs {show_type(t)}")
        elif isinstance(p, Arrow) and isinstance(t, Arrow):
            go(p.arg, t.arg)
            go(p.res, t.res)
        elif isinstance(p, Product) and isinstance(t, Product):
            go(p.first, t.first)
            go(p.second, t.second)
        elif isinstance(p, Coll) and isinstance(t, Coll):
            topo(p.topo, t.topo)
            go(p.content, t.content)
        elif p != t:
            raise MatchFailure(f"{show_type(p)} vs {show_type(t)}")

    go(pattern, target)
    return Substitution(tmap, rmap)


def is_instance(s: TypeScheme, t: Type) -> bool:
    try:
        match_type(s.body, t, s.tvars, s.rvars)
    except MatchFailure:
        return False
    return True


# ---------------------------------------------------------------------------
# Printing

_TOPO_LETTERS = "tuvwxyzsrqponmlkjihgfedcba"


def _letters(i: int, alphabet: str) -> str:
    n = len(alphabet)
    return alphabet[i % n] + (str(i // n) if i >= n else "")


def show_type(t: Type, names: tuple[dict, dict] | None = None) -> str:
    """Print with variables named by first occurrence: ``'a, 'b`` and ``!t, !u``."""
    tnames, rnames = names if names is not None else ({}, {})

    def tv(i: int) -> str:
        if i not in tnames:
            tnames[i] = "'" + _letters(len(tnames), "abcdefghijklmnopqrstuvwxyz")
        return tnames[i]

    def rv(r: Topology) -> str:
        if isinstance(r, BaseTopo):
            return r.name
        if r.id not in rnames:
            rnames[r.id] = "!" + _letters(len(rnames), _TOPO_LETTERS)
        return rnames[r.id]

    def go(t: Type, ctx: int) -> str:
        # ctx: 0 top/arrow result, 1 arrow argument, 2 product component
        if isinstance(t, Base):
            return t.name
        if isinstance(t, TypeVar):
            return tv(t.id)
        if isinstance(t, Coll):
            c = go(t.content, 0)
            return f"[{c}]{rv(t.topo)}"
        if isinstance(t, Arrow):
            a = go(t.arg, 1)
            s = f"{a} -> {go(t.res, 0)}"
            return f"({s})" if ctx >= 1 else s
        a = go(t.first, 2)
        s = f"{a} * {go(t.second, 2)}"
        return f"({s})" if ctx >= 2 else s

    return go(t, 0)


def show_topo(r: Topology) -> str:
    return r.name if isinstance(r, BaseTopo) else f"!{r.id}"


def show_scheme(s: TypeScheme) -> str:
    return show_type(s.body)
