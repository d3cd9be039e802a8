"""Most general unifiers over types and topologies."""

from __future__ import annotations

from typing import Iterable

from .errors import OccursCheck, TopoMismatch, UnifyMismatch
from .types import (Arrow, Coll, Product, Substitution, TopoVar, Topology, Type, TypeVar,
                    free_type_vars, show_type)

Constraint = tuple[Type, Type]


def mgu_r(lhs: Topology, rhs: Topology) -> Substitution:
    """Unify two topologies.  Topologies are flat, so no occurs check is needed."""
    if lhs == rhs:
        return Substitution()
    if isinstance(lhs, TopoVar):
        return Substitution(rmap={lhs.id: rhs})
    if isinstance(rhs, TopoVar):
        return Substitution(rmap={rhs.id: lhs})
    raise TopoMismatch(f"cannot unify topology {lhs.name} with {rhs.name}")


def _bind(var: TypeVar, t: Type) -> Substitution:
    if var.id in free_type_vars(t):
        raise OccursCheck(f"occurs check: {_pair(var, t)}")
    return Substitution({var.id: t})


def _pair(a: Type, b: Type) -> str:
    names: tuple[dict, dict] = ({}, {})
    return f"{show_type(a, names)} = {show_type(b, names)}"


def mgu(constraints: Iterable[Constraint]) -> Substitution:
    """Solve a set of type equations.

    Raises :class:`UnifyMismatch` on a constructor clash,
    :class:`OccursCheck` on a cyclic binding and :class:`TopoMismatch` when
    two distinct base topologies meet.
    """
    pending = list(constraints)
    pending.reverse()
    result = Substitution()
    while pending:
        lhs, rhs = pending.pop()
        if lhs == rhs:
            continue
        if isinstance(lhs, TypeVar) or isinstance(rhs, TypeVar):
            var, other = (lhs, rhs) if isinstance(lhs, TypeVar) else (rhs, lhs)
            step = _bind(var, other)
        elif isinstance(lhs, Arrow) and isinstance(rhs, Arrow):
            pending.append((lhs.res, rhs.res))
            pending.append((lhs.arg, rhs.arg))
            continue
        elif isinstance(lhs, Product) and isinstance(rhs, Product):
            pending.append((lhs.second, rhs.second))
            pending.append((lhs.first, rhs.first))
            continue
        elif isinstance(lhs, Coll) and isinstance(rhs, Coll):
            try:
                step = mgu_r(lhs.topo, rhs.topo)
            except TopoMismatch as exc:
                raise TopoMismatch(f"{exc.message} in {_pair(lhs, rhs)}") from None
            pending.append((step.apply(lhs.content), step.apply(rhs.content)))
        else:
            raise UnifyMismatch(f"cannot unify {_pair(lhs, rhs)}")
        pending = [(step.apply(a), step.apply(b)) for a, b in pending]
        result = step.compose(result)
    return result


def unify(a: Type, b: Type) -> Substitution:
    return mgu([(a, b)])
