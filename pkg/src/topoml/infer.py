"""Algorithm W extended with topology variables and a case for ``trans``.

The running substitution is threaded through an :class:`InferState`, as in
the imperative presentation of Damas-Milner: every unification step
composes its most general unifier onto the current substitution.

Transformation typing: all pattern variables of a rule share the content
type ``a`` of the transformed collection (star variables get ``[a]seq``),
``self`` is ``[a]t``, every guard is ``bool`` and every rule body is
``[b]seq``; the transformation then has type ``[a]t -> [b]t``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (TopoMismatch, TypeInferenceError, UnboundIdentifier, UnifyMismatch,
                     UnknownConstant)
from .syntax import (App, Binding, Const, Expr, Fun, GRID_DIRECTIONS, Guarded, Item,
                     Let, Pair, SEQ_DIRECTIONS, Star, Trans, Var, COMMA, pretty)
from .types import (BAG, BOOL, FLOAT, GRID, INT, SEQ, SET, STRING, Arrow, Coll, FreshSupply,
                    MatchFailure, Product, Substitution, TopoVar, Type, TypeEnvironment,
                    TypeScheme, TypeVar, fn, generalize, instantiate, is_instance, match_type, scheme)
from .unify import mgu


def _build_constants() -> dict[str, TypeScheme]:
    a = TypeVar(0)
    t = TopoVar(0)
    coll = Coll(a, t)
    table: dict[str, Type] = {
        "::": fn(a, coll, coll),
        "oneof": fn(coll, a),
        "rest": fn(coll, coll),
        "size": fn(coll, INT),
        "empty_seq": Coll(a, SEQ),
        "empty_set": Coll(a, SET),
        "empty_bag": Coll(a, BAG),
        "fixpoint": fn(fn(coll, coll), coll, coll),
        "grid_from_rows": fn(Coll(Coll(a, SEQ), SEQ), Coll(a, GRID)),
        "rows": fn(Coll(a, GRID), Coll(Coll(a, SEQ), SEQ)),
        "not": fn(BOOL, BOOL),
        "&&": fn(BOOL, BOOL, BOOL),
        "||": fn(BOOL, BOOL, BOOL),
        "=": fn(a, a, BOOL),
        "<": fn(INT, INT, BOOL),
        ">": fn(INT, INT, BOOL),
    }
    for d in SEQ_DIRECTIONS:
        table[d] = fn(a, Coll(a, SEQ), a)
        table[f"is_{d}"] = fn(a, Coll(a, SEQ), BOOL)
    for d in GRID_DIRECTIONS:
        table[d] = fn(a, Coll(a, GRID), a)
        table[f"is_{d}"] = fn(a, Coll(a, GRID), BOOL)
    for op in ("+", "-", "*", "/", "mod"):
        table[op] = fn(INT, INT, INT)
    for op in ("+.", "-.", "*.", "/."):
        table[op] = fn(FLOAT, FLOAT, FLOAT)
    return {name: scheme(ty) for name, ty in table.items()}


CONSTANTS: dict[str, TypeScheme] = _build_constants()


def tc_lookup(name: str) -> TypeScheme:
    try:
        return CONSTANTS[name]
    except KeyError:
        raise UnknownConstant(f"unknown constant {name!r}") from None


_LITERAL_TYPES = {bool: BOOL, int: INT, float: FLOAT, str: STRING}


@dataclass
class InferState:
    subst: Substitution = field(default_factory=Substitution)
    supply: FreshSupply = field(default_factory=FreshSupply)

    def unify(self, a: Type, b: Type, where: Expr | None = None, context: str = "") -> None:
        try:
            step = mgu([(self.subst.apply(a), self.subst.apply(b))])
        except TypeInferenceError as exc:
            msg = f"{context}: {exc.message}" if context else exc.message
            raise type(exc)(msg, exc.loc or (where.loc if where is not None else None)) from None
        self.subst = step.compose(self.subst)


def infer_w(env: TypeEnvironment, e: Expr, state: InferState) -> Type:
    """Return the type of ``e``; the caller applies ``state.subst`` to it."""
    if isinstance(e, Var):
        if e.name in env:
            return instantiate(env[e.name], state.supply)
        if e.name in CONSTANTS:
            return instantiate(CONSTANTS[e.name], state.supply)
        raise UnboundIdentifier(f"unbound identifier {e.name!r}", e.loc)

    if isinstance(e, Const):
        return _LITERAL_TYPES[type(e.value)]

    if isinstance(e, Pair):
        first = infer_w(env, e.first, state)
        return Product(first, infer_w(env, e.second, state))

    if isinstance(e, Fun):
        alpha = state.supply.tvar()
        body = infer_w(env.extend(e.param, TypeScheme.mono(alpha)), e.body, state)
        return Arrow(alpha, body)

    if isinstance(e, App):
        t_fn = infer_w(env, e.fn, state)
        t_arg = infer_w(env, e.arg, state)
        alpha = state.supply.tvar()
        state.unify(t_fn, Arrow(t_arg, alpha), e, f"in application {_short(e)}")
        return alpha

    if isinstance(e, Let):
        t_bound = infer_w(env, e.bound, state)
        sigma = generalize(state.subst.apply(t_bound), state.subst.apply_env(env))
        return infer_w(env.extend(e.name, sigma), e.body, state)

    if isinstance(e, Trans):
        return _infer_trans(env, e, state)

    raise TypeError(f"not an expression: {e!r}")


def _infer_trans(env: TypeEnvironment, e: Trans, state: InferState) -> Type:
    alpha, beta = state.supply.tvar(), state.supply.tvar()
    theta = state.supply.rvar()
    self_type = Coll(alpha, theta)
    base = env.extend("self", TypeScheme.mono(self_type))
    for rule in e.rules:
        scope = base
        for item in rule.pattern.items:
            if item.link is not None and item.link != COMMA:
                topo = SEQ if item.link in SEQ_DIRECTIONS else GRID
                state.unify(self_type, Coll(alpha, topo), e,
                            f"direction |{item.link}> requires a {topo.name}")
            elem = item.elem
            bound = Coll(alpha, SEQ) if isinstance(elem, Star) else alpha
            scope = scope.extend(elem.name, TypeScheme.mono(bound))
            if isinstance(elem, Guarded):
                t_guard = infer_w(scope, elem.guard, state)
                state.unify(t_guard, BOOL, elem.guard, f"guard of {elem.name!r} must be bool")
        t_body = infer_w(scope, rule.body, state)
        state.unify(t_body, Coll(beta, SEQ), rule.body,
                    f"rule body {_short(rule.body)} must be a sequence")
    return Arrow(self_type, Coll(beta, theta))


def _short(e: Expr, limit: int = 60) -> str:
    try:
        s = pretty(e)
    except ValueError:
        return "<expr>"
    return s if len(s) <= limit else s[:limit - 3] + "..."


# ---------------------------------------------------------------------------
# Front-door helpers

def infer(e: Expr, env: TypeEnvironment | None = None,
          state: InferState | None = None) -> Type:
    """Principal type of ``e`` (the final substitution applied)."""
    env = env if env is not None else TypeEnvironment()
    state = state if state is not None else InferState()
    t = infer_w(env, e, state)
    return state.subst.apply(t)


def infer_scheme(e: Expr, env: TypeEnvironment | None = None,
                 state: InferState | None = None) -> TypeScheme:
    env = env if env is not None else TypeEnvironment()
    state = state if state is not None else InferState()
    t = infer(e, env, state)
    return generalize(t, state.subst.apply_env(env))


def infer_item(item: Item, env: TypeEnvironment,
               supply: FreshSupply | None = None) -> tuple[TypeScheme, TypeEnvironment]:
    """Type one top-level item; bindings extend the returned environment."""
    state = InferState(supply=supply if supply is not None else FreshSupply())
    sigma = infer_scheme(item.expr, env, state)
    if isinstance(item, Binding):
        env = env.extend(item.name, sigma)
    return sigma, env


def infer_program(items: list[Item], env: TypeEnvironment | None = None
                  ) -> tuple[list[TypeScheme], TypeEnvironment]:
    env = env if env is not None else TypeEnvironment()
    supply = FreshSupply()
    out = []
    for item in items:
        sigma, env = infer_item(item, env, supply)
        out.append(sigma)
    return out, env


def verify_type(env: TypeEnvironment | None, e: Expr, claimed: Type) -> None:
    """Raise unless ``claimed`` is an instance of the generalized principal type.

    Variables of ``claimed`` are rigid: ``[int]!t -> [int]!t`` claims the
    transformation works for every topology.
    """
    env = env if env is not None else TypeEnvironment()
    sigma = infer_scheme(e, env)
    try:
        match_type(sigma.body, claimed, sigma.tvars, sigma.rvars)
    except MatchFailure as exc:
        cls = TopoMismatch if exc.topology else UnifyMismatch
        raise cls(f"claimed type is not an instance of the inferred type: {exc}",
                  getattr(e, "loc", None)) from None


def check_type(env: TypeEnvironment | None, e: Expr, claimed: Type) -> bool:
    """Verification mode: does ``e`` have type ``claimed`` under ``env``?"""
    env = env if env is not None else TypeEnvironment()
    return is_instance(infer_scheme(e, env), claimed)
