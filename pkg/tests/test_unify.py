import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import punch_holes, random_type
from topoml.errors import OccursCheck, TopoMismatch, UnifyMismatch
from topoml.types import (BAG, BOOL, GRID, INT, SEQ, SET, Arrow, Coll, Product, Substitution,
                          TopoVar, TypeVar, alpha_equivalent, fn, free_topo_vars, free_type_vars,
                          match_type)
from topoml.unify import mgu, mgu_r, unify

a, b = TypeVar(0), TypeVar(1)
r, s = TopoVar(0), TopoVar(1)


class TestTopologies:
    def test_equal(self):
        assert mgu_r(SEQ, SEQ) == Substitution()
        assert mgu_r(r, r) == Substitution()

    def test_variable_binds_either_side(self):
        assert mgu_r(r, GRID) == Substitution(rmap={0: GRID})
        assert mgu_r(BAG, s) == Substitution(rmap={1: BAG})

    def test_two_variables(self):
        sub = mgu_r(r, s)
        assert sub.topo(r) == sub.topo(s)

    @pytest.mark.parametrize("x, y", [(SEQ, SET), (BAG, GRID), (SET, BAG)])
    def test_distinct_bases(self, x, y):
        with pytest.raises(TopoMismatch):
            mgu_r(x, y)


class TestTypes:
    def test_collection_unifies_topology_then_content(self):
        sub = unify(Coll(a, r), Coll(INT, SEQ))
        assert sub(a) == INT and sub.topo(r) == SEQ

    def test_topology_mismatch_names_the_pair(self):
        with pytest.raises(TopoMismatch) as info:
            unify(Coll(INT, SET), Coll(INT, SEQ))
        assert "[int]set = [int]seq" in info.value.message

    def test_constructor_clash(self):
        with pytest.raises(UnifyMismatch):
            unify(fn(INT, BOOL), Product(INT, BOOL))
        with pytest.raises(UnifyMismatch):
            unify(Coll(a, r), INT)

    def test_occurs_check(self):
        with pytest.raises(OccursCheck) as info:
            unify(a, Arrow(a, a))
        assert info.value.message == "occurs check: 'a = 'a -> 'a"
        with pytest.raises(OccursCheck):
            unify(a, Coll(a, r))

    def test_shared_topology_variable_propagates(self):
        sub = mgu([(fn(Coll(a, r), Coll(b, r)), fn(Coll(INT, SEQ), Coll(BOOL, s)))])
        assert sub.topo(s) == SEQ

    def test_mismatch_discovered_after_binding(self):
        with pytest.raises(TopoMismatch):
            mgu([(Coll(a, r), Coll(INT, SEQ)), (Coll(b, r), Coll(INT, SET))])

    def test_result_is_idempotent(self):
        sub = mgu([(a, fn(b, b)), (b, Coll(INT, r))])
        for v in (a, b):
            assert sub(sub(v)) == sub(v)


def _unifiable(seed):
    rnd = random.Random(seed)
    holes, rholes = {}, {}
    base = random_type(rnd, 4)
    nv, nr = [50], [50]
    lhs = punch_holes(rnd, base, nv, nr, holes, rholes)
    rhs = punch_holes(rnd, base, nv, nr, holes, rholes)
    return lhs, rhs, Substitution(holes, rholes)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10**9))
def test_unifier_is_sound_and_most_general(seed):
    lhs, rhs, known = _unifiable(seed)
    sub = unify(lhs, rhs)
    assert sub(lhs) == sub(rhs)
    # the known unifier is an instance of the computed one
    match_type(sub(lhs), known(lhs))


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10**9))
def test_domain_disjoint_from_range(seed):
    lhs, rhs, _ = _unifiable(seed)
    sub = unify(lhs, rhs)
    rng_t = set().union(*(free_type_vars(t) for t in sub.tmap.values()))
    rng_r = {v.id for v in sub.rmap.values() if isinstance(v, TopoVar)}
    rng_r |= set().union(*(free_topo_vars(t) for t in sub.tmap.values()))
    assert rng_t.isdisjoint(sub.tmap)
    assert rng_r.isdisjoint(sub.rmap)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10**9), st.integers(0, 10**9))
def test_failure_is_symmetric(s1, s2):
    rnd1, rnd2 = random.Random(s1), random.Random(s2)
    x, y = random_type(rnd1, 3), random_type(rnd2, 3)

    def outcome(p, q):
        try:
            return unify(p, q)(p)
        except (UnifyMismatch, OccursCheck, TopoMismatch) as exc:
            return type(exc)

    first, second = outcome(x, y), outcome(y, x)
    if isinstance(first, type) or isinstance(second, type):
        # the error class may differ when the pair has two defects
        assert isinstance(first, type) and isinstance(second, type)
    else:
        assert alpha_equivalent(first, second)
