import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import random_type
from topoml.types import (BOOL, INT, SEQ, SET, Arrow, Coll, FreshSupply, MatchFailure, Product,
                          Substitution, TopoVar, TypeEnvironment, TypeScheme, TypeVar,
                          alpha_equivalent, canonical, fn, free_topo_vars, free_type_vars,
                          generalize, instantiate, is_instance, match_type, show_type)

a, b, c = TypeVar(0), TypeVar(1), TypeVar(2)
r, s = TopoVar(0), TopoVar(1)

types = st.builds(lambda seed: random_type(random.Random(seed), 4), st.integers(0, 10**9))


class TestPrinting:
    @pytest.mark.parametrize("t, text", [
        (fn(Coll(a, r), Coll(a, r)), "['a]!t -> ['a]!t"),
        (fn(fn(a, b), Coll(a, r), Coll(b, r)), "('a -> 'b) -> ['a]!t -> ['b]!t"),
        (fn(Coll(INT, SEQ), INT), "[int]seq -> int"),
        (Product(INT, Product(BOOL, a)), "int * (bool * 'a)"),
        (Coll(Coll(a, s), r), "[['a]!t]!u"),
        (Arrow(Product(a, b), a), "'a * 'b -> 'a"),
    ])
    def test_show(self, t, text):
        assert show_type(t) == text

    def test_names_follow_first_occurrence(self):
        assert show_type(fn(TypeVar(9), TypeVar(3))) == "'a -> 'b"


class TestFreeVariables:
    def test_sorts_are_separate(self):
        t = fn(Coll(a, r), Coll(b, SET))
        assert free_type_vars(t) == {0, 1}
        assert free_topo_vars(t) == {0}

    def test_scheme_binds(self):
        sigma = TypeScheme(frozenset({0}), frozenset({0}), fn(Coll(a, r), b))
        assert free_type_vars(sigma) == {1}
        assert free_topo_vars(sigma) == set()

    def test_environment(self):
        env = TypeEnvironment(x=TypeScheme.mono(Coll(a, s)))
        assert free_type_vars(env) == {0} and free_topo_vars(env) == {1}


class TestSubstitution:
    def test_apply_both_sorts(self):
        sub = Substitution({0: INT}, {0: SEQ})
        assert sub(fn(Coll(a, r), b)) == fn(Coll(INT, SEQ), b)

    def test_compose_applies_inner_first(self):
        inner = Substitution({0: b})
        outer = Substitution({1: INT})
        both = outer.compose(inner)
        assert both(a) == INT and both(b) == INT

    def test_scheme_respects_binders(self):
        sigma = TypeScheme(frozenset({0}), frozenset(), fn(a, b))
        got = Substitution({0: INT, 1: BOOL}).apply_scheme(sigma)
        assert got.body == fn(a, BOOL)

    @settings(max_examples=200, deadline=None)
    @given(types, st.integers(0, 10**6))
    def test_compose_is_sequential_application(self, t, seed):
        rnd = random.Random(seed)
        s1 = Substitution({i: random_type(rnd, 2) for i in range(3) if rnd.random() < 0.5},
                          {i: SEQ for i in range(2) if rnd.random() < 0.5})
        s2 = Substitution({i: random_type(rnd, 2) for i in range(3) if rnd.random() < 0.5},
                          {i: SET for i in range(2) if rnd.random() < 0.5})
        assert s2.compose(s1)(t) == s2(s1(t))


class TestSchemes:
    def test_generalize_skips_environment_variables(self):
        env = TypeEnvironment(x=TypeScheme.mono(a))
        sigma = generalize(fn(a, Coll(b, r)), env)
        assert sigma.tvars == {1} and sigma.rvars == {0}

    def test_instantiate_is_fresh(self):
        sigma = TypeScheme(frozenset({0}), frozenset({0}), fn(Coll(a, r), a))
        supply = FreshSupply(10, 10)
        t1, t2 = instantiate(sigma, supply), instantiate(sigma, supply)
        assert t1 != t2 and alpha_equivalent(t1, t2)
        assert free_type_vars(t1).isdisjoint({0})

    def test_instance_relation(self):
        poly = TypeScheme(frozenset({0}), frozenset({0}), fn(Coll(a, r), Coll(a, r)))
        assert is_instance(poly, fn(Coll(INT, SEQ), Coll(INT, SEQ)))
        assert not is_instance(poly, fn(Coll(INT, SEQ), Coll(INT, SET)))
        mono = TypeScheme.mono(fn(Coll(INT, SEQ), Coll(INT, SEQ)))
        assert not is_instance(mono, fn(Coll(INT, r), Coll(INT, r)))


class TestCanonical:
    @settings(max_examples=200, deadline=None)
    @given(types)
    def test_idempotent(self, t):
        assert canonical(canonical(t)) == canonical(t)

    @settings(max_examples=200, deadline=None)
    @given(types)
    def test_renaming_invariant(self, t):
        renamed = Substitution({i: TypeVar(i + 40) for i in range(3)},
                               {i: TopoVar(i + 40) for i in range(2)})(t)
        assert alpha_equivalent(t, renamed)

    def test_not_equivalent_when_sharing_differs(self):
        assert not alpha_equivalent(fn(a, a), fn(a, b))
        assert not alpha_equivalent(fn(Coll(a, r), Coll(a, r)), fn(Coll(a, r), Coll(a, s)))


class TestMatch:
    def test_one_way(self):
        sub = match_type(fn(a, Coll(b, r)), fn(INT, Coll(BOOL, SEQ)))
        assert sub(fn(a, Coll(b, r))) == fn(INT, Coll(BOOL, SEQ))
        with pytest.raises(MatchFailure):
            match_type(fn(INT, a), fn(a, a))

    def test_consistent_bindings(self):
        with pytest.raises(MatchFailure):
            match_type(fn(a, a), fn(INT, BOOL))

    def test_topology_failure_is_flagged(self):
        with pytest.raises(MatchFailure) as info:
            match_type(Coll(a, SEQ), Coll(a, SET))
        assert info.value.topology
