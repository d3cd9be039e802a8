import pytest

from topoml.collection import Collection, show_value
from topoml.errors import (DivisionByZero, EmptyCollection, EvalError, FixpointDivergence,
                           GridUnsupportedOp, NoNeighbor, PositionalArgNotPatternVar)
from topoml.evaluator import Interpreter, eval_expr
from topoml.syntax import parse_expr, parse_program


def run(src: str, **kw):
    return show_value(eval_expr(parse_expr(src), **kw))


@pytest.mark.parametrize("src, out", [
    ("1 + 2 * 3", "7"),
    ("7 / 2", "3"),
    ("-7 / 2", "-3"),
    ("-7 mod 2", "-1"),
    ("1.5 *. 2.0", "3.0"),
    ("(fun x -> x + 1) 41", "42"),
    ("let f = fun x -> fun y -> x - y in f 10 3", "7"),
    ("let x = 1 in let f = fun y -> x + y in let x = 100 in f 1", "2"),
    ("(1 < 2) && not (2 < 1)", "true"),
    ("1 = 1 || false", "true"),
    ("(1 :: empty_set) = (1 :: 1 :: empty_set)", "true"),
    ("size (1 :: 1 :: empty_bag)", "2"),
    ("oneof (4 :: 5 :: empty_seq)", "4"),
    ("rest (4 :: 5 :: empty_seq)", "(5::empty_seq)"),
    ('("a", true)', '("a", true)'),
    ("rows (grid_from_rows ((1::2::empty_seq)::empty_seq))", "((1::2::empty_seq)::empty_seq)"),
])
def test_core(src, out):
    assert run(src) == out


class TestErrors:
    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            run("1 / 0")
        with pytest.raises(DivisionByZero):
            run("1.0 /. 0.0")

    def test_empty(self):
        with pytest.raises(EmptyCollection):
            run("oneof empty_set")

    def test_grid_cons(self):
        with pytest.raises(GridUnsupportedOp):
            run("1 :: grid_from_rows ((1::empty_seq)::empty_seq)")

    def test_errors_carry_location(self):
        with pytest.raises(DivisionByZero) as info:
            run("1 +\n (2 / 0)")
        assert info.value.loc is not None and info.value.loc[0] == 2

    def test_no_neighbour(self):
        with pytest.raises(NoNeighbor):
            run("(trans [ x => [left x self] ]) (1::empty_seq)")

    def test_positional_on_foreign_collection(self):
        with pytest.raises(PositionalArgNotPatternVar):
            run("(trans [ x => [left x (0::self)] ]) (1::2::empty_seq)")


class TestFixpoint:
    def test_reaches_fixpoint(self):
        assert run("fixpoint (fun c -> c) (1::empty_seq)") == "(1::empty_seq)"

    def test_divergence(self):
        with pytest.raises(FixpointDivergence):
            run("fixpoint (fun c -> 0 :: c) empty_seq", max_steps=50)

    def test_sort(self):
        out = run("fixpoint (trans [ x, y/(y<x) => y::x::empty_seq ; x => [x] ]) "
                  "(3::1::2::empty_seq)")
        assert out == "(1::2::3::empty_seq)"


class TestPositional:
    def test_left_sum(self):
        out = run("(trans [ x/(not(is_left x self)) => [x+(left x self)] ; x=>[x] ]) "
                  "(1::2::3::4::empty_seq)")
        assert out == "(1::3::5::7::empty_seq)"

    def test_grid_lookup(self):
        src = ("(trans [ x/(not (is_south x self)) => [south x self] ; x => [x] ]) "
               "(grid_from_rows ((1::2::empty_seq)::(3::4::empty_seq)::empty_seq))")
        assert run(src) == "grid(2 x 2)[ [3 4] [3 4] ]"

    def test_pattern_variable_value_is_plain(self):
        assert run("(trans [ x => [x * 10] ]) (1::2::empty_bag)") == "{10, 20}bag"


def test_program_bindings_persist():
    interp = Interpreter()
    items = parse_program("let double = fun x -> x * 2;; double 21;;")
    values = [interp.run_item(item) for item in items]
    assert values[1] == 42


def test_applying_a_non_function():
    with pytest.raises(EvalError):
        Interpreter().apply(3, 4)


def test_transformation_needs_a_collection():
    interp = Interpreter()
    t = interp.eval(parse_expr("trans [ x => [x] ]"))
    with pytest.raises(EvalError):
        interp.apply(t, 3)
    assert interp.apply(t, Collection.set([2])) == Collection.set([2])
