"""Three sorts that are just local rewrites iterated to a fixpoint.

    python3 demos/02_sorting_by_rewriting.py
"""

import random

from topoml import Interpreter, parse_expr, show_value
from topoml.collection import Collection

interp = Interpreter()


def fix(src: str, coll: Collection) -> Collection:
    step = interp.eval(parse_expr(src))
    return interp.apply(interp.apply(interp.eval(parse_expr("fixpoint")), step), coll)


# Exchange sort: swap a pair of neighbours when the second is smaller.
swap = "trans [ x, y/(y<x) => y :: x :: empty_seq ; x => [x] ]"
xs = random.Random(1).sample(range(20), 12)
print("input  ", xs)
print("sorted ", show_value(fix(swap, Collection.seq(xs))))

# Sieve: in a set every element neighbours every other one, so "x next to a
# multiple of x" means "x and any multiple of x".
sieve = "trans [ x, y/(y mod x = 0) => [x] ; x => [x] ]"
print("primes ", show_value(fix(sieve, Collection.set(range(2, 60)))))

# Bead sort: a bead (true) falls into an empty cell (false) below it.
fall = "trans [ x/x=false |north> y/y=true => y::x::empty_seq ; x=>[x] ]"
numbers = [3, 2, 4, 2]
abacus = Collection.grid([[c < n for c in range(max(numbers))] for n in numbers])
settled = fix(fall, abacus)


def draw(row) -> str:
    return "".join("o" if bead else "." for bead in row)


for before, after in zip(abacus.rows(), settled.rows()):
    print(f"  {draw(before)}   {draw(after)}")
print("row counts, bottom up:", [sum(r) for r in reversed(settled.rows())])
