"""How one application of a transformation chooses what to rewrite.

Rules are tried in order; each rule takes as many non-overlapping
occurrences as it can among the positions left over, and the final
bare-variable rule takes whatever remains.  All replacements then happen at
once.

    python3 demos/03_matching_and_strategies.py
"""

from topoml import Interpreter, Strategy, parse_expr, select_occurrences, show_value
from topoml.collection import Collection


def show_selection(src: str, coll: Collection, strategy: Strategy = Strategy()) -> None:
    interp = Interpreter(strategy)
    rules = parse_expr(src).rules
    env = interp.globals.new_child({"self": coll})
    occs = select_occurrences(interp, coll, rules, env, interp.rng)
    print(f"{src}\n  on {show_value(coll)} [{strategy.kind}]")
    for occ in occs:
        vals = [show_value(coll.value_at(p)) for p in occ.positions]
        print(f"    rule {occ.rule_index}: positions {list(occ.positions)} values {vals}")
    result = interp.apply(interp.eval(parse_expr(src)), coll)
    print(f"  result {show_value(result)}\n")


pairs = "trans [ l, x => (l :: l+x :: empty_seq) ; x=>[x] ]"
show_selection(pairs, Collection.seq([1, 2, 3, 4]))

# A star matches any path; here it grabs everything between two zeros.
between = "trans [ x/(x=0), * as y, z/(z=0) => y ; x => [x] ]"
show_selection(between, Collection.seq([1, 0, 2, 3, 4, 0, 0, 9]))

# On a bag every element neighbours every other one, so the random strategy
# can pair elements differently; a fixed seed always pairs them the same way.
sums = "trans [ x, y => [x + y] ; x => [x] ]"
bag = Collection.bag([1, 2, 3, 4, 5])
for seed in (1, 2, 1):
    show_selection(sums, bag, Strategy("random", seed))
