"""Which transformations work on every topology, and how the types say so.

A transformation that never looks at the shape of its argument gets a type
with a topology variable (``!t``).  One that asks for a left neighbour is
pinned to sequences.

    python3 demos/01_polytypic_types.py
"""

from topoml import Interpreter, TopoMismatch, infer, parse_expr, show_type, show_value, verify_type
from topoml.collection import Collection
from topoml.types import INT, Coll, TopoVar, fn

EXAMPLES = {
    "identity": "trans [ x => [x] ]",
    "map": "fun f -> trans [ x => [f x] ]",
    "split larger": "trans [ x, y/x>y => x :: y :: (x-y) :: empty_seq ; x => [x] ]",
    "add left": "trans [ x/(not(is_left x self)) => [x+(left x self)] ; x=>[x] ]",
    "bead fall": "trans [ x/x=false |north> y/y=true => y::x::empty_seq ; x=>[x] ]",
}

for label, src in EXAMPLES.items():
    print(f"{label:>13} : {show_type(infer(parse_expr(src)))}")

# Same term, three topologies.
interp = Interpreter()
split = interp.eval(parse_expr(EXAMPLES["split larger"]))
for coll in (Collection.seq([5, 2]), Collection.set([5, 2]), Collection.bag([5, 2, 2])):
    print(f"split larger {show_value(coll)} = {show_value(interp.apply(split, coll))}")

# Claiming that "add left" is polytypic is rejected.
t = TopoVar(0)
try:
    verify_type(None, parse_expr(EXAMPLES["add left"]), fn(Coll(INT, t), Coll(INT, t)))
except TopoMismatch as exc:
    print("rejected:", exc.message)
