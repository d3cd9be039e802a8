"""What goes wrong, and when it is caught.

Type errors are found before anything runs.  A grid cannot change shape, but
that is only noticed while rewriting.

    python3 demos/04_errors.py
"""

from topoml import Interpreter, TopoMLError, infer, parse_expr
from topoml.cli import format_error

PROGRAMS = [
    ("rule body is not a sequence", "(trans [ x => x ]) (1::2::empty_seq)"),
    ("grid pattern used on a sequence",
     "(trans [ x |north> y => [x] ; x => [x] ]) (1::2::empty_seq)"),
    ("self-application", "fun x -> x x"),
    ("left on a variable that is not from a pattern", "fun y -> left y"),
    ("grid grows", "(trans [ x, y => x :: y :: y :: empty_seq ; x => [x] ]) "
                   "(grid_from_rows ((1::2::empty_seq)::empty_seq))"),
    ("empty collection", "oneof empty_set"),
]

for label, src in PROGRAMS:
    try:
        e = parse_expr(src)
        infer(e)
        Interpreter().eval(e)
    except TopoMLError as exc:
        print(f"{label}\n  {format_error(exc)}")
