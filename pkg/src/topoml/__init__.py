"""A mini-ML with polytypic transformations over topological collections.

Typical use::

    from topoml import parse_expr, infer, show_type, Interpreter, show_value

    e = parse_expr("fixpoint (trans [x, y/(y<x) => y :: x :: empty_seq ; x => [x]])")
"""

from .collection import Collection, show_value, value_equal
from .errors import (EvalError, OccursCheck, ParseError, StructuralError, TopoMismatch,
                     TopoMLError, TypeInferenceError, UnifyMismatch)
from .evaluator import Interpreter, eval_expr
from .infer import check_type, infer, infer_program, infer_scheme, verify_type
from .syntax import parse_expr, parse_pattern, parse_program, pretty
from .transform import Strategy, apply_transformation, match_rule, select_occurrences
from .types import TypeScheme, alpha_equivalent, show_scheme, show_type
from .unify import mgu, mgu_r, unify

__all__ = [
    "Collection", "show_value", "value_equal",
    "EvalError", "OccursCheck", "ParseError", "StructuralError", "TopoMismatch",
    "TopoMLError", "TypeInferenceError", "UnifyMismatch",
    "Interpreter", "eval_expr",
    "check_type", "infer", "infer_program", "infer_scheme", "verify_type",
    "parse_expr", "parse_pattern", "parse_program", "pretty",
    "Strategy", "apply_transformation", "match_rule", "select_occurrences",
    "TypeScheme", "alpha_equivalent", "show_scheme", "show_type",
    "mgu", "mgu_r", "unify",
]
