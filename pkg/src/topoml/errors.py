"""Exception hierarchy shared by the front end, the type checker and the runtime."""

from __future__ import annotations


class TopoMLError(Exception):
    """Base class; ``loc`` is a ``(line, column)`` pair when known."""

    def __init__(self, message: str, loc: tuple[int, int] | None = None):
        super().__init__(message)
        self.message = message
        self.loc = loc

    def __str__(self) -> str:
        if self.loc is None:
            return self.message
        return f"{self.loc[0]}:{self.loc[1]}: {self.message}"


# -- front end ---------------------------------------------------------------

class ParseError(TopoMLError):
    pass


# -- typing ------------------------------------------------------------------

class TypeInferenceError(TopoMLError):
    pass


class UnifyMismatch(TypeInferenceError):
    pass


class OccursCheck(TypeInferenceError):
    pass


class TopoMismatch(TypeInferenceError):
    pass


class UnboundIdentifier(TypeInferenceError):
    pass


class UnknownConstant(TypeInferenceError):
    pass


# -- runtime -----------------------------------------------------------------

class EvalError(TopoMLError):
    pass


class DivisionByZero(EvalError):
    pass


class EmptyCollection(EvalError):
    pass


class StructuralError(EvalError):
    pass


class FixpointDivergence(EvalError):
    pass


class NoNeighbor(EvalError):
    pass


class PositionalArgNotPatternVar(EvalError):
    pass


class DirectionTopologyMismatch(EvalError):
    pass


class InvalidPosition(EvalError):
    pass


class GridUnsupportedOp(EvalError):
    pass


class IncomparableValue(EvalError):
    pass
