"""Command-line front end: ``topoml run``, ``topoml type`` and ``topoml repl``.

Exit status: 0 on success, 1 on a syntax or type error, 2 on a runtime error.
"""

from __future__ import annotations

import argparse
import sys
from typing import TextIO

from .collection import show_value
from .errors import EvalError, ParseError, TopoMLError, TypeInferenceError
from .evaluator import DEFAULT_MAX_STEPS, Interpreter
from .infer import infer_item, infer_scheme
from .syntax import Binding, Item, parse_expr, parse_program
from .transform import Strategy
from .types import FreshSupply, TypeEnvironment, TypeScheme, show_type

EXIT_OK, EXIT_STATIC, EXIT_RUNTIME = 0, 1, 2


def _kind(exc: TopoMLError) -> str:
    if isinstance(exc, ParseError):
        return "syntax error"
    if isinstance(exc, TypeInferenceError):
        return f"type error ({type(exc).__name__})"
    return f"runtime error ({type(exc).__name__})"


def format_error(exc: TopoMLError, filename: str | None = None) -> str:
    where = ""
    if exc.loc is not None:
        where = f"{exc.loc[0]}:{exc.loc[1]}: "
    if filename:
        where = f"{filename}:{where}"
    return f"{where}{_kind(exc)}: {exc.message}"


class Session:
    """Type and runtime environments accumulated over a sequence of items."""

    def __init__(self, strategy: Strategy | None = None, max_steps: int = DEFAULT_MAX_STEPS):
        self.types = TypeEnvironment()
        self.supply = FreshSupply()
        self.interp = Interpreter(strategy or Strategy(), max_steps)

    def check(self, item: Item) -> TypeScheme:
        sigma, self.types = infer_item(item, self.types, self.supply)
        return sigma

    def run(self, item: Item):
        return self.interp.run_item(item)

    def type_of(self, source: str) -> TypeScheme:
        return infer_scheme(parse_expr(source), self.types)


def _strategy(args: argparse.Namespace) -> Strategy:
    return Strategy(args.strategy, args.seed)


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def cmd_type(path: str, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    try:
        items = parse_program(_read(path))
        session = Session()
        for item in items:
            sigma = session.check(item)
            name = item.name if isinstance(item, Binding) else "-"
            print(f"{name} : {show_type(sigma.body)}", file=out)
    except TopoMLError as exc:
        print(format_error(exc, path), file=err)
        return EXIT_STATIC
    return EXIT_OK


def cmd_run(path: str, strategy: Strategy | None = None, max_steps: int = DEFAULT_MAX_STEPS,
            out: TextIO | None = None, err: TextIO | None = None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    session = Session(strategy, max_steps)
    try:
        items = parse_program(_read(path))
        schemes = [session.check(item) for item in items]
    except TopoMLError as exc:
        print(format_error(exc, path), file=err)
        return EXIT_STATIC
    try:
        for item, sigma in zip(items, schemes):
            value = session.run(item)
            if not isinstance(item, Binding):
                print(f"- : {show_type(sigma.body)} = {show_value(value)}", file=out)
    except EvalError as exc:
        print(format_error(exc, path), file=err)
        return EXIT_RUNTIME
    except RecursionError:
        print(f"{path}: runtime error: recursion too deep", file=err)
        return EXIT_RUNTIME
    return EXIT_OK


def _eval_source(session: Session, source: str, out: TextIO, err: TextIO) -> None:
    try:
        items = parse_program(source)
    except TopoMLError as exc:
        print(format_error(exc), file=err)
        return
    for item in items:
        saved = session.types
        try:
            sigma = session.check(item)
            value = session.run(item)
        except (TopoMLError, RecursionError) as exc:
            # keep the type and runtime environments in step
            session.types = saved
            if isinstance(exc, RecursionError):
                print("runtime error: recursion too deep", file=err)
            else:
                print(format_error(exc), file=err)
            return
        name = item.name if isinstance(item, Binding) else "-"
        print(f"{name} : {show_type(sigma.body)} = {show_value(value)}", file=out)


def repl(strategy: Strategy | None = None, max_steps: int = DEFAULT_MAX_STEPS,
         inp: TextIO | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    inp, out, err = inp or sys.stdin, out or sys.stdout, err or sys.stderr
    session = Session(strategy, max_steps)
    interactive = inp.isatty()
    buffer: list[str] = []
    type_only = False
    while True:
        if interactive:
            out.write("  " if buffer else "# ")
            out.flush()
        line = inp.readline()
        if not line:
            break
        if not buffer and line.lstrip().startswith(":"):
            cmd, _, rest = line.strip().partition(" ")
            cmd = cmd.removesuffix(";;")
            if cmd in (":quit", ":q"):
                break
            if cmd == ":load":
                path = rest.strip().removesuffix(";;").strip()
                try:
                    source = _read(path)
                except OSError as exc:
                    print(f"cannot read {path}: {exc.strerror}", file=err)
                    continue
                _eval_source(session, source, out, err)
                continue
            if cmd != ":t":
                print(f"unknown command {cmd}", file=err)
                continue
            type_only, line = True, rest + "\n"
        buffer.append(line)
        text = "".join(buffer)
        if ";;" not in text:
            continue
        buffer.clear()
        if type_only:
            type_only = False
            try:
                print(show_type(session.type_of(text).body), file=out)
            except TopoMLError as exc:
                print(format_error(exc), file=err)
            continue
        _eval_source(session, text, out, err)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="topoml",
                                     description="mini-ML with topological collections")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--strategy", choices=("priority", "random"), default="priority")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS,
                        help="fixpoint iteration budget")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", parents=[common], help="type-check then evaluate a program")
    run.add_argument("file")
    run.add_argument("--type-only", action="store_true", help="same as the 'type' command")
    typ = sub.add_parser("type", help="print principal types without evaluating")
    typ.add_argument("file")
    sub.add_parser("repl", parents=[common], help="interactive loop")
    return parser


def main(argv: list[str] | None = None) -> int:
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 10000))
    args = build_parser().parse_args(argv)
    if args.command == "type" or (args.command == "run" and args.type_only):
        return cmd_type(args.file)
    if args.command == "run":
        return cmd_run(args.file, _strategy(args), args.max_steps)
    return repl(_strategy(args), args.max_steps)


if __name__ == "__main__":
    sys.exit(main())
