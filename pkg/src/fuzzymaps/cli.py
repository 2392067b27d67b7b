"""Command line front end.

Exit codes (stable, scripted against):
    0  success
    2  unreadable or malformed input (files or command line)
    3  validation failure (class rules, domains, bad initial vectors)
    4  shape or component-count mismatch
    5  iteration cap exceeded
    6  enumeration budget exceeded
    7  any other engine error
"""

from __future__ import annotations

import argparse
import sys

from .errors import (
    BudgetExceeded,
    ClassViolation,
    ComponentCountMismatch,
    DomainError,
    EmptyUnion,
    FuzzymapsError,
    InvalidInput,
    IterationCapExceeded,
    ModeMismatch,
    NonCMComponent,
    NonRMComponent,
    NonSquareCM,
    NonzeroDiagonal,
    ParseError,
    ShapeMismatch,
    WrongEntryPoint,
)
from .fileformats import (
    parse_matrix_text,
    parse_model_structure,
    parse_model_text,
    parse_vector_text,
    serialize_matrix,
)
from .fre import failing_columns, minimal_solutions_bruteforce, solve_max
from .matrices import (
    elementwise_max,
    elementwise_min,
    mat_add,
    mat_mul,
    maxmin_compose,
    minmax_compose,
    transpose,
)
from .models import class_diagnostics, diagonal_diagnostics, run
from .special import classify, make_special
from .trace import render_trace
from .values import OrderPolicy, render_scalar

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_SHAPE = 4
EXIT_CAP = 5
EXIT_BUDGET = 6
EXIT_OTHER = 7

_VALIDATION_ERRORS = (ClassViolation, NonzeroDiagonal, InvalidInput,
                      NonSquareCM, NonCMComponent, NonRMComponent,
                      WrongEntryPoint, DomainError, ModeMismatch,
                      EmptyUnion)
_SHAPE_ERRORS = (ShapeMismatch, ComponentCountMismatch)


def _exit_code(exc) -> int:
    if isinstance(exc, (ParseError, OSError)):
        return EXIT_PARSE
    if isinstance(exc, _VALIDATION_ERRORS):
        return EXIT_VALIDATION
    if isinstance(exc, _SHAPE_ERRORS):
        return EXIT_SHAPE
    if isinstance(exc, IterationCapExceeded):
        return EXIT_CAP
    if isinstance(exc, BudgetExceeded):
        return EXIT_BUDGET
    return EXIT_OTHER


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def cmd_validate(args) -> int:
    raw = parse_model_structure(_read(args.model))
    print(f"class: {raw.model_class.value}")
    if raw.name:
        print(f"name: {raw.name}")
    print(f"components: {len(raw.components)}")
    for idx, (mat, tag) in enumerate(raw.components):
        print(f"component {idx + 1}: {tag.kind} {tag.algebra} {tag.op} "
              f"{mat.domain.value} {mat.rows}x{mat.cols}")
    problems = []
    try:
        special = make_special(raw.components)
    except FuzzymapsError as exc:
        problems.append(str(exc))
        special = None
    if special is not None:
        print(f"classification: {classify(special)}")
        problems.extend(diagonal_diagnostics(special))
        problems.extend(class_diagnostics(raw.model_class, special))
    if problems:
        for problem in problems:
            print(f"problem: {problem}")
        print("invalid")
        return EXIT_VALIDATION
    print("valid")
    return EXIT_OK


def cmd_run(args) -> int:
    model_file = parse_model_text(_read(args.model))
    x0 = parse_vector_text(_read(args.input))
    policy = OrderPolicy.parse(args.order_policy)
    model = model_file.model
    pattern = run(model, x0, op=args.op, policy=policy,
                  threshold_k=args.threshold_k, max_steps=args.max_steps)
    if args.trace:
        text = render_trace(
            pattern, model.matrix, experts=model.experts, policy=policy,
            threshold_k=args.threshold_k, op=args.op,
            model_class=model.model_class, name=model_file.name)
        with open(args.trace, "w", encoding="utf-8") as handle:
            handle.write(text)
    print(f"classification: {classify(model.matrix)}")
    print(pattern.describe())
    print(f"steps: {pattern.steps}")
    return EXIT_OK


_COMPOSE_OPS = {
    "max": elementwise_max,
    "min": elementwise_min,
    "maxmin": maxmin_compose,
    "minmax": minmax_compose,
    "mul": mat_mul,
    "add": mat_add,
}


def cmd_compose(args) -> int:
    a = parse_matrix_text(_read(args.a))
    b = parse_matrix_text(_read(args.b))
    policy = OrderPolicy.parse(args.order_policy)
    fn = _COMPOSE_OPS[args.op]
    if args.op in ("mul", "add"):
        result = fn(a, b)
    else:
        result = fn(a, b, policy=policy)
    sys.stdout.write(serialize_matrix(result))
    return EXIT_OK


def cmd_fre(args) -> int:
    q = parse_matrix_text(_read(args.matrix))
    r = parse_matrix_text(_read(args.target))
    if r.rows != 1 and r.cols == 1:
        r = transpose(r)  # accept a column file for the target
    solution = solve_max(q, r, neutrosophic=args.neutrosophic)
    p = solution.max_solution
    print("max-solution: " +
          " ".join(render_scalar(v) for v in p.row(0)))
    print(f"solvable: {'yes' if solution.solvable else 'no'}")
    print("residual: " +
          " ".join(render_scalar(v) for v in solution.residual.row(0)))
    if not solution.solvable:
        bad = failing_columns(q, r)
        if bad:
            cols = " ".join(str(k + 1) for k in bad)
            print(f"necessary-condition: fails at column(s) {cols}")
    if args.minimal:
        minimal = minimal_solutions_bruteforce(q, r,
                                               grid_step=args.grid_step)
        if minimal:
            for vec in minimal:
                print("minimal: " +
                      " ".join(render_scalar(v) for v in vec.row(0)))
        else:
            print("minimal: none")
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fuzzymaps",
        description="Multi-expert fuzzy/neutrosophic map runner and "
                    "relational equation solver.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser(
        "validate", help="check a model file against its class rules")
    p_validate.add_argument("--model", required=True,
                            help="model file path")
    p_validate.set_defaults(fn=cmd_validate)

    p_run = sub.add_parser(
        "run", help="iterate a model to its hidden pattern")
    p_run.add_argument("--model", required=True, help="model file path")
    p_run.add_argument("--input", required=True,
                       help="initial state vector file")
    p_run.add_argument("--trace", help="write the full trace here")
    p_run.add_argument("--op", choices=["circle", "maxmin", "minmax"],
                       help="override every component's operator")
    p_run.add_argument("--order-policy", default="book",
                       choices=["book", "indeterminacy"],
                       help="how min/max treat indeterminate values")
    p_run.add_argument("--threshold-k", type=float, default=0.0,
                       help="cut constant (strictly greater passes)")
    p_run.add_argument("--max-steps", type=int, default=10_000,
                       help="iteration safety cap")
    p_run.set_defaults(fn=cmd_run)

    p_compose = sub.add_parser(
        "compose", help="combine two matrices with a chosen operation")
    p_compose.add_argument("--op", required=True,
                           choices=sorted(_COMPOSE_OPS))
    p_compose.add_argument("--order-policy", default="book",
                           choices=["book", "indeterminacy"])
    p_compose.add_argument("a", help="left matrix file")
    p_compose.add_argument("b", help="right matrix file")
    p_compose.set_defaults(fn=cmd_compose)

    p_fre = sub.add_parser(
        "fre", help="solve p o Q = r for the maximum p")
    p_fre.add_argument("--matrix", required=True,
                       help="Q membership matrix file")
    p_fre.add_argument("--target", required=True,
                       help="target vector r file (one row)")
    p_fre.add_argument("--grid-step", type=float, default=0.1,
                       help="grid pitch for minimal-solution enumeration")
    p_fre.add_argument("--minimal", action="store_true",
                       help="also enumerate minimal grid solutions")
    p_fre.add_argument("--neutrosophic", action="store_true",
                       help="allow indeterminate memberships")
    p_fre.set_defaults(fn=cmd_fre)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (FuzzymapsError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _exit_code(exc)


if __name__ == "__main__":
    sys.exit(main())
