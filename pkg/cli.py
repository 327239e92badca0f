#!/usr/bin/env python3
"""
Complex Circle Manifold Toolkit - command line
==============================================
    generate --kind <random-hermitian|steering> [--n N] [--seed S]
             [--scale X | --angles a,b,.. --weights w1,w2,..] --out PATH
    solve    --matrix PATH --seed S [--max-iters K] [--grad-tol T]
             [--initial-step T0] --out PATH [--trace-csv PATH]
    check    (--matrix PATH | --random N) --seed S --trials M [--out PATH]

Exit codes: 0 converged / check passed, 2 max_iters, 3 line_search_failed,
4 input error, 5 check failed, 1 internal error.
"""

import argparse
import json
import sys
import time
from dataclasses import replace
from typing import List, Optional

from pydantic import ValidationError

from ccm_manifold import random_point
from config import EXIT_CODES, VERSION
from core import log_debug, toggle_debug_mode, track_function_entry
from error_handler import CCMError, CheckFailedError, InvalidArgumentError, error_handler
from invariant_checks import run_invariant_suite
from matrix_files import (
    MatrixFile,
    RunReport,
    config_echo,
    read_matrix_file,
    write_matrix_file,
    write_run_report,
    write_trace_csv,
)
from optimizer import OptimizerConfig, solve_rgd
from problems import make_random_hermitian, make_steering_problem


def _float_list(text: str) -> List[float]:
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise InvalidArgumentError(f"expected a comma-separated list of numbers, got {text!r}")


def _fail(exc: BaseException) -> int:
    record = error_handler.create_error_record(exc)
    print(json.dumps({"error": record}), file=sys.stderr)
    return error_handler.exit_code_for(exc)


def cmd_generate(args: argparse.Namespace) -> int:
    track_function_entry("cmd_generate")
    try:
        if args.kind == "random-hermitian":
            if args.n is None or args.seed is None:
                raise InvalidArgumentError("random-hermitian needs --n and --seed")
            instance = make_random_hermitian(args.n, args.seed, args.scale)
        else:
            if args.n is None or args.angles is None or args.weights is None:
                raise InvalidArgumentError("steering needs --n, --angles and --weights")
            instance = make_steering_problem(args.n, _float_list(args.angles), _float_list(args.weights))
        if args.label:
            instance = replace(instance, label=args.label)
        write_matrix_file(args.out, MatrixFile.from_instance(instance))
    except CCMError as e:
        return _fail(e)

    print(json.dumps({"written": args.out, "n": instance.A.n, "label": instance.label}))
    return 0


def _optimizer_config(args: argparse.Namespace) -> OptimizerConfig:
    overrides = {
        "max_iters": args.max_iters,
        "grad_tol": args.grad_tol,
        "initial_step": args.initial_step,
    }
    try:
        return OptimizerConfig(**{k: v for k, v in overrides.items() if v is not None})
    except ValidationError as e:
        violations = "; ".join(f"{'.'.join(map(str, err['loc']))}: {err['msg']}" for err in e.errors())
        raise InvalidArgumentError(f"invalid optimizer configuration: {violations}")


def cmd_solve(args: argparse.Namespace) -> int:
    track_function_entry("cmd_solve")
    start = time.perf_counter()
    provenance = {"matrix": args.matrix, "seed": args.seed}
    config_dump = {}

    try:
        matrix_file = read_matrix_file(args.matrix)
        A = matrix_file.to_hermitian()
        provenance.update({"label": matrix_file.label, "instance": matrix_file.provenance})
        config = _optimizer_config(args)
        config_dump = config_echo(config, A)
        result = solve_rgd(A, random_point(A.n, args.seed), config)
    except CCMError as e:
        report = RunReport(
            provenance=provenance,
            config=config_dump,
            status="input_error" if error_handler.exit_code_for(e) == EXIT_CODES["input_error"] else "internal_error",
            wall_time=time.perf_counter() - start,
            error=error_handler.create_error_record(e),
        )
        try:
            write_run_report(args.out, report)
        except CCMError as write_error:
            log_debug("Could not write failure report", {"error": str(write_error)})
        print(json.dumps({"error": report.error}), file=sys.stderr)
        return error_handler.exit_code_for(e)

    report = RunReport.from_result(result, provenance, config_dump, time.perf_counter() - start)
    try:
        write_run_report(args.out, report)
        if args.trace_csv:
            write_trace_csv(args.trace_csv, result.trace)
    except CCMError as e:
        return _fail(e)

    print(json.dumps({
        "status": report.status,
        "cost_final": report.cost_final,
        "grad_norm_final": report.grad_norm_final,
        "iterations": report.iterations,
    }))
    return EXIT_CODES[result.status.value]


def cmd_check(args: argparse.Namespace) -> int:
    track_function_entry("cmd_check")
    try:
        if args.matrix is not None:
            matrix_file = read_matrix_file(args.matrix)
            A = matrix_file.to_hermitian()
            source = {"matrix": args.matrix, "label": matrix_file.label}
        else:
            A = make_random_hermitian(args.random, args.seed).A
            source = {"random": args.random, "seed": args.seed}
        report = run_invariant_suite(A, args.trials, args.seed, source, args.perturb_modulus)
    except CCMError as e:
        return _fail(e)

    body = json.dumps(report.to_dict(), indent=2)
    print(body)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as handle:
                handle.write(body + "\n")
        except OSError as e:
            return _fail(InvalidArgumentError(f"cannot write {args.out}: {e.strerror or e}"))

    if not report.passed:
        return _fail(CheckFailedError(f"check failed: {', '.join(report.failing())}", failing=report.failing()))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ccm", description="Riemannian optimization on the complex circle manifold")
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    parser.add_argument("--debug", action="store_true", help="emit structured debug logs on stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    generate = commands.add_parser("generate", help="write a problem instance")
    generate.add_argument("--kind", required=True, choices=["random-hermitian", "steering"])
    generate.add_argument("--n", type=int)
    generate.add_argument("--seed", type=int)
    generate.add_argument("--scale", type=float, default=1.0)
    generate.add_argument("--angles", help="comma-separated radians")
    generate.add_argument("--weights", help="comma-separated non-negative weights")
    generate.add_argument("--label")
    generate.add_argument("--out", required=True)
    generate.set_defaults(handler=cmd_generate)

    solve = commands.add_parser("solve", help="run Riemannian gradient descent")
    solve.add_argument("--matrix", required=True)
    solve.add_argument("--seed", type=int, required=True, help="seed for the starting point")
    solve.add_argument("--max-iters", type=int)
    solve.add_argument("--grad-tol", type=float)
    solve.add_argument("--initial-step", type=float)
    solve.add_argument("--out", required=True)
    solve.add_argument("--trace-csv", help="also write the trace as CSV")
    solve.set_defaults(handler=cmd_solve)

    check = commands.add_parser("check", help="run the invariant verification suite")
    source = check.add_mutually_exclusive_group(required=True)
    source.add_argument("--matrix")
    source.add_argument("--random", type=int, metavar="N")
    check.add_argument("--seed", type=int, required=True)
    check.add_argument("--trials", type=int, default=20)
    check.add_argument("--out")
    check.add_argument("--perturb-modulus", type=float, default=1.0, help=argparse.SUPPRESS)
    check.set_defaults(handler=cmd_check)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors, which would read as max_iters
        return EXIT_CODES["input_error"] if e.code else 0
    if args.debug:
        toggle_debug_mode(True)
    try:
        return args.handler(args)
    except Exception as e:
        log_debug("Unexpected error", {"type": type(e).__name__, "error": str(e)})
        return _fail(e)


if __name__ == "__main__":
    sys.exit(main())
