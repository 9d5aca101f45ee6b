"""Command-line surface tying the modules together.

Exit codes are stable: 0 success, 1 usage error, 2 runtime failure
(transport/storage), 3 verification found a discrepancy (`score` mismatch).
Machine-readable results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import oracle, report, runner
from .errors import (
    BadResponse,
    EmptyGrid,
    InvalidSpec,
    MalformedLog,
    MalformedTask,
    TaxonomyExhausted,
    Transport,
    UnsupportedCombination,
)
from .promptkit import PromptParams, render
from .taskgen import FAMILY_BY_KIND, TaskSpec, dump_task_line, gen_task

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2
EXIT_CHECK_FAILED = 3

_USAGE_ERRORS = (InvalidSpec, UnsupportedCombination, EmptyGrid, TaxonomyExhausted)
_RUNTIME_ERRORS = (Transport, BadResponse, MalformedLog, MalformedTask, OSError)


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 1 (default is 2)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _int_pair(text: str) -> tuple[int, int]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected LO,HI, got {text!r}")
    return int(parts[0]), int(parts[1])


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(p.strip()) for p in text.split(",") if p.strip())


def _str_list(text: str) -> tuple[str, ...]:
    return tuple(p.strip() for p in text.split(",") if p.strip())


def build_parser() -> _Parser:
    parser = _Parser(prog="retrievalbench", description=__doc__)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("generate", parents=[], help="write task files from a spec grid")
    p.add_argument("--family", required=True, choices=("kv", "resume", "arith"))
    p.add_argument("--kind", required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--value-range", type=_int_pair, default=(0, 999))
    p.add_argument("--out", default="-", help="output path, - for stdout")

    p = sub.add_parser("render", help="print the prompt for one task")
    p.add_argument("--family", required=True, choices=("kv", "resume", "arith"))
    p.add_argument("--kind", required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--value-range", type=_int_pair, default=(0, 999))
    p.add_argument("--strategy", default="standard")
    p.add_argument("--question-first", action="store_true")

    p = sub.add_parser("run", help="execute a run config against endpoints")
    p.add_argument("--config", required=True)
    p.add_argument(
        "--endpoint", action="append", default=None, metavar="ENTRY",
        help="replace the endpoint axis (sim:<kind> or model@url); repeatable",
    )
    p.add_argument("--out", dest="output_path", default=None)
    p.add_argument("--samples", dest="samples_per_cell", type=int, default=None)
    p.add_argument("--seed-base", dest="seed_base", type=int, default=None)
    p.add_argument("--max-in-flight", dest="max_in_flight", type=int, default=None)

    p = sub.add_parser("score", help="re-grade a run log from stored raw text")
    p.add_argument("runlog")

    p = sub.add_parser("verify-trace", help="trace reports for a log (or one record)")
    p.add_argument("runlog")
    p.add_argument("--index", type=int, default=None)

    p = sub.add_parser("report", help="aggregate a run log into a table")
    p.add_argument("runlog")
    p.add_argument("--format", choices=("markdown", "csv"), default="markdown")

    p = sub.add_parser("embed-test", help="numeric-comparison embedding protocol")
    p.add_argument("--endpoint", default="sim")
    p.add_argument("--ranges", type=_int_list, default=(30, 100, 1000, 10000))
    p.add_argument("--kinds", type=_str_list, default=("equal", "range"))
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--embed-model", default="")

    p = sub.add_parser("steps", help="print the reasoning-step sufficiency bound")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    return parser


def _spec_for(args) -> TaskSpec:
    if FAMILY_BY_KIND.get(args.kind) != args.family:
        raise InvalidSpec(f"kind {args.kind!r} is not in family {args.family!r}")
    return TaskSpec(
        family=args.family, kind=args.kind, N=args.N, n=args.n,
        value_range=args.value_range, seed=args.seed,
    )


def _cmd_generate(args) -> int:
    lines = []
    for i in range(args.samples):
        seed = runner.sample_seed(
            args.seed, args.family, args.kind, args.N, args.n, args.value_range, i
        )
        spec = TaskSpec(
            family=args.family, kind=args.kind, N=args.N, n=args.n,
            value_range=args.value_range, seed=seed,
        )
        lines.append(dump_task_line(gen_task(spec)))
    text = "\n".join(lines) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {args.samples} tasks to {args.out}", file=sys.stderr)
    return EXIT_OK


def _cmd_render(args) -> int:
    task = gen_task(_spec_for(args))
    prompt = render(task, args.strategy, PromptParams(args.question_first))
    sys.stdout.write(prompt + "\n")
    return EXIT_OK


def _cmd_run(args) -> int:
    overrides = {
        "endpoints": tuple(args.endpoint) if args.endpoint else None,
        "output_path": args.output_path,
        "samples_per_cell": args.samples_per_cell,
        "seed_base": args.seed_base,
        "max_in_flight": args.max_in_flight,
    }
    config = runner.load_config(args.config, overrides)
    path = runner.run(config)
    _, summary = runner.read_log(path)
    print(json.dumps({"runlog": str(path), "summary": summary}, sort_keys=True))
    return EXIT_OK if summary and summary.get("complete") else EXIT_RUNTIME


def _cmd_score(args) -> int:
    result = runner.score_log(args.runlog)
    print(json.dumps(result, sort_keys=True))
    return EXIT_CHECK_FAILED if result["mismatches"] else EXIT_OK


def _cmd_verify_trace(args) -> int:
    for entry in runner.verify_traces(args.runlog, args.index):
        print(json.dumps(entry, sort_keys=True))
    return EXIT_OK


def _cmd_report(args) -> int:
    table = report.aggregate(args.runlog)
    sys.stdout.write(report.emit(table, args.format))
    return EXIT_OK


def _cmd_embed_test(args) -> int:
    results = runner.run_embed_eval(
        args.endpoint,
        ranges=args.ranges,
        query_kinds=args.kinds,
        samples=args.samples,
        seed_base=args.seed,
        embed_model=args.embed_model,
    )
    for entry in results:
        print(json.dumps(entry, sort_keys=True))
    return EXIT_OK


def _cmd_steps(args) -> int:
    print(oracle.sufficient_steps(args.N, args.n))
    return EXIT_OK


_COMMANDS = {
    "generate": _cmd_generate,
    "render": _cmd_render,
    "run": _cmd_run,
    "score": _cmd_score,
    "verify-trace": _cmd_verify_trace,
    "report": _cmd_report,
    "embed-test": _cmd_embed_test,
    "steps": _cmd_steps,
}


def dispatch(argv) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    handler = _COMMANDS[args.command]
    try:
        return handler(args)
    except BrokenPipeError:
        # the consumer closed the pipe (e.g. `... | head`); not an error
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK
    except _USAGE_ERRORS as exc:
        print(f"retrievalbench {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _RUNTIME_ERRORS as exc:
        print(f"retrievalbench {args.command}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


def main(argv=None) -> int:
    try:
        return dispatch(argv if argv is not None else sys.argv[1:])
    except SystemExit as exc:  # argparse --help exits 0; usage errors exit 1
        code = exc.code
        return code if isinstance(code, int) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
