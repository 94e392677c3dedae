"""Command-line interface.

Subcommands:

    solve    print the top-K explanation pool for given evidence
    score    score one explanation (GBF, update ratio, boundary, CBF)
    bench    generate test cases and run the method benchmark
    fixture  print a bundled example network file

Evidence and explanations are ``Var=state`` pairs, comma separated,
matching network names case-sensitively.  Data goes to stdout,
diagnostics to stderr.  Exit codes: 0 success, 1 parse/usage error,
2 inference error (zero-probability evidence), 3 budget exceeded,
4 test-case generation exhausted.  All randomness flows from ``--seed``,
so identical invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import (
    BudgetExceeded,
    CaseGenerationExhausted,
    MrexError,
    NetworkFormatError,
    NoAdmissibleExplanation,
    ZeroProbabilityEvidence,
)
from .evaluation import (
    MULTI_SOLUTION_METHODS,
    METHODS,
    cases_to_jsonl,
    generate_test_cases,
    render_benchmark_csv,
    render_benchmark_json,
    run_benchmark,
)
from .fixtures import FIXTURES, fixture_text
from .inference import DEFAULT_TABLE_BUDGET
from .network import Network, parse_bindings, parse_network
from .scoring import cbf, inclusion_boundary, score_bundle
from .solver import DEFAULT_CANDIDATE_BUDGET, solve_kmre

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_INFERENCE = 2
EXIT_BUDGET = 3
EXIT_EXHAUSTED = 4


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the interface reserves 2 for
    # inference failures, so route usage problems to exit 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _CliError(EXIT_PARSE, message)


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mrex", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, net_required=True):
        p.add_argument("--net", required=net_required, help="network file path")
        p.add_argument("--evidence", default="", help="Var=state,... evidence list")
        p.add_argument("--k", type=int, default=1, help="pool size (default 1)")
        p.add_argument("--seed", type=int, default=0, help="master RNG seed")
        p.add_argument(
            "--format", choices=("csv", "json"), default="csv", help="output format"
        )
        p.add_argument("--jobs", type=int, default=1, help="worker count")
        p.add_argument(
            "--budget-candidates",
            type=int,
            default=DEFAULT_CANDIDATE_BUDGET,
            help="max candidate explanations",
        )
        p.add_argument(
            "--budget-table",
            type=int,
            default=DEFAULT_TABLE_BUDGET,
            help="max joint-table entries",
        )

    p_solve = sub.add_parser("solve", help="top-K explanation pool")
    common(p_solve)

    p_score = sub.add_parser("score", help="score one explanation")
    common(p_score)
    p_score.add_argument("explanation", help="Var=state,... explanation bindings")
    p_score.add_argument(
        "--given",
        default="",
        help="conditioning explanation for the conditional Bayes factor",
    )

    p_bench = sub.add_parser("bench", help="run the diagnostic benchmark")
    common(p_bench)
    p_bench.add_argument("--cases", type=int, default=50, help="test cases to draw")
    p_bench.add_argument(
        "--min-faults", type=int, default=1, help="minimum faulty targets per case"
    )
    p_bench.add_argument(
        "--methods",
        default="f_map,marginal,mre,p_map",
        help="comma-separated subset of: " + ",".join(METHODS),
    )
    p_bench.add_argument(
        "--cases-out", default=None, help="also write the cases as JSON lines"
    )

    p_fix = sub.add_parser("fixture", help="print a bundled network file")
    p_fix.add_argument(
        "--name", default="circuit", help="fixture name: " + ", ".join(FIXTURES)
    )
    return parser


def _load_network(path: str) -> Network:
    try:
        text = Path(path).read_text("utf-8")
    except OSError as exc:
        raise _CliError(EXIT_PARSE, f"cannot read {path}: {exc}")
    return parse_network(text)


def _seed_check(seed: int):
    if not (0 <= seed < 2**64):
        raise _CliError(EXIT_PARSE, "--seed must be a 64-bit unsigned integer")


def _fmt(value: float) -> str:
    return repr(float(value))


def _emit(text: str):
    sys.stdout.write(text)


def _cmd_solve(args) -> int:
    net = _load_network(args.net)
    evidence = parse_bindings(net, args.evidence, "evidence")
    if not evidence:
        raise _CliError(EXIT_PARSE, "solve requires --evidence")
    if args.k < 1:
        raise _CliError(EXIT_PARSE, "--k must be >= 1")
    pool = solve_kmre(
        net,
        None,
        evidence,
        k=args.k,
        jobs=args.jobs,
        candidate_budget=args.budget_candidates,
        table_budget=args.budget_table,
    )
    rows = []
    for rank, member in enumerate(pool.members, start=1):
        rows.append(
            {
                "rank": rank,
                "explanation": net.format_assignment(member.assignment),
                "gbf": member.scores.gbf,
                "prior": member.scores.prior,
                "posterior": member.scores.posterior,
                "belief_update_ratio": member.scores.belief_update_ratio,
            }
        )
    if args.format == "json":
        _emit(json.dumps(rows, indent=2) + "\n")
    else:
        lines = ["rank,explanation,gbf,prior,posterior,belief_update_ratio"]
        for r in rows:
            lines.append(
                f"{r['rank']},\"{r['explanation']}\",{_fmt(r['gbf'])},"
                f"{_fmt(r['prior'])},{_fmt(r['posterior'])},"
                f"{_fmt(r['belief_update_ratio'])}"
            )
        _emit("\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_score(args) -> int:
    net = _load_network(args.net)
    evidence = parse_bindings(net, args.evidence, "evidence")
    if not evidence:
        raise _CliError(EXIT_PARSE, "score requires --evidence")
    explanation = parse_bindings(net, args.explanation, "explanation")
    if not explanation:
        raise _CliError(EXIT_PARSE, "empty explanation")
    given = parse_bindings(net, args.given, "--given") if args.given else {}
    overlap = explanation.keys() & evidence.keys()
    if overlap:
        raise _CliError(
            EXIT_PARSE,
            "explanation and evidence overlap on: " + ", ".join(sorted(overlap)),
        )
    bundle = score_bundle(net, explanation, evidence)
    report = {
        "explanation": net.format_assignment(explanation),
        "gbf": bundle.gbf,
        "prior": bundle.prior,
        "posterior": bundle.posterior,
        "belief_update_ratio": bundle.belief_update_ratio,
        "inclusion_boundary": inclusion_boundary(net, explanation, evidence),
    }
    if given:
        report["given"] = net.format_assignment(given)
        report["cbf"] = cbf(net, explanation, given, evidence)
    if args.format == "json":
        _emit(json.dumps(report, indent=2) + "\n")
    else:
        lines = ["quantity,value"]
        for key, value in report.items():
            value = _fmt(value) if isinstance(value, float) else f'"{value}"'
            lines.append(f"{key},{value}")
        _emit("\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_bench(args) -> int:
    net = _load_network(args.net)
    _seed_check(args.seed)
    if args.k < 1:
        raise _CliError(EXIT_PARSE, "--k must be >= 1")
    if args.cases < 1:
        raise _CliError(EXIT_PARSE, "--cases must be >= 1")
    methods = tuple(m for m in args.methods.split(",") if m)
    for m in methods:
        if m not in METHODS:
            raise _CliError(EXIT_PARSE, f"unknown method {m!r}")
    if args.k > 1 and all(m not in MULTI_SOLUTION_METHODS for m in methods):
        raise _CliError(
            EXIT_PARSE,
            "every requested method yields a single solution; use --k 1",
        )
    try:
        cases = generate_test_cases(
            net, args.cases, min_faults=args.min_faults, seed=args.seed
        )
    except ValueError as exc:
        raise _CliError(EXIT_PARSE, str(exc))
    if args.cases_out:
        Path(args.cases_out).write_text(cases_to_jsonl(net, cases), "utf-8")
    result = run_benchmark(
        net,
        cases,
        methods=methods,
        k=args.k,
        min_faults=args.min_faults,
        jobs=args.jobs,
        table_budget=args.budget_table,
        candidate_budget=args.budget_candidates,
    )
    if args.format == "json":
        _emit(render_benchmark_json(result))
    else:
        _emit(render_benchmark_csv(result))
    return EXIT_OK


def _cmd_fixture(args) -> int:
    try:
        _emit(fixture_text(args.name))
    except ValueError as exc:
        raise _CliError(EXIT_PARSE, str(exc))
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "solve":
            return _cmd_solve(args)
        if args.command == "score":
            return _cmd_score(args)
        if args.command == "bench":
            return _cmd_bench(args)
        if args.command == "fixture":
            return _cmd_fixture(args)
        raise _CliError(EXIT_PARSE, f"unknown command {args.command!r}")
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except NetworkFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ZeroProbabilityEvidence, NoAdmissibleExplanation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFERENCE
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CaseGenerationExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    except (ValueError, MrexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
