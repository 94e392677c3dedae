"""Diagnostic benchmark harness.

Test cases are drawn from the network itself: forward-sample a full
assignment, keep it if at least one observation landed in an abnormal
(non-normal) state and enough targets are faulty, and use exactly the
abnormal observations as evidence.  Sampling is without replacement in
the sense that two cases never share the same evidence set.

Each method is scored per case by precision (faulty states named by the
explanation that exactly match the truth, over all faulty states it
names), recall (same numerator over all truly faulty targets), and their
harmonic mean.  When a method returns several solutions, the one with
the best precision is kept, breaking ties by recall.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .baselines import marginal_explanation, mpe_explanation, top_map_configs
from .errors import CaseGenerationExhausted
from .network import Assignment, Network, Variable
from .sampling import sample_assignment
from .solver import solve_kmre

METHODS = ("f_map", "marginal", "mre", "mpe", "p_map")
MULTI_SOLUTION_METHODS = ("mre", "f_map", "p_map")

DEFAULT_MAX_ATTEMPTS = 10_000


@dataclass(frozen=True)
class TestCase:
    __test__ = False  # keep pytest from collecting the name

    case_id: int
    ground_truth: Assignment
    evidence: Assignment
    fault_count: int


@dataclass(frozen=True)
class EvalRecord:
    case_id: int
    method: str
    k: int
    precision: float
    recall: float
    f_score: float


@dataclass(frozen=True)
class AggregateRecord:
    method: str
    k: int
    min_faults: int
    cases: int
    precision: float
    recall: float
    f_score: float


@dataclass(frozen=True)
class BenchmarkResult:
    min_faults: int
    records: list[EvalRecord]
    aggregates: list[AggregateRecord]


def generate_test_cases(
    net: Network,
    count: int,
    min_faults: int = 1,
    seed: int = 0,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> list[TestCase]:
    """Sample up to ``count`` cases; fewer if the space runs dry.

    Deterministic for a fixed seed.  Raises when not a single case is
    found within ``max_attempts`` samples.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    observations = [net.var(n) for n in net.observations()]
    targets = [net.var(n) for n in net.targets()]
    if not observations or not targets:
        raise ValueError("network needs both observation and target variables")
    unannotated = [v.name for v in observations + targets if v.normal_state is None]
    if unannotated:
        raise ValueError(
            "missing normal state for: " + ", ".join(sorted(unannotated))
        )
    rng = np.random.default_rng(seed)
    cases: list[TestCase] = []
    seen_evidence: set[frozenset] = set()
    for _ in range(max_attempts):
        sample = sample_assignment(net, rng)
        evidence = {
            v.name: sample[v.name]
            for v in observations
            if sample[v.name] != v.normal_index
        }
        if not evidence:
            continue
        fault_count = sum(
            1 for v in targets if sample[v.name] != v.normal_index
        )
        if fault_count < min_faults:
            continue
        key = frozenset(evidence.items())
        if key in seen_evidence:
            continue
        seen_evidence.add(key)
        cases.append(TestCase(len(cases), sample, evidence, fault_count))
        if len(cases) >= count:
            break
    if not cases:
        raise CaseGenerationExhausted(
            f"no admissible test case in {max_attempts} samples"
        )
    return cases


def precision(
    explanation: Mapping[str, int],
    truth: Mapping[str, int],
    targets: Iterable[Variable],
) -> float:
    """Exactly-matching faulty states over all faulty states named.

    0.0 when the explanation names no faulty state at all.
    """
    by_name = {v.name: v for v in targets}
    named_faulty = 0
    correct = 0
    for name, state in explanation.items():
        var = by_name.get(name)
        if var is None or state == var.normal_index:
            continue
        named_faulty += 1
        if truth.get(name) == state:
            correct += 1
    if named_faulty == 0:
        return 0.0
    return correct / named_faulty


def recall(
    explanation: Mapping[str, int],
    truth: Mapping[str, int],
    targets: Iterable[Variable],
) -> float:
    """Exactly-matching faulty states over all truly faulty targets."""
    targets = list(targets)
    by_name = {v.name: v for v in targets}
    truly_faulty = sum(
        1
        for v in targets
        if truth.get(v.name) is not None and truth[v.name] != v.normal_index
    )
    if truly_faulty == 0:
        return 0.0
    correct = 0
    for name, state in explanation.items():
        var = by_name.get(name)
        if var is None or state == var.normal_index:
            continue
        if truth.get(name) == state:
            correct += 1
    return correct / truly_faulty


def f_score(p: float, r: float) -> float:
    """Harmonic mean 2pr/(p+r); 0 when both rates vanish."""
    if p + r == 0.0:
        return 0.0
    return 2.0 * p * r / (p + r)


def _method_solutions(
    net: Network,
    method: str,
    evidence: Assignment,
    k: int,
    table_budget: int,
    candidate_budget: int,
) -> list[Assignment]:
    """Up to k candidate explanations, best first."""
    targets = list(net.targets())
    if method == "mre":
        pool = solve_kmre(
            net,
            targets,
            evidence,
            k=k,
            candidate_budget=candidate_budget,
            table_budget=table_budget,
        )
        return [m.assignment for m in pool.members]
    if method == "marginal":
        return [marginal_explanation(net, targets, evidence, table_budget).assignment]
    if method == "f_map":
        return [
            a for a, _ in top_map_configs(net, targets, evidence, k, table_budget)
        ]
    if method == "p_map":
        pool = solve_kmre(
            net,
            targets,
            evidence,
            k=k,
            candidate_budget=candidate_budget,
            table_budget=table_budget,
        )
        solutions = []
        for member in pool.members:
            variables = sorted(member.assignment)
            configs = top_map_configs(net, variables, evidence, 1, table_budget)
            solutions.append(configs[0][0])
        return solutions
    if method == "mpe":
        result = mpe_explanation(net, evidence, table_budget)
        target_names = set(targets)
        return [
            {n: s for n, s in result.assignment.items() if n in target_names}
        ]
    raise ValueError(f"unknown method {method!r}")


def _best_metrics(
    solutions: Sequence[Assignment],
    case: TestCase,
    targets: Sequence[Variable],
) -> tuple[float, float]:
    best = (-1.0, -1.0)
    for assignment in solutions:
        p = precision(assignment, case.ground_truth, targets)
        r = recall(assignment, case.ground_truth, targets)
        if (p, r) > best:
            best = (p, r)
    return best


def run_benchmark(
    net: Network,
    cases: Sequence[TestCase],
    methods: Sequence[str] = ("f_map", "marginal", "mre", "p_map"),
    k: int = 1,
    min_faults: int = 1,
    jobs: int = 1,
    table_budget: int = 2**24,
    candidate_budget: int = 10**7,
) -> BenchmarkResult:
    """Evaluate every method on every case at K=1 and, if k>1, at K=k.

    Single-solution methods (marginal, mpe) only appear in K=1 rows.
    Output order is canonical regardless of ``jobs``.
    """
    if not cases:
        raise ValueError("cases must be non-empty")
    for m in methods:
        if m not in METHODS:
            raise ValueError(f"unknown method {m!r}")
    if k > 1 and all(m not in MULTI_SOLUTION_METHODS for m in methods):
        raise ValueError(
            "k > 1 requested but every method yields a single solution"
        )
    k_levels = sorted({1, k})
    targets = [net.var(n) for n in net.targets()]

    def eval_case(case: TestCase) -> list[EvalRecord]:
        records = []
        for method in sorted(set(methods)):
            # compute once at the largest K; smaller levels are prefixes
            top = _method_solutions(
                net, method, case.evidence, k, table_budget, candidate_budget
            )
            for k_eval in k_levels:
                if k_eval > 1 and method not in MULTI_SOLUTION_METHODS:
                    continue
                p, r = _best_metrics(top[:k_eval], case, targets)
                records.append(
                    EvalRecord(case.case_id, method, k_eval, p, r, f_score(p, r))
                )
        return records

    if jobs == 1:
        per_case = [eval_case(c) for c in cases]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            per_case = list(ex.map(eval_case, cases))

    records = [rec for group in per_case for rec in group]
    records.sort(key=lambda r: (r.case_id, r.method, r.k))

    aggregates = []
    for method in sorted(set(methods)):
        for k_eval in k_levels:
            rows = [r for r in records if r.method == method and r.k == k_eval]
            if not rows:
                continue
            aggregates.append(
                AggregateRecord(
                    method,
                    k_eval,
                    min_faults,
                    len(rows),
                    float(np.mean([r.precision for r in rows])),
                    float(np.mean([r.recall for r in rows])),
                    float(np.mean([r.f_score for r in rows])),
                )
            )
    return BenchmarkResult(min_faults, records, aggregates)


def render_benchmark_csv(result: BenchmarkResult) -> str:
    lines = ["case,method,k,min_faults,precision,recall,f_score"]
    for r in result.records:
        lines.append(
            f"{r.case_id},{r.method},{r.k},{result.min_faults},"
            f"{r.precision!r},{r.recall!r},{r.f_score!r}"
        )
    for a in result.aggregates:
        lines.append(
            f"mean,{a.method},{a.k},{a.min_faults},"
            f"{a.precision!r},{a.recall!r},{a.f_score!r}"
        )
    return "\n".join(lines) + "\n"


def render_benchmark_json(result: BenchmarkResult) -> str:
    payload = {
        "min_faults": result.min_faults,
        "records": [
            {
                "case": r.case_id,
                "method": r.method,
                "k": r.k,
                "min_faults": result.min_faults,
                "precision": r.precision,
                "recall": r.recall,
                "f_score": r.f_score,
            }
            for r in result.records
        ],
        "aggregates": [
            {
                "method": a.method,
                "k": a.k,
                "min_faults": a.min_faults,
                "cases": a.cases,
                "precision": a.precision,
                "recall": a.recall,
                "f_score": a.f_score,
            }
            for a in result.aggregates
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def cases_to_jsonl(net: Network, cases: Sequence[TestCase]) -> str:
    """One JSON object per line: case id, ground truth, evidence."""
    lines = []
    for c in cases:
        lines.append(
            json.dumps(
                {
                    "case": c.case_id,
                    "ground_truth": {
                        n: net.var(n).states[s] for n, s in sorted(c.ground_truth.items())
                    },
                    "evidence": {
                        n: net.var(n).states[s] for n, s in sorted(c.evidence.items())
                    },
                    "fault_count": c.fault_count,
                }
            )
        )
    return "\n".join(lines) + "\n"
