"""Explanation engine for discrete Bayesian networks.

Finds the partial assignments of a network's target variables that best
explain observed evidence, ranked by generalized Bayes factor, with
posterior-based baselines (marginal, MAP, MPE) and a benchmark harness
for diagnostic accuracy.
"""

from .baselines import (
    BaselineResult,
    map_explanation,
    marginal_explanation,
    mpe_explanation,
    top_map_configs,
)
from .errors import (
    BudgetExceeded,
    CaseGenerationExhausted,
    DegenerateExplanation,
    MrexError,
    NetworkFormatError,
    NoAdmissibleExplanation,
    ZeroProbabilityEvidence,
)
from .evaluation import (
    AggregateRecord,
    BenchmarkResult,
    EvalRecord,
    TestCase,
    f_score,
    generate_test_cases,
    precision,
    recall,
    render_benchmark_csv,
    render_benchmark_json,
    run_benchmark,
)
from .fixtures import circuit_network, fixture_text
from .inference import (
    TargetTables,
    joint_probability,
    posterior_probability,
    prior_probability,
    target_tables,
)
from .lattice import BACKEND, LatticeScores, compute_lattice
from .network import (
    CPT,
    Assignment,
    Network,
    Variable,
    format_network,
    parse_bindings,
    parse_network,
)
from .sampling import forward_sample, sample_assignment
from .scoring import (
    ScoreBundle,
    belief_update_ratio,
    cbf,
    gbf,
    gbf_ratio_form,
    inclusion_boundary,
    score_bundle,
)
from .solver import (
    Explanation,
    SolutionPool,
    enumerate_explanations,
    explanation_sort_key,
    is_minimal,
    score_lattice,
    solve_kmre,
    solve_mre,
    strongly_dominates,
    weakly_dominates,
)

__version__ = "0.1.0"

__all__ = [
    "AggregateRecord",
    "Assignment",
    "BACKEND",
    "BaselineResult",
    "BenchmarkResult",
    "BudgetExceeded",
    "CaseGenerationExhausted",
    "CPT",
    "DegenerateExplanation",
    "EvalRecord",
    "Explanation",
    "LatticeScores",
    "MrexError",
    "Network",
    "NetworkFormatError",
    "NoAdmissibleExplanation",
    "ScoreBundle",
    "SolutionPool",
    "TargetTables",
    "TestCase",
    "Variable",
    "ZeroProbabilityEvidence",
    "belief_update_ratio",
    "cbf",
    "circuit_network",
    "compute_lattice",
    "enumerate_explanations",
    "explanation_sort_key",
    "f_score",
    "fixture_text",
    "format_network",
    "forward_sample",
    "gbf",
    "gbf_ratio_form",
    "generate_test_cases",
    "inclusion_boundary",
    "is_minimal",
    "joint_probability",
    "map_explanation",
    "marginal_explanation",
    "mpe_explanation",
    "parse_bindings",
    "parse_network",
    "posterior_probability",
    "precision",
    "prior_probability",
    "recall",
    "render_benchmark_csv",
    "render_benchmark_json",
    "run_benchmark",
    "sample_assignment",
    "score_bundle",
    "score_lattice",
    "solve_kmre",
    "solve_mre",
    "strongly_dominates",
    "target_tables",
    "top_map_configs",
    "weakly_dominates",
]
