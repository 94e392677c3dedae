"""Posterior-based comparison methods: marginal, MAP, and MPE.

All three are solved by scanning the exact joint table over the queried
variables, which shares the inference machinery and stays trivially
verifiable at this scale.  Score ties resolve to the smallest state
indices in network variable order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .inference import DEFAULT_TABLE_BUDGET, target_tables
from .network import Assignment, Network


@dataclass(frozen=True)
class BaselineResult:
    method: str
    assignment: Assignment
    score: float  # posterior probability of the assignment given evidence


def marginal_explanation(
    net: Network,
    targets: Sequence[str] | None,
    evidence: Assignment,
    table_budget: int = DEFAULT_TABLE_BUDGET,
) -> BaselineResult:
    """Per-target argmax of the posterior marginals, assembled jointly."""
    if targets is None:
        targets = net.targets()
    tables = target_tables(net, targets, evidence, table_budget=table_budget)
    assignment: Assignment = {}
    for axis, name in enumerate(tables.order):
        other = tuple(i for i in range(len(tables.order)) if i != axis)
        marginal = tables.posterior.sum(axis=other) if other else tables.posterior
        assignment[name] = int(np.argmax(marginal))
    score = tables.partial_posterior(assignment)
    return BaselineResult("marginal", assignment, score)


def top_map_configs(
    net: Network,
    variables: Sequence[str],
    evidence: Assignment,
    k: int = 1,
    table_budget: int = DEFAULT_TABLE_BUDGET,
) -> list[tuple[Assignment, float]]:
    """The k highest-posterior full instantiations of ``variables``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    tables = target_tables(net, variables, evidence, table_budget=table_budget)
    flat = tables.posterior.reshape(-1)
    k = min(k, flat.size)
    # stable ranking: posterior descending, then smallest flat index
    order = np.lexsort((np.arange(flat.size), -flat))[:k]
    results = []
    for flat_idx in order:
        states = np.unravel_index(int(flat_idx), tables.posterior.shape)
        assignment = {
            name: int(s) for name, s in zip(tables.order, states)
        }
        results.append((assignment, float(flat[flat_idx])))
    return results


def map_explanation(
    net: Network,
    variables: Sequence[str],
    evidence: Assignment,
    method: str = "f_map",
    table_budget: int = DEFAULT_TABLE_BUDGET,
) -> BaselineResult:
    """The full instantiation of ``variables`` maximizing joint posterior.

    With ``variables`` = all targets this is F-MAP; restricted to the
    variables of an MRE solution it is P-MAP (pass ``method="p_map"``).
    """
    (assignment, score), *_ = top_map_configs(
        net, variables, evidence, k=1, table_budget=table_budget
    )
    return BaselineResult(method, assignment, score)


def mpe_explanation(
    net: Network,
    evidence: Assignment,
    table_budget: int = DEFAULT_TABLE_BUDGET,
) -> BaselineResult:
    """Most probable full instantiation of every non-evidence variable."""
    free = [v.name for v in net.variables if v.name not in evidence]
    if not free:
        raise ValueError("evidence binds every variable")
    (assignment, score), *_ = top_map_configs(
        net, free, evidence, k=1, table_budget=table_budget
    )
    return BaselineResult("mpe", assignment, score)
