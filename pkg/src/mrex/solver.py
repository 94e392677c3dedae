"""Exhaustive most-relevant-explanation search with dominance pruning.

Candidates are all non-empty partial assignments of the target
variables.  A candidate is kept only when it is *minimal*: no strict
subset scores at least as high (strong dominance) and no strict superset
scores strictly higher (weak dominance).  ``solve_kmre`` returns the
best K mutually minimal candidates.

Ties are broken by fewer bound variables, then lexicographically on
(variable name, state name).  Candidates whose prior is exactly 0 or 1,
or whose posterior is 0, are rejected and never enter a pool.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import BudgetExceeded, NoAdmissibleExplanation
from .inference import DEFAULT_TABLE_BUDGET, target_tables
from .lattice import LatticeScores, compute_lattice, decode_cell
from .network import Assignment, Network
from .scoring import ScoreBundle, ratio_from_probabilities

DEFAULT_CANDIDATE_BUDGET = 10**7

SortKey = tuple[float, int, tuple[tuple[str, str], ...]]


@dataclass(frozen=True)
class Explanation:
    """A non-empty partial assignment of targets plus its score bundle."""

    assignment: Assignment
    scores: ScoreBundle


def explanation_sort_key(net: Network, explanation: Explanation) -> SortKey:
    """Orders pools: score descending, then smaller, then name order."""
    named = tuple(
        (name, net.var(name).states[state])
        for name, state in sorted(explanation.assignment.items())
    )
    return (-explanation.scores.gbf, len(named), named)


def strongly_dominates(a: Explanation, b: Explanation) -> bool:
    """a is a strict sub-assignment of b and scores at least as high."""
    if len(a.assignment) >= len(b.assignment):
        return False
    for name, state in a.assignment.items():
        if b.assignment.get(name) != state:
            return False
    return a.scores.gbf >= b.scores.gbf


def weakly_dominates(a: Explanation, b: Explanation) -> bool:
    """a is a strict super-assignment of b and scores strictly higher."""
    if len(a.assignment) <= len(b.assignment):
        return False
    for name, state in b.assignment.items():
        if a.assignment.get(name) != state:
            return False
    return a.scores.gbf > b.scores.gbf


def is_minimal(x: Explanation, candidates: Iterable[Explanation]) -> bool:
    """True when nothing in ``candidates`` dominates x either way."""
    for other in candidates:
        if other.assignment == x.assignment:
            continue
        if strongly_dominates(other, x) or weakly_dominates(other, x):
            return False
    return True


@dataclass
class SolutionPool:
    """Bounded pool of mutually minimal explanations, best first.

    ``offer`` applies the streaming insertion rule: reject when the pool
    is full and the score is strictly below the worst member; reject
    when a member dominates the newcomer; otherwise insert, drop members
    the newcomer dominates, and trim to capacity by the sort order.
    """

    capacity: int
    net: Network
    members: list[Explanation] = field(default_factory=list)
    candidates_considered: int = 0
    _keys: list[SortKey] = field(default_factory=list, repr=False)

    def offer(self, explanation: Explanation) -> bool:
        key = explanation_sort_key(self.net, explanation)
        if len(self.members) >= self.capacity:
            if explanation.scores.gbf < self.members[-1].scores.gbf:
                return False
        for member in self.members:
            if strongly_dominates(member, explanation) or weakly_dominates(
                member, explanation
            ):
                return False
        keep = [
            i
            for i, member in enumerate(self.members)
            if not (
                strongly_dominates(explanation, member)
                or weakly_dominates(explanation, member)
            )
        ]
        if len(keep) != len(self.members):
            self.members = [self.members[i] for i in keep]
            self._keys = [self._keys[i] for i in keep]
        pos = 0
        while pos < len(self._keys) and self._keys[pos] <= key:
            pos += 1
        self.members.insert(pos, explanation)
        self._keys.insert(pos, key)
        if len(self.members) > self.capacity:
            del self.members[self.capacity :]
            del self._keys[self.capacity :]
        return True


def enumerate_explanations(
    net: Network,
    targets: Sequence[str],
    candidate_budget: int = DEFAULT_CANDIDATE_BUDGET,
) -> Iterator[Assignment]:
    """Every non-empty partial assignment of ``targets``, exactly once.

    Order is deterministic: by number of bound variables, then variable
    names, then state names.
    """
    if not targets:
        raise ValueError("targets must be non-empty")
    names = sorted(set(targets))
    if len(names) != len(targets):
        raise ValueError("duplicate target variables")
    total = math.prod(net.var(n).card + 1 for n in names) - 1
    if total > candidate_budget:
        raise BudgetExceeded(
            f"{total} candidate explanations exceed the budget of {candidate_budget}"
        )
    state_orders = {
        n: sorted(range(net.var(n).card), key=lambda i: net.var(n).states[i])
        for n in names
    }
    for size in range(1, len(names) + 1):
        for subset in combinations(names, size):
            for states in product(*(state_orders[n] for n in subset)):
                yield dict(zip(subset, states))


def _validate_targets(net: Network, targets: Sequence[str] | None) -> list[str]:
    if targets is None:
        targets = net.targets()
    targets = list(targets)
    if not targets:
        raise ValueError("no target variables")
    for name in targets:
        if name not in net.index:
            raise ValueError(f"unknown target variable {name!r}")
        if net.var(name).role != "target":
            raise ValueError(f"variable {name!r} does not have role=target")
    return targets


def score_lattice(
    net: Network,
    targets: Sequence[str] | None,
    evidence: Assignment,
    candidate_budget: int = DEFAULT_CANDIDATE_BUDGET,
    table_budget: int = DEFAULT_TABLE_BUDGET,
    backend: str | None = None,
) -> LatticeScores:
    """Score every candidate for (targets, evidence) in one sweep."""
    targets = _validate_targets(net, targets)
    ev_overlap = set(targets) & evidence.keys()
    if ev_overlap:
        raise ValueError(
            "targets bound by evidence: " + ", ".join(sorted(ev_overlap))
        )
    n_cells = math.prod(net.var(n).card + 1 for n in targets)
    if n_cells - 1 > candidate_budget:
        raise BudgetExceeded(
            f"{n_cells - 1} candidate explanations exceed the budget "
            f"of {candidate_budget}"
        )
    tables = target_tables(net, targets, evidence, table_budget=table_budget)
    return compute_lattice(tables.prior, tables.posterior, tables.order, backend)


def _explanation_at(lat: LatticeScores, flat_index: int) -> Explanation:
    digits = decode_cell(flat_index, lat.score.shape)
    assignment = {
        name: d - 1 for name, d in zip(lat.order, digits) if d > 0
    }
    prior = float(lat.ext_prior.reshape(-1)[flat_index])
    posterior = float(lat.ext_posterior.reshape(-1)[flat_index])
    return Explanation(
        assignment,
        ScoreBundle(
            gbf=float(lat.score.reshape(-1)[flat_index]),
            prior=prior,
            posterior=posterior,
            belief_update_ratio=ratio_from_probabilities(prior, posterior),
        ),
    )


def solve_kmre(
    net: Network,
    targets: Sequence[str] | None,
    evidence: Assignment,
    k: int = 1,
    jobs: int = 1,
    candidate_budget: int = DEFAULT_CANDIDATE_BUDGET,
    table_budget: int = DEFAULT_TABLE_BUDGET,
) -> SolutionPool:
    """Top-K mutually minimal explanations by generalized Bayes factor.

    The result equals the offline answer: score everything, drop
    dominated candidates, sort, take K.  It is therefore independent of
    enumeration order and of ``jobs`` (which only partitions the
    candidate scan).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    lat = score_lattice(
        net, targets, evidence, candidate_budget, table_budget
    )
    flat_score = lat.score.reshape(-1)
    eligible = np.flatnonzero(lat.minimal.reshape(-1) & (flat_score > 0.0))
    pool = SolutionPool(capacity=k, net=net)
    pool.candidates_considered = lat.n_candidates
    if eligible.size == 0:
        raise NoAdmissibleExplanation(
            "every candidate explanation was rejected (degenerate priors "
            "or zero posteriors)"
        )
    if eligible.size > k:
        # only cells scoring at least the k-th best can make the pool
        kth = np.partition(flat_score[eligible], eligible.size - k)[
            eligible.size - k
        ]
        eligible = eligible[flat_score[eligible] >= kth]

    def local_pool(chunk: np.ndarray) -> SolutionPool:
        local = SolutionPool(capacity=k, net=net)
        for idx in chunk:
            local.offer(_explanation_at(lat, int(idx)))
        return local

    if jobs == 1 or eligible.size <= 1:
        pools = [local_pool(eligible)]
    else:
        chunks = np.array_split(eligible, jobs)
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            pools = list(ex.map(local_pool, chunks))
    for local in pools:
        for member in local.members:
            pool.offer(member)
    return pool


def solve_mre(
    net: Network,
    targets: Sequence[str] | None,
    evidence: Assignment,
    candidate_budget: int = DEFAULT_CANDIDATE_BUDGET,
    table_budget: int = DEFAULT_TABLE_BUDGET,
) -> Explanation:
    """The single explanation with the highest generalized Bayes factor."""
    pool = solve_kmre(
        net,
        targets,
        evidence,
        k=1,
        candidate_budget=candidate_budget,
        table_budget=table_budget,
    )
    return pool.members[0]
