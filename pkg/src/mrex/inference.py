"""Exact inference over partial assignments.

Queries are answered by variable elimination with a min-degree ordering;
the probability of a partial assignment is the normalization constant
left after slicing the CPTs at the bound states and summing out the rest.
Brute-force enumeration is deliberately not used here so the test suite
can keep it as an independent oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import BudgetExceeded, ZeroProbabilityEvidence
from .network import Assignment, Network, clamp_probability, require_disjoint

DEFAULT_TABLE_BUDGET = 2**24


@dataclass(frozen=True)
class _Factor:
    vars: tuple[int, ...]  # sorted variable indices
    table: np.ndarray      # shape = cards of vars, in order


def _cpt_factor(net: Network, child: int, bound: Mapping[int, int]) -> _Factor:
    """CPT as a factor, sliced at any bound variables."""
    cpt = net.cpts[child]
    scope = cpt.parents + (child,)
    table = cpt.table
    keep: list[int] = []
    slicer: list[object] = []
    for axis, v in enumerate(scope):
        if v in bound:
            slicer.append(bound[v])
        else:
            slicer.append(slice(None))
            keep.append(v)
    table = table[tuple(slicer)]
    order = np.argsort(keep, kind="stable")
    sorted_vars = tuple(keep[i] for i in order)
    if list(order) != list(range(len(keep))):
        table = table.transpose(order)
    return _Factor(sorted_vars, table)


def _multiply(factors: Sequence[_Factor]) -> _Factor:
    union: list[int] = sorted({v for f in factors for v in f.vars})
    pos = {v: i for i, v in enumerate(union)}
    shape = [1] * len(union)
    out = None
    for f in factors:
        arr = f.table
        axes = [pos[v] for v in f.vars]
        expanded_shape = list(shape)
        for ax, v in zip(axes, f.vars):
            expanded_shape[ax] = arr.shape[f.vars.index(v)]
        # factor vars are sorted, so axes are increasing; reshape suffices
        view = arr.reshape(expanded_shape)
        out = view if out is None else out * view
    if out is None:
        out = np.array(1.0)
    return _Factor(tuple(union), np.asarray(out, dtype=np.float64))


def _sum_out(factor: _Factor, var: int) -> _Factor:
    axis = factor.vars.index(var)
    return _Factor(
        tuple(v for v in factor.vars if v != var), factor.table.sum(axis=axis)
    )


def _min_degree_order(scopes: list[set[int]], eliminate: set[int]) -> list[int]:
    """Min-degree elimination ordering on the factor interaction graph."""
    neighbors: dict[int, set[int]] = {v: set() for v in eliminate}
    for scope in scopes:
        for v in scope:
            if v in neighbors:
                neighbors[v] |= scope - {v}
    order = []
    remaining = set(eliminate)
    while remaining:
        v = min(remaining, key=lambda u: (len(neighbors[u] & remaining), u))
        order.append(v)
        remaining.discard(v)
        nbrs = neighbors[v] & remaining
        for a in nbrs:
            neighbors[a] |= nbrs - {a}
    return order


def _eliminate(
    factors: list[_Factor], eliminate: set[int]
) -> list[_Factor]:
    order = _min_degree_order([set(f.vars) for f in factors], eliminate)
    for v in order:
        related = [f for f in factors if v in f.vars]
        if not related:
            continue
        factors = [f for f in factors if v not in f.vars]
        factors.append(_sum_out(_multiply(related), v))
    return factors


def _event_probability(net: Network, assignment: Mapping[str, int]) -> float:
    """P(assignment) for any partial assignment, by variable elimination."""
    bound = {net.index[name]: state for name, state in assignment.items()}
    factors = [_cpt_factor(net, child, bound) for child in range(net.n_vars)]
    free = set(range(net.n_vars)) - bound.keys()
    remaining = _eliminate(factors, free)
    value = 1.0
    for f in remaining:
        value *= float(f.table.reshape(-1).sum()) if f.vars else float(f.table)
    return clamp_probability(value)


def joint_probability(net: Network, full: Assignment) -> float:
    """Chain-rule product over every CPT; requires a full assignment."""
    net.check_assignment(full, "assignment")
    if len(full) != net.n_vars:
        missing = [v.name for v in net.variables if v.name not in full]
        raise ValueError("assignment leaves unbound: " + ", ".join(sorted(missing)))
    states = {net.index[name]: s for name, s in full.items()}
    p = 1.0
    for child in range(net.n_vars):
        cpt = net.cpts[child]
        row_idx = tuple(states[par] for par in cpt.parents)
        p *= float(cpt.table[row_idx + (states[child],)])
    return clamp_probability(p)


def prior_probability(net: Network, partial: Assignment) -> float:
    """P(partial), summing the joint over all completions."""
    if not partial:
        raise ValueError("partial assignment must be non-empty")
    net.check_assignment(partial, "partial")
    return _event_probability(net, partial)


def posterior_probability(
    net: Network, partial: Assignment, evidence: Assignment
) -> float:
    """P(partial | evidence) by exact inference."""
    if not partial:
        raise ValueError("partial assignment must be non-empty")
    if not evidence:
        raise ValueError("evidence must be non-empty")
    net.check_assignment(partial, "partial")
    net.check_assignment(evidence, "evidence")
    require_disjoint(("partial", partial), ("evidence", evidence))
    p_e = _event_probability(net, evidence)
    if p_e <= 0.0:
        raise ZeroProbabilityEvidence(
            "evidence has probability zero: " + net.format_assignment(evidence)
        )
    p_both = _event_probability(net, {**partial, **evidence})
    return clamp_probability(p_both / p_e, "posterior")


@dataclass(frozen=True)
class TargetTables:
    """Joint prior and posterior distributions over a set of variables.

    Axis order follows ``order`` (network variable order).  Any partial
    probability over these variables is a sum over the matching slice.
    """

    order: tuple[str, ...]
    prior: np.ndarray
    posterior: np.ndarray

    def partial_prior(self, partial: Mapping[str, int]) -> float:
        return self._partial(self.prior, partial)

    def partial_posterior(self, partial: Mapping[str, int]) -> float:
        return self._partial(self.posterior, partial)

    def _partial(self, table: np.ndarray, partial: Mapping[str, int]) -> float:
        slicer = tuple(partial.get(name, slice(None)) for name in self.order)
        value = table[slicer]
        return clamp_probability(float(np.sum(value)))


def target_tables(
    net: Network,
    targets: Sequence[str],
    evidence: Assignment,
    table_budget: int = DEFAULT_TABLE_BUDGET,
) -> TargetTables:
    """One inference pass yielding the full joint over ``targets``.

    Returns the distribution both unconditioned and conditioned on the
    evidence; scoring sums these tables instead of re-running inference
    per candidate.
    """
    if not targets:
        raise ValueError("targets must be non-empty")
    target_idx = sorted({net.index[name] for name in targets})
    if len(target_idx) != len(targets):
        raise ValueError("duplicate target variables")
    net.check_assignment(evidence, "evidence")
    ev_idx = {net.index[name] for name in evidence}
    if ev_idx & set(target_idx):
        raise ValueError("targets and evidence must be disjoint")
    size = math.prod(net.variables[i].card for i in target_idx)
    if size > table_budget:
        raise BudgetExceeded(
            f"joint table over targets needs {size} entries, budget is {table_budget}"
        )

    order = tuple(net.variables[i].name for i in target_idx)

    def joint_over_targets(bound_names: Mapping[str, int]) -> np.ndarray:
        bound = {net.index[name]: s for name, s in bound_names.items()}
        factors = [_cpt_factor(net, child, bound) for child in range(net.n_vars)]
        free = set(range(net.n_vars)) - bound.keys() - set(target_idx)
        remaining = _eliminate(factors, free)
        joint = _multiply(remaining)
        # every target's own CPT keeps it in scope, so the joint covers all
        assert joint.vars == tuple(target_idx)
        return np.ascontiguousarray(joint.table, dtype=np.float64)

    prior = joint_over_targets({})
    if evidence:
        unnorm = joint_over_targets(evidence)
        p_e = float(unnorm.sum())
        if p_e <= 0.0:
            raise ZeroProbabilityEvidence(
                "evidence has probability zero: " + net.format_assignment(evidence)
            )
        posterior = unnorm / p_e
    else:
        posterior = prior.copy()
    return TargetTables(order, prior, posterior)
