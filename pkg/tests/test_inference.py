"""Exact inference against the enumeration oracle."""

import math

import numpy as np
import pytest

import oracle
from netgen import random_network
from mrex import (
    CPT,
    BudgetExceeded,
    Network,
    Variable,
    ZeroProbabilityEvidence,
    joint_probability,
    parse_network,
    posterior_probability,
    prior_probability,
    target_tables,
)

TOL = 1e-9


def _one_node(p=0.3):
    v = Variable("X", ("a", "b"), "observation")
    return Network("one", (v,), (CPT(0, (), np.array([p, 1 - p])),))


def _two_independent():
    vs = (
        Variable("P", ("a", "b"), "observation"),
        Variable("Q", ("a", "b"), "observation"),
    )
    cpts = (
        CPT(0, (), np.array([0.3, 0.7])),
        CPT(1, (), np.array([0.5, 0.5])),
    )
    return Network("two", vs, cpts)


def test_joint_reads_single_cpt():
    assert joint_probability(_one_node(), {"X": 0}) == pytest.approx(0.3, abs=TOL)


def test_joint_product_of_independent_priors():
    net = _two_independent()
    assert joint_probability(net, {"P": 0, "Q": 0}) == pytest.approx(0.15, abs=TOL)


def test_joint_circuit_regression(circuit):
    # every gate ok and current applied: all downstream outputs stay dark
    full = {
        "Input": 1, "A": 0, "B": 0, "C": 0, "D": 0,
        "OutputA": 0, "OutputB": 0, "OutputC": 0, "OutputD": 0,
        "TotalOutput": 0,
    }
    assert joint_probability(circuit, full) == pytest.approx(0.338742, abs=TOL)


def test_joint_requires_full_assignment(circuit):
    with pytest.raises(ValueError, match="unbound"):
        joint_probability(circuit, {"A": 0})


def test_prior_circuit_values(circuit):
    assert prior_probability(circuit, {"A": 1}) == pytest.approx(0.016, abs=TOL)
    # gates close independently, so the pair is a straight product
    assert prior_probability(circuit, {"B": 1, "C": 1}) == pytest.approx(
        0.015, abs=TOL
    )


def test_prior_marginalization_totality(circuit):
    for name in ("A", "OutputB", "TotalOutput"):
        total = sum(
            prior_probability(circuit, {name: s})
            for s in range(circuit.var(name).card)
        )
        assert total == pytest.approx(1.0, abs=TOL)


def test_posterior_circuit_value(circuit, circuit_evidence):
    p = posterior_probability(circuit, {"B": 1}, circuit_evidence)
    assert p == pytest.approx(0.6508166709786668, abs=TOL)


def test_posterior_of_dseparated_variable_equals_prior():
    text = """\
network dsep
var A role=observation states=a,b
var B role=observation states=a,b
var C role=observation states=a,b
cpt A
0.4 0.6
cpt B parents=A
0.2 0.8
0.7 0.3
cpt C
0.35 0.65
"""
    net = parse_network(text)
    assert posterior_probability(net, {"C": 0}, {"B": 1}) == pytest.approx(
        prior_probability(net, {"C": 0}), abs=TOL
    )


def test_zero_probability_evidence_raises():
    text = """\
network det
var A role=observation states=a,b
var B role=observation states=a,b
cpt A
1.0 0.0
cpt B parents=A
1.0 0.0
0.0 1.0
"""
    net = parse_network(text)
    with pytest.raises(ZeroProbabilityEvidence):
        posterior_probability(net, {"A": 0}, {"B": 1})


@pytest.mark.parametrize("seed", range(12))
def test_random_networks_match_enumeration(seed):
    rng = np.random.default_rng(1000 + seed)
    net = random_network(rng, n_vars=6, cards=(2, 3))
    joint = oracle.full_joint(net)
    names = [v.name for v in net.variables]
    picked = rng.choice(len(names), size=4, replace=False)
    x = {names[i]: int(rng.integers(net.variables[i].card)) for i in picked[:2]}
    e = {names[i]: int(rng.integers(net.variables[i].card)) for i in picked[2:]}
    assert prior_probability(net, x) == pytest.approx(
        oracle.prob(net, joint, x), abs=TOL
    )
    assert posterior_probability(net, x, e) == pytest.approx(
        oracle.posterior(net, joint, x, e), abs=TOL
    )


@pytest.mark.parametrize("seed", range(5))
def test_marginalization_consistency(seed):
    # extending a partial by one variable and summing over its states
    # reproduces the smaller partial's probability
    rng = np.random.default_rng(1500 + seed)
    net = random_network(rng, n_vars=6, cards=(2, 3))
    names = [v.name for v in net.variables]
    picked = rng.choice(len(names), size=3, replace=False)
    x = {names[i]: int(rng.integers(net.variables[i].card)) for i in picked[:2]}
    extra = names[picked[2]]
    total = sum(
        prior_probability(net, {**x, extra: s})
        for s in range(net.var(extra).card)
    )
    assert total == pytest.approx(prior_probability(net, x), abs=TOL)


def test_oracle_self_check():
    rng = np.random.default_rng(5)
    net = random_network(rng, n_vars=5, cards=(2, 3))
    fast = oracle.full_joint(net)
    slow = oracle.chain_product_joint(net)
    assert np.allclose(fast, slow, atol=1e-12)
    assert fast.sum() == pytest.approx(1.0, abs=TOL)


def test_target_tables_normalization_and_crosschecks(circuit, circuit_evidence):
    tables = target_tables(circuit, ["A", "B", "C", "D"], circuit_evidence)
    assert tables.prior.size == 16 and tables.posterior.size == 16
    assert tables.prior.sum() == pytest.approx(1.0, abs=TOL)
    assert tables.posterior.sum() == pytest.approx(1.0, abs=TOL)
    # independence product at the all-defective corner
    assert tables.prior[1, 1, 1, 1] == pytest.approx(2.4e-5, abs=TOL)
    # table sums agree with the per-query operations
    assert tables.partial_posterior({"B": 1}) == pytest.approx(
        posterior_probability(circuit, {"B": 1}, circuit_evidence), abs=TOL
    )
    assert tables.partial_prior({"B": 1, "C": 1}) == pytest.approx(
        prior_probability(circuit, {"B": 1, "C": 1}), abs=TOL
    )


def test_target_tables_random_cross_check():
    rng = np.random.default_rng(77)
    net = random_network(rng, n_vars=7, cards=(2, 3))
    names = [v.name for v in net.variables]
    targets = names[:3]
    e = {names[-1]: 0}
    tables = target_tables(net, targets, e)
    joint = oracle.full_joint(net)
    for t in targets:
        for s in range(net.var(t).card):
            assert tables.partial_posterior({t: s}) == pytest.approx(
                oracle.posterior(net, joint, {t: s}, e), abs=TOL
            )


def test_target_tables_budget(circuit, circuit_evidence):
    with pytest.raises(BudgetExceeded):
        target_tables(circuit, ["A", "B", "C", "D"], circuit_evidence, table_budget=8)


def test_target_tables_rejects_overlap(circuit):
    with pytest.raises(ValueError, match="disjoint"):
        target_tables(circuit, ["A", "B"], {"A": 0})
