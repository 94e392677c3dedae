"""Network model, file parsing, and validation errors."""

import numpy as np
import pytest

from mrex import (
    CPT,
    Network,
    NetworkFormatError,
    Variable,
    format_network,
    parse_bindings,
    parse_network,
)

MINIMAL = """\
network tiny
var X role=observation states=a,b
cpt X
0.3 0.7
"""


def test_parse_minimal_single_variable():
    net = parse_network(MINIMAL)
    assert net.name == "tiny"
    assert net.n_vars == 1
    assert net.variables[0].states == ("a", "b")
    assert np.allclose(net.cpts[0].table, [0.3, 0.7])


def test_parse_circuit_fixture(circuit):
    assert circuit.n_vars == 10
    assert circuit.targets() == ("A", "B", "C", "D")
    assert circuit.observations() == ("TotalOutput",)
    assert circuit.var("B").normal_state == "ok"
    # OR gate has one row per parent-state combination
    assert circuit.cpts[circuit.index["TotalOutput"]].table.shape == (2, 2, 2, 2)


def test_format_round_trips(circuit):
    text = format_network(circuit)
    again = parse_network(text)
    assert again.targets() == circuit.targets()
    for a, b in zip(again.cpts, circuit.cpts):
        assert np.array_equal(a.table, b.table)


def test_unnormalized_row_rejected():
    bad = MINIMAL.replace("0.3 0.7", "0.5 0.6")
    with pytest.raises(NetworkFormatError, match="sums to"):
        parse_network(bad)


def test_syntax_error_carries_line_number():
    bad = MINIMAL.replace("cpt X", "cpt X parents=")
    # empty parents attribute is fine; break something real instead
    bad = MINIMAL.replace("var X role=observation states=a,b", "var X states=a,b")
    with pytest.raises(NetworkFormatError, match="line 2"):
        parse_network(bad)


def test_cycle_rejected():
    text = """\
network loop
var X role=auxiliary states=a,b
var Y role=auxiliary states=a,b
cpt X parents=Y
0.5 0.5
0.5 0.5
cpt Y parents=X
0.5 0.5
0.5 0.5
"""
    with pytest.raises(NetworkFormatError, match="cyclic"):
        parse_network(text)


def test_target_requires_normal_state():
    text = MINIMAL.replace("role=observation", "role=target")
    with pytest.raises(NetworkFormatError, match="normal"):
        parse_network(text)


def test_probability_outside_unit_interval_rejected():
    bad = MINIMAL.replace("0.3 0.7", "1.3 -0.3")
    with pytest.raises(NetworkFormatError, match="outside"):
        parse_network(bad)


def test_duplicate_and_missing_cpts_rejected():
    with pytest.raises(NetworkFormatError, match="duplicate cpt"):
        parse_network(MINIMAL + "cpt X\n0.3 0.7\n")
    with pytest.raises(NetworkFormatError, match="missing cpt"):
        parse_network("network n\nvar X role=observation states=a,b\n")


def test_variable_invariants():
    with pytest.raises(ValueError, match="two states"):
        Variable("X", ("only",), "auxiliary")
    with pytest.raises(ValueError, match="duplicate state"):
        Variable("X", ("a", "a"), "auxiliary")
    with pytest.raises(ValueError, match="normal state"):
        Variable("X", ("a", "b"), "auxiliary", "zz")


def test_network_checks_cpt_shape():
    v = Variable("X", ("a", "b"), "auxiliary")
    bad = CPT(0, (), np.array([[0.5, 0.5], [0.5, 0.5]]))
    with pytest.raises(ValueError, match="shape"):
        Network("n", (v,), (bad,))


def test_parse_bindings(circuit):
    bound = parse_bindings(circuit, "B=defective,C=ok")
    assert bound == {"B": 1, "C": 0}
    assert parse_bindings(circuit, "") == {}
    with pytest.raises(NetworkFormatError, match="item 1"):
        parse_bindings(circuit, "B:bad")
    with pytest.raises(NetworkFormatError, match="item 2"):
        parse_bindings(circuit, "B=defective,B=ok")
    with pytest.raises(NetworkFormatError, match="no state"):
        parse_bindings(circuit, "B=broken")
    with pytest.raises(NetworkFormatError, match="unknown variable"):
        parse_bindings(circuit, "Z=ok")
