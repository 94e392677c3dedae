"""Discrete Bayesian network model and its text file format.

The file format is line oriented and self-describing:

    network <name>
    var <name> role=<target|observation|auxiliary> states=<s1,s2,...> [normal=<state>]
    cpt <child> [parents=<p1,p2,...>]
    <p1 p2 ...>        # one row per parent-state combination, child states across

CPT rows run in row-major order over the parent states with the *last*
parent varying fastest.  Lines starting with ``#`` are comments; blank
lines are ignored.  Probabilities are plain decimals, files are UTF-8.

Assignments (evidence, explanations, samples) are plain dicts mapping a
variable name to a state index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .errors import NetworkFormatError

Assignment = dict[str, int]

ROLES = ("target", "observation", "auxiliary")

ROW_SUM_TOL = 1e-9
PROB_CLAMP_TOL = 1e-12


def clamp_probability(value: float, what: str = "probability") -> float:
    """Snap values within 1e-12 of [0, 1] back onto the interval.

    Larger violations indicate a bug upstream and raise.
    """
    if 0.0 <= value <= 1.0:
        return float(value)
    if -PROB_CLAMP_TOL <= value < 0.0:
        return 0.0
    if 1.0 < value <= 1.0 + PROB_CLAMP_TOL:
        return 1.0
    raise ValueError(f"{what} out of range: {value!r}")


@dataclass(frozen=True)
class Variable:
    """A discrete variable with a diagnostic role annotation."""

    name: str
    states: tuple[str, ...]
    role: str
    normal_state: str | None = None

    def __post_init__(self):
        if len(self.states) < 2:
            raise ValueError(f"variable {self.name!r} needs at least two states")
        if len(set(self.states)) != len(self.states):
            raise ValueError(f"variable {self.name!r} has duplicate state names")
        if self.role not in ROLES:
            raise ValueError(f"variable {self.name!r} has unknown role {self.role!r}")
        if self.role == "target" and self.normal_state is None:
            raise ValueError(f"target variable {self.name!r} lacks a normal state")
        if self.normal_state is not None and self.normal_state not in self.states:
            raise ValueError(
                f"variable {self.name!r}: normal state {self.normal_state!r} "
                "is not one of its states"
            )

    @property
    def card(self) -> int:
        return len(self.states)

    @property
    def normal_index(self) -> int | None:
        if self.normal_state is None:
            return None
        return self.states.index(self.normal_state)

    def state_index(self, state: str) -> int:
        try:
            return self.states.index(state)
        except ValueError:
            raise ValueError(
                f"variable {self.name!r} has no state {state!r}"
            ) from None


@dataclass(frozen=True)
class CPT:
    """P(child | parents) as an array of shape (*parent_cards, child_card)."""

    child: int
    parents: tuple[int, ...]
    table: np.ndarray

    def row(self, parent_states: tuple[int, ...]) -> np.ndarray:
        return self.table[parent_states]


@dataclass
class Network:
    """An immutable-after-construction discrete Bayesian network.

    Safe to share across threads once built; inference never mutates it.
    """

    name: str
    variables: tuple[Variable, ...]
    cpts: tuple[CPT, ...]
    index: dict[str, int] = field(init=False)
    topo_order: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        self.index = {v.name: i for i, v in enumerate(self.variables)}
        if len(self.index) != len(self.variables):
            raise ValueError("duplicate variable names")
        if len(self.cpts) != len(self.variables):
            raise ValueError("exactly one CPT per variable is required")
        for i, cpt in enumerate(self.cpts):
            if cpt.child != i:
                raise ValueError("cpts must be listed in variable order")
            expected = tuple(self.variables[p].card for p in cpt.parents) + (
                self.variables[i].card,
            )
            if cpt.table.shape != expected:
                raise ValueError(
                    f"CPT for {self.variables[i].name!r} has shape "
                    f"{cpt.table.shape}, expected {expected}"
                )
        self.topo_order = self._toposort()

    def _toposort(self) -> tuple[int, ...]:
        n = len(self.variables)
        children: list[list[int]] = [[] for _ in range(n)]
        pending = [0] * n
        for i, cpt in enumerate(self.cpts):
            pending[i] = len(cpt.parents)
            for p in cpt.parents:
                children[p].append(i)
        ready = sorted(i for i in range(n) if pending[i] == 0)
        order: list[int] = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for c in children[v]:
                pending[c] -= 1
                if pending[c] == 0:
                    ready.append(c)
            ready.sort()
        if len(order) != n:
            cyclic = [self.variables[i].name for i in range(n) if pending[i] > 0]
            raise NetworkFormatError(
                "cyclic parent structure involving " + ", ".join(sorted(cyclic))
            )
        return tuple(order)

    @property
    def n_vars(self) -> int:
        return len(self.variables)

    def cards(self) -> tuple[int, ...]:
        return tuple(v.card for v in self.variables)

    def var(self, name: str) -> Variable:
        return self.variables[self.index[name]]

    def targets(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables if v.role == "target")

    def observations(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables if v.role == "observation")

    def check_assignment(self, assignment: Mapping[str, int], what: str = "assignment"):
        for name, state in assignment.items():
            if name not in self.index:
                raise ValueError(f"{what} binds unknown variable {name!r}")
            card = self.variables[self.index[name]].card
            if not (0 <= state < card):
                raise ValueError(
                    f"{what} binds {name!r} to invalid state index {state}"
                )

    def format_assignment(self, assignment: Mapping[str, int]) -> str:
        parts = [
            f"{name}={self.var(name).states[state]}"
            for name, state in sorted(assignment.items())
        ]
        return ",".join(parts)


def _split_attrs(tokens: list[str], lineno: int) -> dict[str, str]:
    attrs = {}
    for tok in tokens:
        if "=" not in tok:
            raise NetworkFormatError(f"expected key=value, got {tok!r}", lineno)
        key, _, value = tok.partition("=")
        if key in attrs:
            raise NetworkFormatError(f"duplicate attribute {key!r}", lineno)
        attrs[key] = value
    return attrs


def parse_network(text: str) -> Network:
    """Parse a network file, validating CPT normalization and acyclicity."""
    lines = text.splitlines()
    name: str | None = None
    variables: list[Variable] = []
    var_index: dict[str, int] = {}
    # (child name, parent names, rows, declaration line)
    cpt_decls: list[tuple[str, list[str], list[list[float]], int]] = []
    current: tuple[str, list[str], list[list[float]], int] | None = None

    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        head = fields[0]
        if head == "network":
            if name is not None:
                raise NetworkFormatError("duplicate network header", lineno)
            if len(fields) != 2:
                raise NetworkFormatError("expected: network <name>", lineno)
            name = fields[1]
        elif head == "var":
            if len(fields) < 2:
                raise NetworkFormatError("expected: var <name> ...", lineno)
            vname = fields[1]
            if vname in var_index:
                raise NetworkFormatError(f"duplicate variable {vname!r}", lineno)
            attrs = _split_attrs(fields[2:], lineno)
            unknown = set(attrs) - {"role", "states", "normal"}
            if unknown:
                raise NetworkFormatError(
                    f"unknown attribute(s): {', '.join(sorted(unknown))}", lineno
                )
            if "role" not in attrs or "states" not in attrs:
                raise NetworkFormatError(
                    f"variable {vname!r} needs role= and states=", lineno
                )
            states = tuple(s for s in attrs["states"].split(",") if s)
            try:
                var = Variable(vname, states, attrs["role"], attrs.get("normal"))
            except ValueError as exc:
                raise NetworkFormatError(str(exc), lineno) from None
            var_index[vname] = len(variables)
            variables.append(var)
        elif head == "cpt":
            if len(fields) < 2:
                raise NetworkFormatError("expected: cpt <child> ...", lineno)
            child = fields[1]
            if child not in var_index:
                raise NetworkFormatError(f"cpt for unknown variable {child!r}", lineno)
            attrs = _split_attrs(fields[2:], lineno)
            unknown = set(attrs) - {"parents"}
            if unknown:
                raise NetworkFormatError(
                    f"unknown attribute(s): {', '.join(sorted(unknown))}", lineno
                )
            parents = [p for p in attrs.get("parents", "").split(",") if p]
            for p in parents:
                if p not in var_index:
                    raise NetworkFormatError(f"unknown parent {p!r}", lineno)
            current = (child, parents, [], lineno)
            cpt_decls.append(current)
        else:
            # a probability row for the open cpt block
            if current is None:
                raise NetworkFormatError(f"unexpected line: {line!r}", lineno)
            try:
                row = [float(tok) for tok in fields]
            except ValueError:
                raise NetworkFormatError(
                    f"expected probabilities, got {line!r}", lineno
                ) from None
            for p in row:
                if not (0.0 <= p <= 1.0):
                    raise NetworkFormatError(f"probability {p!r} outside [0, 1]", lineno)
            if not math.isclose(sum(row), 1.0, rel_tol=0.0, abs_tol=ROW_SUM_TOL):
                raise NetworkFormatError(
                    f"CPT row sums to {sum(row)!r}, expected 1.0", lineno
                )
            current[2].append(row)

    if name is None:
        raise NetworkFormatError("missing network header")
    if not variables:
        raise NetworkFormatError("network declares no variables")

    seen = set()
    cpts: list[CPT | None] = [None] * len(variables)
    for child, parents, rows, lineno in cpt_decls:
        if child in seen:
            raise NetworkFormatError(f"duplicate cpt for {child!r}", lineno)
        seen.add(child)
        child_idx = var_index[child]
        parent_idx = tuple(var_index[p] for p in parents)
        child_card = variables[child_idx].card
        parent_cards = tuple(variables[p].card for p in parent_idx)
        n_rows = math.prod(parent_cards) if parent_cards else 1
        if len(rows) != n_rows:
            raise NetworkFormatError(
                f"cpt for {child!r} has {len(rows)} rows, expected {n_rows}", lineno
            )
        for row in rows:
            if len(row) != child_card:
                raise NetworkFormatError(
                    f"cpt row for {child!r} has {len(row)} entries, "
                    f"expected {child_card}",
                    lineno,
                )
        table = np.asarray(rows, dtype=np.float64).reshape(parent_cards + (child_card,))
        cpts[child_idx] = CPT(child_idx, parent_idx, table)
    missing = [v.name for v, c in zip(variables, cpts) if c is None]
    if missing:
        raise NetworkFormatError("missing cpt for " + ", ".join(sorted(missing)))

    return Network(name, tuple(variables), tuple(cpts))  # type: ignore[arg-type]


def format_network(net: Network) -> str:
    """Render a network back into its file form (round-trips with parse)."""
    out = [f"network {net.name}"]
    for v in net.variables:
        line = f"var {v.name} role={v.role} states={','.join(v.states)}"
        if v.normal_state is not None:
            line += f" normal={v.normal_state}"
        out.append(line)
    for v, cpt in zip(net.variables, net.cpts):
        if cpt.parents:
            parents = ",".join(net.variables[p].name for p in cpt.parents)
            out.append(f"cpt {v.name} parents={parents}")
        else:
            out.append(f"cpt {v.name}")
        rows = cpt.table.reshape(-1, v.card)
        for row in rows:
            out.append(" ".join(repr(float(p)) for p in row))
    return "\n".join(out) + "\n"


def parse_bindings(net: Network, text: str, what: str = "bindings") -> Assignment:
    """Parse ``Var=state,Var=state`` against a network, case sensitively."""
    bindings: Assignment = {}
    if not text.strip():
        return bindings
    for pos, token in enumerate(text.split(","), start=1):
        token = token.strip()
        if "=" not in token:
            raise NetworkFormatError(
                f"{what}, item {pos}: expected Var=state, got {token!r}"
            )
        vname, _, sname = token.partition("=")
        if vname not in net.index:
            raise NetworkFormatError(
                f"{what}, item {pos}: unknown variable {vname!r}"
            )
        var = net.var(vname)
        if sname not in var.states:
            raise NetworkFormatError(
                f"{what}, item {pos}: variable {vname!r} has no state {sname!r}"
            )
        if vname in bindings:
            raise NetworkFormatError(
                f"{what}, item {pos}: variable {vname!r} bound twice"
            )
        bindings[vname] = var.state_index(sname)
    return bindings


def disjoint(a: Mapping[str, int], b: Mapping[str, int]) -> bool:
    return not (a.keys() & b.keys())


def require_disjoint(*named: tuple[str, Mapping[str, int]]):
    for i, (name_a, a) in enumerate(named):
        for name_b, b in named[i + 1 :]:
            shared = a.keys() & b.keys()
            if shared:
                raise ValueError(
                    f"{name_a} and {name_b} both bind: " + ", ".join(sorted(shared))
                )


def variables_subset(names: Iterable[str], net: Network) -> tuple[int, ...]:
    """Resolve variable names to indices, keeping network order."""
    idx = []
    for name in names:
        if name not in net.index:
            raise ValueError(f"unknown variable {name!r}")
        idx.append(net.index[name])
    return tuple(sorted(set(idx)))
