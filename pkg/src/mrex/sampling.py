"""Ancestral (forward) sampling.

All randomness flows from explicit seeds or caller-owned generators, so
parallel use means distinct seeds rather than shared state.
"""

from __future__ import annotations

import numpy as np

from .network import Assignment, Network


def sample_assignment(net: Network, rng: np.random.Generator) -> Assignment:
    """Draw one full assignment in topological order from ``rng``."""
    states: dict[int, int] = {}
    for v in net.topo_order:
        cpt = net.cpts[v]
        row = cpt.table[tuple(states[p] for p in cpt.parents)]
        u = rng.random()
        states[v] = int(np.searchsorted(np.cumsum(row), u, side="right"))
        if states[v] >= len(row):  # guard against cumsum rounding at 1.0
            states[v] = len(row) - 1
    return {net.variables[v].name: s for v, s in states.items()}


def forward_sample(net: Network, seed: int) -> Assignment:
    """One full sample; identical seeds give identical assignments."""
    return sample_assignment(net, np.random.default_rng(seed))
