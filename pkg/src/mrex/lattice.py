"""Backend selection and the lattice scoring pipeline.

The exhaustive search scores every partial assignment of the targets.
Rather than one inference call per candidate, the joint prior/posterior
tables are extended with an "unbound" slot per axis (index 0), after
which every cell holds the probability of one partial assignment, and
dominance checks reduce to strict subset/superset maxima over the
lattice.  That sweep is the hot loop; a Cython core is used when built,
with this numpy fallback otherwise.  Set ``MREX_PURE_PYTHON=1`` to force
the fallback.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from . import _lattice_py

if os.environ.get("MREX_PURE_PYTHON", "").strip() not in ("", "0"):
    _latticec = None
else:
    try:
        from . import _latticec  # type: ignore[attr-defined]
    except ImportError:
        _latticec = None

BACKEND = "compiled" if _latticec is not None else "python"


@dataclass(frozen=True)
class LatticeScores:
    """Scores and dominance verdicts for every partial assignment.

    Arrays are indexed by extended state (0 = variable unbound,
    i+1 = state i), one axis per target in ``order``.
    """

    order: tuple[str, ...]
    ext_prior: np.ndarray
    ext_posterior: np.ndarray
    score: np.ndarray
    valid: np.ndarray
    minimal: np.ndarray

    @property
    def n_candidates(self) -> int:
        return self.score.size - 1  # the all-unbound cell is not a candidate


def _extend(table: np.ndarray, backend: str) -> np.ndarray:
    ext_shape = tuple(s + 1 for s in table.shape)
    ext = np.zeros(ext_shape, dtype=np.float64)
    ext[(slice(1, None),) * table.ndim] = table
    if backend == "compiled":
        cards = np.asarray(ext_shape, dtype=np.intp)
        _latticec.axis_sums(ext.reshape(-1), cards)
    else:
        _lattice_py.axis_sums(ext)
    return ext


def compute_lattice(
    prior: np.ndarray,
    posterior: np.ndarray,
    order: tuple[str, ...],
    backend: str | None = None,
) -> LatticeScores:
    """Run the full sweep: extend, score, and mark minimal cells.

    A cell is minimal when no strict sub-assignment scores at least as
    high and no strict super-assignment scores strictly higher.
    """
    if backend is None:
        backend = BACKEND
    if backend == "compiled" and _latticec is None:
        raise RuntimeError("compiled lattice backend is not available")
    if backend not in ("compiled", "python"):
        raise ValueError(f"unknown backend {backend!r}")

    e0 = _extend(prior, backend)
    e1 = _extend(posterior, backend)
    np.clip(e0, 0.0, 1.0, out=e0)
    np.clip(e1, 0.0, 1.0, out=e1)

    if backend == "compiled":
        cards = np.asarray(e0.shape, dtype=np.intp)
        score = np.empty_like(e0)
        eff = np.empty_like(e0)
        valid = np.empty(e0.shape, dtype=np.uint8)
        _latticec.cell_scores(
            e0.reshape(-1), e1.reshape(-1), score.reshape(-1),
            eff.reshape(-1), valid.reshape(-1),
        )
        eff.reshape(-1)[0] = -np.inf
        valid.reshape(-1)[0] = 0
        score.reshape(-1)[0] = 0.0
        incl = eff.copy()
        _latticec.subset_incl_max(incl.reshape(-1), cards)
        sub = np.empty_like(eff)
        _latticec.strict_subset_from_incl(incl.reshape(-1), sub.reshape(-1), cards)
        incl[...] = eff
        _latticec.superset_incl_max(incl.reshape(-1), cards)
        sup = np.empty_like(eff)
        _latticec.strict_superset_from_incl(incl.reshape(-1), sup.reshape(-1), cards)
        valid_b = valid.astype(bool)
    else:
        score, eff, valid_b = _lattice_py.cell_scores(e0, e1)
        eff.reshape(-1)[0] = -np.inf
        valid_b.reshape(-1)[0] = False
        score.reshape(-1)[0] = 0.0
        sub = _lattice_py.strict_subset_max(eff)
        sup = _lattice_py.strict_superset_max(eff)

    minimal = valid_b & (sub < eff) & (sup <= eff)
    return LatticeScores(order, e0, e1, score, valid_b, minimal)


def decode_cell(flat_index: int, ext_shape: tuple[int, ...]) -> tuple[int, ...]:
    """Flat index into extended digits (0 = unbound, i+1 = state i)."""
    digits = []
    for size in reversed(ext_shape):
        flat_index, d = divmod(flat_index, size)
        digits.append(d)
    return tuple(reversed(digits))
