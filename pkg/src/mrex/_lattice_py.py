"""Numpy implementations of the lattice sweeps.

The lattice over a set of target variables extends each axis with an
"unbound" slot at index 0, so cell values cover every partial assignment
at once.  The compiled module ``_latticec`` implements the same four
sweeps as fused C loops; this module is the always-available fallback
and the reference for both.
"""

from __future__ import annotations

import numpy as np


def _ax(nd: int, axis: int, s: slice) -> tuple:
    return tuple(s if i == axis else slice(None) for i in range(nd))


def axis_sums(ext: np.ndarray) -> None:
    """Fill index 0 of every axis with the sum over that axis' states.

    Accumulates state by state, last axis first, so results are
    bit-identical to the compiled sweep.
    """
    for axis in reversed(range(ext.ndim)):
        acc = np.zeros_like(ext[_ax(ext.ndim, axis, slice(0, 1))])
        for j in range(1, ext.shape[axis]):
            acc += ext[_ax(ext.ndim, axis, slice(j, j + 1))]
        ext[_ax(ext.ndim, axis, slice(0, 1))] = acc


def cell_scores(
    e0: np.ndarray, e1: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Odds-form score per cell from extended prior/posterior tables.

    Returns (score, eff, valid): cells with prior outside (0, 1) are
    invalid (score 0, eff -inf); posterior 0 scores 0; posterior 1
    scores +inf.
    """
    valid = (e0 > 0.0) & (e0 < 1.0)
    score = np.zeros_like(e0)
    finite = valid & (e1 > 0.0) & (e1 < 1.0)
    np.divide(
        e1 * (1.0 - e0), e0 * (1.0 - e1), out=score, where=finite
    )
    score[valid & (e1 >= 1.0)] = np.inf
    eff = np.where(valid, score, -np.inf)
    return score, eff, valid


def strict_subset_max(eff: np.ndarray) -> np.ndarray:
    """Per cell, the best score over its strict sub-assignments."""
    incl = eff.copy()
    nd = incl.ndim
    for axis in range(nd):
        lo = _ax(nd, axis, slice(0, 1))
        hi = _ax(nd, axis, slice(1, None))
        np.maximum(incl[hi], incl[lo], out=incl[hi])
    out = np.full_like(eff, -np.inf)
    for axis in range(nd):
        lo = _ax(nd, axis, slice(0, 1))
        hi = _ax(nd, axis, slice(1, None))
        np.maximum(out[hi], incl[lo], out=out[hi])
    return out


def strict_superset_max(eff: np.ndarray) -> np.ndarray:
    """Per cell, the best score over its strict super-assignments."""
    incl = eff.copy()
    nd = incl.ndim
    for axis in range(nd):
        lo = _ax(nd, axis, slice(0, 1))
        hi = _ax(nd, axis, slice(1, None))
        incl[lo] = np.maximum(incl[lo], incl[hi].max(axis=axis, keepdims=True))
    out = np.full_like(eff, -np.inf)
    for axis in range(nd):
        lo = _ax(nd, axis, slice(0, 1))
        hi = _ax(nd, axis, slice(1, None))
        out[lo] = np.maximum(out[lo], incl[hi].max(axis=axis, keepdims=True))
    return out
