# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled lattice sweeps; mirrors ``_lattice_py`` on flat C-order arrays."""

from libc.math cimport INFINITY


def axis_sums(double[::1] ext, Py_ssize_t[::1] ext_cards):
    cdef Py_ssize_t n = ext.shape[0]
    cdef Py_ssize_t naxes = ext_cards.shape[0]
    cdef Py_ssize_t stride = 1
    cdef Py_ssize_t ax, m, block, outer, o, i, j, base
    cdef double s
    for ax in range(naxes - 1, -1, -1):
        m = ext_cards[ax]
        block = m * stride
        outer = n // block
        for o in range(outer):
            base = o * block
            for i in range(stride):
                s = 0.0
                for j in range(1, m):
                    s += ext[base + j * stride + i]
                ext[base + i] = s
        stride = block


def cell_scores(double[::1] e0, double[::1] e1,
                double[::1] score, double[::1] eff,
                unsigned char[::1] valid):
    cdef Py_ssize_t n = e0.shape[0]
    cdef Py_ssize_t i
    cdef double p0, p1
    for i in range(n):
        p0 = e0[i]
        p1 = e1[i]
        if p0 <= 0.0 or p0 >= 1.0:
            valid[i] = 0
            score[i] = 0.0
            eff[i] = -INFINITY
        else:
            valid[i] = 1
            if p1 <= 0.0:
                score[i] = 0.0
            elif p1 >= 1.0:
                score[i] = INFINITY
            else:
                score[i] = (p1 * (1.0 - p0)) / (p0 * (1.0 - p1))
            eff[i] = score[i]


def subset_incl_max(double[::1] m, Py_ssize_t[::1] ext_cards):
    cdef Py_ssize_t n = m.shape[0]
    cdef Py_ssize_t naxes = ext_cards.shape[0]
    cdef Py_ssize_t stride = 1
    cdef Py_ssize_t ax, card, block, outer, o, i, j, base, idx
    cdef double v0
    for ax in range(naxes - 1, -1, -1):
        card = ext_cards[ax]
        block = card * stride
        outer = n // block
        for o in range(outer):
            base = o * block
            for i in range(stride):
                v0 = m[base + i]
                for j in range(1, card):
                    idx = base + j * stride + i
                    if m[idx] < v0:
                        m[idx] = v0
        stride = block


def strict_subset_from_incl(double[::1] incl, double[::1] out,
                            Py_ssize_t[::1] ext_cards):
    cdef Py_ssize_t n = incl.shape[0]
    cdef Py_ssize_t naxes = ext_cards.shape[0]
    cdef Py_ssize_t stride = 1
    cdef Py_ssize_t ax, card, block, outer, o, i, j, base, idx
    cdef double v0
    for i in range(n):
        out[i] = -INFINITY
    for ax in range(naxes - 1, -1, -1):
        card = ext_cards[ax]
        block = card * stride
        outer = n // block
        for o in range(outer):
            base = o * block
            for i in range(stride):
                v0 = incl[base + i]
                for j in range(1, card):
                    idx = base + j * stride + i
                    if out[idx] < v0:
                        out[idx] = v0
        stride = block


def superset_incl_max(double[::1] m, Py_ssize_t[::1] ext_cards):
    cdef Py_ssize_t n = m.shape[0]
    cdef Py_ssize_t naxes = ext_cards.shape[0]
    cdef Py_ssize_t stride = 1
    cdef Py_ssize_t ax, card, block, outer, o, i, j, base, idx
    cdef double best
    for ax in range(naxes - 1, -1, -1):
        card = ext_cards[ax]
        block = card * stride
        outer = n // block
        for o in range(outer):
            base = o * block
            for i in range(stride):
                best = m[base + i]
                for j in range(1, card):
                    idx = base + j * stride + i
                    if m[idx] > best:
                        best = m[idx]
                m[base + i] = best
        stride = block


def strict_superset_from_incl(double[::1] incl, double[::1] out,
                              Py_ssize_t[::1] ext_cards):
    cdef Py_ssize_t n = incl.shape[0]
    cdef Py_ssize_t naxes = ext_cards.shape[0]
    cdef Py_ssize_t stride = 1
    cdef Py_ssize_t ax, card, block, outer, o, i, j, base, idx
    cdef double best
    for i in range(n):
        out[i] = -INFINITY
    for ax in range(naxes - 1, -1, -1):
        card = ext_cards[ax]
        block = card * stride
        outer = n // block
        for o in range(outer):
            base = o * block
            for i in range(stride):
                best = out[base + i]
                for j in range(1, card):
                    idx = base + j * stride + i
                    if incl[idx] > best:
                        best = incl[idx]
                out[base + i] = best
        stride = block
