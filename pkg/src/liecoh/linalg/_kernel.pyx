# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled integer row-reduction kernel.

Mirror of ``_kernel_py.row_reduce`` (the pure-Python fallback); both must
produce bit-identical results.  Entries are arbitrary-precision Python ints,
so arithmetic stays in the CPython object layer; the speedup comes from
removing interpreter dispatch in the inner loops.
"""

from math import gcd

BACKEND = "cython"


def row_reduce(list rows, Py_ssize_t lead, bint full):
    """Reduce integer rows in place; return pivots as (row, col) pairs.

    See ``_kernel_py.row_reduce`` for the full contract.
    """
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t width, i, j, lc, pr, pc, npiv, p
    cdef list row, prow, pivots
    cdef object x, piv, g, a, b, rg, v
    pivots = []
    if nrows == 0 or lead < 0:
        return pivots
    width = len(<list> rows[0])
    for i in range(nrows):
        row = <list> rows[i]
        npiv = len(pivots)
        for p in range(npiv):
            pr = <Py_ssize_t> (<tuple> pivots[p])[0]
            pc = <Py_ssize_t> (<tuple> pivots[p])[1]
            x = row[pc]
            if x != 0:
                prow = <list> rows[pr]
                piv = prow[pc]
                g = gcd(piv, x)
                a = piv // g
                b = x // g
                rg = 0
                for j in range(width):
                    v = a * row[j] - b * prow[j]
                    row[j] = v
                    if rg != 1:
                        rg = gcd(rg, v)
                if rg > 1:
                    for j in range(width):
                        row[j] = row[j] // rg
        lc = -1
        for j in range(lead):
            if row[j] != 0:
                lc = j
                break
        if lc < 0:
            continue
        rg = 0
        for j in range(width):
            if rg != 1:
                rg = gcd(rg, row[j])
        if row[lc] < 0:
            rg = -rg
        if rg != 1:
            for j in range(width):
                row[j] = row[j] // rg
        if full:
            piv = row[lc]
            npiv = len(pivots)
            for p in range(npiv):
                pr = <Py_ssize_t> (<tuple> pivots[p])[0]
                prow = <list> rows[pr]
                x = prow[lc]
                if x != 0:
                    g = gcd(piv, x)
                    a = piv // g
                    b = x // g
                    rg = 0
                    for j in range(width):
                        v = a * prow[j] - b * row[j]
                        prow[j] = v
                        if rg != 1:
                            rg = gcd(rg, v)
                    if rg > 1:
                        for j in range(width):
                            prow[j] = prow[j] // rg
        pivots.append((i, lc))
    return pivots
