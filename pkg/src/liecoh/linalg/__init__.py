"""Sparse exact matrices over the rationals with deterministic elimination.

All ranks, kernels and solutions are computed by integer-preserving Gaussian
elimination with a fixed pivot rule (first nonzero by row-major scan), so
results are reproducible bit for bit.  Rows are cleared of denominators and
reduced with cross-multiplication updates followed by gcd stripping; no
floating point appears anywhere.

The elimination inner loop is the hot kernel of the whole library.  It is
implemented twice with identical semantics: a compiled Cython extension
(``_kernel``) and a pure-Python fallback (``_kernel_py``).  The compiled one
is picked at import time when available; set ``LIECOH_PURE_PYTHON=1`` to
force the fallback.  ``bench/bench_kernel.py`` compares the two.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import lcm

if os.environ.get("LIECOH_PURE_PYTHON"):
    from . import _kernel_py as _kernel
else:
    try:
        from . import _kernel  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as _kernel  # type: ignore[no-redef]

row_reduce = _kernel.row_reduce


def kernel_backend() -> str:
    """Name of the elimination kernel in use: "cython" or "pure-python"."""
    return _kernel.BACKEND


def clear_denominators(row):
    """Scale a row of rationals to coprime integers (positive scale)."""
    mult = 1
    for x in row:
        d = x.denominator if isinstance(x, Fraction) else 1
        if d != 1:
            mult = lcm(mult, d)
    if mult == 1:
        return [x.numerator if isinstance(x, Fraction) else x for x in row]
    return [
        (x.numerator * (mult // x.denominator)) if isinstance(x, Fraction) else x * mult
        for x in row
    ]


class Matrix:
    """Immutable sparse exact matrix.

    Entries are stored as a dict ``(i, j) -> value`` of nonzero rationals
    (ints or Fractions).  Row index i runs over ``nrows``, column index j
    over ``ncols``.  A matrix representing a linear map V -> W has shape
    (dim W, dim V) and acts on coordinate columns.
    """

    __slots__ = ("nrows", "ncols", "entries", "_rank", "_solver")

    def __init__(self, nrows: int, ncols: int, entries=None):
        self.nrows = nrows
        self.ncols = ncols
        clean = {}
        if entries:
            for (i, j), v in entries.items():
                if v:
                    if not (0 <= i < nrows and 0 <= j < ncols):
                        raise IndexError(f"entry ({i}, {j}) outside {nrows}x{ncols}")
                    clean[(i, j)] = v
        self.entries = clean
        self._rank = None
        self._solver = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def zeros(nrows: int, ncols: int) -> "Matrix":
        return Matrix(nrows, ncols)

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(n, n, {(i, i): 1 for i in range(n)})

    @staticmethod
    def from_rows(rows, ncols=None) -> "Matrix":
        rows = list(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        entries = {}
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                if v:
                    entries[(i, j)] = v
        return Matrix(len(rows), ncols, entries)

    @staticmethod
    def from_cols(cols, nrows=None) -> "Matrix":
        cols = list(cols)
        if nrows is None:
            nrows = len(cols[0]) if cols else 0
        entries = {}
        for j, col in enumerate(cols):
            for i, v in enumerate(col):
                if v:
                    entries[(i, j)] = v
        return Matrix(nrows, len(cols), entries)

    # -- access --------------------------------------------------------

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def entry(self, i: int, j: int):
        return self.entries.get((i, j), 0)

    def row_dense(self, i: int):
        row = [0] * self.ncols
        for (r, c), v in self.entries.items():
            if r == i:
                row[c] = v
        return row

    def col_dense(self, j: int):
        col = [0] * self.nrows
        for (r, c), v in self.entries.items():
            if c == j:
                col[r] = v
        return col

    def rows_dense(self):
        rows = [[0] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def cols_dense(self):
        cols = [[0] * self.nrows for _ in range(self.ncols)]
        for (i, j), v in self.entries.items():
            cols[j][i] = v
        return cols

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.entries == other.entries
        )

    def __hash__(self):
        raise TypeError("Matrix is not hashable")

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, {len(self.entries)} nonzero)"

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        entries = dict(self.entries)
        for key, v in other.entries.items():
            s = entries.get(key, 0) + v
            if s:
                entries[key] = s
            else:
                entries.pop(key, None)
        return Matrix(self.nrows, self.ncols, entries)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        return Matrix(self.nrows, self.ncols, {k: -v for k, v in self.entries.items()})

    def scale(self, c) -> "Matrix":
        if not c:
            return Matrix.zeros(self.nrows, self.ncols)
        return Matrix(self.nrows, self.ncols, {k: c * v for k, v in self.entries.items()})

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        by_col = {}
        for (k, i), v in self.entries.items():
            by_col.setdefault(i, []).append((k, v))
        acc = {}
        for (k, j), w in other.entries.items():
            for i, v in by_col.get(k, ()):
                key = (i, j)
                s = acc.get(key, 0) + v * w
                if s:
                    acc[key] = s
                else:
                    del acc[key]
        return Matrix(self.nrows, other.ncols, acc)

    def apply(self, vec):
        """Matrix-vector product on a coordinate sequence."""
        if len(vec) != self.ncols:
            raise ValueError(f"vector length {len(vec)} != ncols {self.ncols}")
        out = [0] * self.nrows
        for (i, j), v in self.entries.items():
            x = vec[j]
            if x:
                out[i] = out[i] + v * x
        return out

    def transpose(self) -> "Matrix":
        return Matrix(self.ncols, self.nrows, {(j, i): v for (i, j), v in self.entries.items()})

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        entries = dict(self.entries)
        for (i, j), v in other.entries.items():
            entries[(i, j + self.ncols)] = v
        return Matrix(self.nrows, self.ncols + other.ncols, entries)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch")
        entries = dict(self.entries)
        for (i, j), v in other.entries.items():
            entries[(i + self.nrows, j)] = v
        return Matrix(self.nrows + other.nrows, self.ncols, entries)

    @staticmethod
    def stack_rows(matrices, ncols: int) -> "Matrix":
        """Vertical stack; degenerate (0-row) blocks are allowed."""
        entries = {}
        offset = 0
        for m in matrices:
            if m.ncols != ncols:
                raise ValueError("column count mismatch")
            for (i, j), v in m.entries.items():
                entries[(i + offset, j)] = v
            offset += m.nrows
        return Matrix(offset, ncols, entries)

    def submatrix_cols(self, cols) -> "Matrix":
        index = {c: j for j, c in enumerate(cols)}
        entries = {}
        for (i, c), v in self.entries.items():
            j = index.get(c)
            if j is not None:
                entries[(i, j)] = v
        return Matrix(self.nrows, len(index), entries)

    # -- elimination-backed operations --------------------------------

    def _int_rows(self):
        rows = self.rows_dense()
        return [clear_denominators(r) for r in rows]

    def rank(self) -> int:
        if self._rank is None:
            rows = self._int_rows()
            self._rank = len(row_reduce(rows, self.ncols, False))
        return self._rank

    def rref(self):
        """Deterministic reduced echelon data.

        Returns ``(pivots, rows)`` where pivots are (row, col) pairs in
        creation order and rows are the reduced rows as Fractions with
        pivot entries normalized to 1.
        """
        rows = self._int_rows()
        pivots = row_reduce(rows, self.ncols, True)
        out = []
        for ri, ci in pivots:
            piv = rows[ri][ci]
            out.append([Fraction(x, piv) for x in rows[ri]])
        return [(k, ci) for k, (_, ci) in enumerate(pivots)], out

    def nullspace(self):
        """Canonical kernel basis (one vector per free column, ascending)."""
        pivots, rows = self.rref()
        pivot_cols = {ci: k for k, ci in pivots}
        basis = []
        for f in range(self.ncols):
            if f in pivot_cols:
                continue
            vec = [Fraction(0)] * self.ncols
            vec[f] = Fraction(1)
            for k, ci in pivots:
                vec[ci] = -rows[k][f]
            basis.append(vec)
        return basis

    def solver(self) -> "ColumnSolver":
        if self._solver is None:
            self._solver = ColumnSolver(self)
        return self._solver

    def solve(self, b):
        """One solution of A x = b, or None if inconsistent."""
        return self.solver().solve(b)


class ColumnSolver:
    """Solve A x = b repeatedly for a fixed matrix A, exactly.

    The constructor reduces the tableau [A | I] once; each ``solve`` is then
    a pass of dot products.  The particular solution returned sets all free
    variables to zero, so it is deterministic.  When the system is
    inconsistent, ``solve_with_certificate`` returns a rational row vector
    lam with lam @ A = 0 and lam @ b != 0.
    """

    def __init__(self, a: Matrix):
        self.nrows = a.nrows
        self.ncols = a.ncols
        rows = a.rows_dense()
        for i, row in enumerate(rows):
            ext = row + [0] * a.nrows
            ext[a.ncols + i] = 1
            rows[i] = clear_denominators(ext)
        self.pivots = row_reduce(rows, a.ncols, True)
        self.rows = rows
        self.pivot_rows = {ri for ri, _ in self.pivots}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _transformed(self, ri, b):
        n = self.ncols
        row = self.rows[ri]
        total = 0
        for j, x in enumerate(b):
            if x:
                t = row[n + j]
                if t:
                    total += t * x
        return total

    def solve_with_certificate(self, b):
        if len(b) != self.nrows:
            raise ValueError(f"rhs length {len(b)} != nrows {self.nrows}")
        for ri in range(self.nrows):
            if ri in self.pivot_rows:
                continue
            t = self._transformed(ri, b)
            if t:
                n = self.ncols
                cert = [Fraction(self.rows[ri][n + j]) for j in range(self.nrows)]
                return None, cert
        x = [Fraction(0)] * self.ncols
        for ri, ci in self.pivots:
            t = self._transformed(ri, b)
            if t:
                x[ci] = Fraction(t, 1) / self.rows[ri][ci]
        return x, None

    def solve(self, b):
        x, _ = self.solve_with_certificate(b)
        return x


class SpanBuilder:
    """Incremental membership test for a growing subspace of Q^dim.

    Maintains a reduced row basis; intended for the small coordinate spaces
    of cohomology classes, so it works directly with Fractions.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.rows = []  # (lead column, row with lead entry 1), sorted by lead

    @property
    def rank(self) -> int:
        return len(self.rows)

    def residual(self, vec):
        vec = [Fraction(x) for x in vec]
        for lead, row in self.rows:
            c = vec[lead]
            if c:
                for j in range(self.dim):
                    vec[j] -= c * row[j]
        return vec

    def contains(self, vec) -> bool:
        return not any(self.residual(vec))

    def insert(self, vec) -> bool:
        """Add a vector; returns True if the span grew."""
        res = self.residual(vec)
        lead = next((j for j, x in enumerate(res) if x), None)
        if lead is None:
            return False
        piv = res[lead]
        row = [x / piv for x in res]
        for other_lead, other in self.rows:
            c = other[lead]
            if c:
                for j in range(self.dim):
                    other[j] -= c * row[j]
        self.rows.append((lead, row))
        self.rows.sort(key=lambda t: t[0])
        return True

    def basis(self):
        return [list(row) for _, row in self.rows]


def det_dense(rows) -> Fraction:
    """Determinant of a small dense square matrix by rational elimination."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    m = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        piv = m[c][c]
        det *= piv
        for r in range(c + 1, n):
            f = m[r][c] / piv
            if f:
                for j in range(c, n):
                    m[r][j] -= f * m[c][j]
    return det
