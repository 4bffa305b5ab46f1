"""Exterior algebra on the dual of a coordinate space, as exact matrices.

Basis of Lambda^k V* : lexicographically ordered strictly increasing index
tuples (i_1 < ... < i_k); theta^I denotes the dual basis form of the tuple I.
All operators are built as sparse matrices over these bases, so every matrix
is reproducible bit for bit from the structure constants.

Sign conventions (indices 1-based inside the formulas):

* differential:  (d phi)(v_1,...,v_{k+1}) =
      sum_{i<j} (-1)^(i+j) phi([v_i,v_j], v_1,..., omit v_i, v_j, ...)
  The quotient-complex differential built in ``relative`` uses the same
  alternating sum with the opposite overall sign; the chain-map identities
  verified in ``koszul`` are the executable arbiter that the two conventions
  compose coherently.
* interior product:  (i_x a)(v_2,...,v_k) = a(x, v_2,...,v_k)
* Lie derivative along an endomorphism A of V:
      (theta_A a)(v_1,...,v_k) = - sum_t a(v_1,..., A v_t, ..., v_k)
  For a Lie algebra element x, theta_x uses A = ad_x.
* wedge: shuffle convention, so theta^I ^ theta^J is the merge sign times
  theta^(I union J), with no factorial normalization.
* alternation: plain signed sum over permutations, no 1/k! factor (the field
  is Q and nonzero-class detection is normalization independent).
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations

from .errors import DimensionMismatch, InputError
from .linalg import Matrix, det_dense
from .rationals import format_rational, parse_rational


@lru_cache(maxsize=None)
def multi_indices(n: int, k: int):
    """All degree-k multi-indices on n letters, lexicographically ordered."""
    if k < 0 or k > n:
        return ()
    return tuple(combinations(range(n), k))


@lru_cache(maxsize=None)
def multi_index_positions(n: int, k: int):
    return {idx: pos for pos, idx in enumerate(multi_indices(n, k))}


def basis_size(n: int, k: int) -> int:
    return len(multi_indices(n, k))


def _insert(index_tuple, m):
    """Insert m into a strictly increasing tuple; (position, tuple) or None."""
    pos = bisect_left(index_tuple, m)
    if pos < len(index_tuple) and index_tuple[pos] == m:
        return None
    return pos, index_tuple[:pos] + (m,) + index_tuple[pos:]


def merge_sign(left, right):
    """Merge two disjoint increasing tuples; (sign, merged) or None."""
    sign = 1
    merged = []
    i = j = 0
    while i < len(left) and j < len(right):
        a, b = left[i], right[j]
        if a == b:
            return None
        if a < b:
            merged.append(a)
            i += 1
        else:
            merged.append(b)
            j += 1
            if (len(left) - i) % 2:
                sign = -sign
    merged.extend(left[i:])
    merged.extend(right[j:])
    return sign, tuple(merged)


def perm_sign(perm) -> int:
    sign = 1
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                sign = -sign
    return sign


# ---------------------------------------------------------------------------
# forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=True)
class Form:
    """A degree-k element of Lambda^k V* with sparse rational coefficients."""

    ambient_dim: int
    degree: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for idx, value in self.coeffs.items():
            idx = tuple(idx)
            value = Fraction(parse_rational(value))
            if len(idx) != self.degree:
                raise InputError(f"index {idx} has length != degree {self.degree}")
            if any(not 0 <= i < self.ambient_dim for i in idx):
                raise InputError(f"index {idx} outside dimension {self.ambient_dim}")
            if any(idx[t] >= idx[t + 1] for t in range(len(idx) - 1)):
                raise InputError(f"index {idx} is not strictly increasing")
            if value:
                clean[idx] = value
        object.__setattr__(self, "coeffs", clean)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "Form") -> "Form":
        if (self.ambient_dim, self.degree) != (other.ambient_dim, other.degree):
            raise DimensionMismatch("forms live in different spaces")
        coeffs = dict(self.coeffs)
        for idx, v in other.coeffs.items():
            coeffs[idx] = coeffs.get(idx, Fraction(0)) + v
        return Form(self.ambient_dim, self.degree, coeffs)

    def scale(self, c) -> "Form":
        return Form(self.ambient_dim, self.degree, {i: c * v for i, v in self.coeffs.items()})

    def __neg__(self) -> "Form":
        return self.scale(-1)

    def to_vector(self):
        positions = multi_index_positions(self.ambient_dim, self.degree)
        vec = [Fraction(0)] * len(positions)
        for idx, v in self.coeffs.items():
            vec[positions[idx]] = v
        return vec

    @staticmethod
    def from_vector(n: int, k: int, vec) -> "Form":
        basis = multi_indices(n, k)
        if len(vec) != len(basis):
            raise DimensionMismatch(f"vector length {len(vec)} != dim of degree {k}")
        return Form(n, k, {idx: v for idx, v in zip(basis, vec) if v})

    def evaluate(self, vectors):
        """Pair the form with a list of coordinate vectors."""
        if len(vectors) != self.degree:
            raise DimensionMismatch(f"need {self.degree} vectors, got {len(vectors)}")
        for v in vectors:
            if len(v) != self.ambient_dim:
                raise DimensionMismatch("vector length != ambient dimension")
        total = Fraction(0)
        for idx, c in self.coeffs.items():
            sub = [[Fraction(v[i]) for v in vectors] for i in idx]
            total += c * det_dense(sub)
        return total


def basis_form(n: int, idx) -> Form:
    return Form(n, len(idx), {tuple(idx): Fraction(1)})


def wedge(a: Form, b: Form) -> Form:
    """Exterior product with the shuffle sign convention."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("wedge of forms over different spaces")
    coeffs = {}
    for ia, va in a.coeffs.items():
        for ib, vb in b.coeffs.items():
            merged = merge_sign(ia, ib)
            if merged is None:
                continue
            sign, idx = merged
            coeffs[idx] = coeffs.get(idx, Fraction(0)) + sign * va * vb
    return Form(a.ambient_dim, a.degree + b.degree, coeffs)


def interior(x, a: Form) -> Form:
    """Contraction i_x a; on 0-forms this is the zero form."""
    if len(x) != a.ambient_dim:
        raise DimensionMismatch("vector length != ambient dimension")
    if a.degree == 0:
        return Form(a.ambient_dim, 0, {})
    coeffs = {}
    for idx, v in a.coeffs.items():
        for p, i in enumerate(idx):
            if x[i]:
                rest = idx[:p] + idx[p + 1:]
                sign = -1 if p % 2 else 1
                coeffs[rest] = coeffs.get(rest, Fraction(0)) + sign * x[i] * v
    return Form(a.ambient_dim, a.degree - 1, coeffs)


def lie_derivative(g, x, a: Form) -> Form:
    """theta_x a for a Lie algebra g and coordinate vector x."""
    if g.dim != a.ambient_dim or len(x) != g.dim:
        raise DimensionMismatch("vector or form does not match the algebra")
    op = endo_action_matrix(g.adjoint_matrix(x), g.dim, a.degree)
    return Form.from_vector(g.dim, a.degree, op.apply(a.to_vector()))


def alternation(n: int, degree: int, table) -> Form:
    """Alternate a multilinear map given on basis tuples.

    ``table`` is either a mapping from length-``degree`` index tuples to
    scalars or a callable on such tuples.  The result is the plain signed
    permutation sum, so alternating an already alternating map multiplies
    it by degree!.
    """
    get = table.__getitem__ if hasattr(table, "__getitem__") else table
    coeffs = {}
    for idx in multi_indices(n, degree):
        total = Fraction(0)
        for perm in permutations(range(degree)):
            value = get(tuple(idx[p] for p in perm))
            if value:
                total += perm_sign(perm) * Fraction(parse_rational(value))
        if total:
            coeffs[idx] = total
    return Form(n, degree, coeffs)


# ---------------------------------------------------------------------------
# operators as matrices over the multi-index bases
# ---------------------------------------------------------------------------

def alternating_differential_matrix(n: int, bracket_fn, k: int, flip_sign=False) -> Matrix:
    """Degree k -> k+1 matrix of the alternating-sum differential.

    ``bracket_fn(i, j)`` returns [e_i, e_j] as a sparse dict for i < j.  The
    entry on output index J and input index I accumulates
    (-1)^(a+b) c * (insertion sign), a < b ranging over positions of J;
    ``flip_sign`` selects the opposite overall sign convention.
    """
    rows = multi_indices(n, k + 1)
    cols = multi_index_positions(n, k)
    flip = -1 if flip_sign else 1
    entries = {}
    for row_pos, J in enumerate(rows):
        for a in range(k + 1):
            for b in range(a + 1, k + 1):
                bracket = bracket_fn(J[a], J[b])
                if not bracket:
                    continue
                pair_sign = flip if (a + b) % 2 == 0 else -flip
                rest = tuple(x for t, x in enumerate(J) if t != a and t != b)
                for m, c in bracket.items():
                    ins = _insert(rest, m)
                    if ins is None:
                        continue
                    pos, I = ins
                    sign = pair_sign if pos % 2 == 0 else -pair_sign
                    key = (row_pos, cols[I])
                    entries[key] = entries.get(key, Fraction(0)) + sign * c
    return Matrix(len(rows), len(cols), entries)


def ce_differential(g, k: int) -> Matrix:
    """Chevalley-Eilenberg differential d: Lambda^k g* -> Lambda^(k+1) g*."""
    if k > g.dim:
        raise DimensionMismatch(f"degree {k} exceeds dimension {g.dim}")
    return alternating_differential_matrix(g.dim, g.bracket_basis, k)


def endo_action_matrix(a: Matrix, n: int, k: int) -> Matrix:
    """Matrix on Lambda^k V* of theta_A for an endomorphism A of V."""
    if a.shape != (n, n):
        raise DimensionMismatch(f"endomorphism shape {a.shape} != ({n}, {n})")
    by_col = {}
    for (m, j), v in a.entries.items():
        by_col.setdefault(j, []).append((m, v))
    indices = multi_indices(n, k)
    cols = multi_index_positions(n, k)
    entries = {}
    for row_pos, J in enumerate(indices):
        for t, jt in enumerate(J):
            for m, v in by_col.get(jt, ()):
                rest = J[:t] + J[t + 1:]
                ins = _insert(rest, m)
                if ins is None:
                    continue
                pos, I = ins
                sign = -1 if (t - pos) % 2 == 0 else 1
                key = (row_pos, cols[I])
                entries[key] = entries.get(key, Fraction(0)) + sign * v
    return Matrix(len(indices), len(indices), entries)


def lie_derivative_matrix(g, x, k: int) -> Matrix:
    return endo_action_matrix(g.adjoint_matrix(x), g.dim, k)


def interior_matrix(x, n: int, k: int) -> Matrix:
    """Matrix of i_x: Lambda^k V* -> Lambda^(k-1) V*."""
    if len(x) != n:
        raise DimensionMismatch("vector length != ambient dimension")
    rows = multi_index_positions(n, k - 1)
    cols = multi_indices(n, k)
    entries = {}
    for col_pos, I in enumerate(cols):
        for p, i in enumerate(I):
            if x[i]:
                rest = I[:p] + I[p + 1:]
                sign = -1 if p % 2 else 1
                key = (rows[rest], col_pos)
                entries[key] = entries.get(key, Fraction(0)) + sign * x[i]
    return Matrix(len(rows), len(cols), entries)


def pullback_matrix(f: Matrix, k: int) -> Matrix:
    """Matrix of the pullback on Lambda^k along a linear map.

    For f: V -> W of shape (dim W, dim V), returns the map
    Lambda^k W* -> Lambda^k V* whose entries are the k x k minors of f:
    entry[I, J] = det f[J, I] (rows J, columns I).
    """
    dim_w, dim_v = f.shape
    rows_idx = multi_indices(dim_v, k)
    cols_idx = multi_indices(dim_w, k)
    if k == 0:
        return Matrix(1, 1, {(0, 0): 1})
    fd = f.rows_dense()
    entries = {}
    for col_pos, J in enumerate(cols_idx):
        sub_rows = [fd[j] for j in J]
        if all(not any(r) for r in sub_rows):
            continue
        for row_pos, I in enumerate(rows_idx):
            minor = det_dense([[r[i] for i in I] for r in sub_rows])
            if minor:
                entries[(row_pos, col_pos)] = minor
    return Matrix(len(rows_idx), len(cols_idx), entries)


def wedge_vector(n: int, k: int, v, l: int, w):
    """Wedge two coordinate vectors of Lambda^k V* and Lambda^l V*."""
    out_positions = multi_index_positions(n, k + l)
    out = [Fraction(0)] * len(out_positions)
    if not out_positions:
        return out
    vk = multi_indices(n, k)
    wl = multi_indices(n, l)
    for pa, va in enumerate(v):
        if not va:
            continue
        ia = vk[pa]
        for pb, vb in enumerate(w):
            if not vb:
                continue
            merged = merge_sign(ia, wl[pb])
            if merged is None:
                continue
            sign, idx = merged
            out[out_positions[idx]] += sign * va * vb
    return out


# ---------------------------------------------------------------------------
# JSON form serialization
# ---------------------------------------------------------------------------

def form_to_json(a: Form) -> dict:
    terms = [[list(idx), format_rational(v)] for idx, v in sorted(a.coeffs.items())]
    return {"degree": a.degree, "terms": terms}


def form_from_json(data, ambient_dim: int) -> Form:
    if not isinstance(data, dict) or "degree" not in data:
        raise InputError("form must be an object with 'degree' and 'terms'")
    coeffs = {}
    for entry in data.get("terms", []):
        idx, value = entry
        coeffs[tuple(idx)] = parse_rational(value)
    return Form(ambient_dim, data["degree"], coeffs)
