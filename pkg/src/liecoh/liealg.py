"""Finite-dimensional Lie algebras over the rationals.

An algebra is a validated table of structure constants: [e_i, e_j] =
sum_k c[i][j][k] e_k.  The table is stored sparsely for i < j only; the
i > j half follows by antisymmetry.  Validation checks antisymmetry and the
Jacobi identity exactly and reports every violation.

Subalgebra pairs h < g carry a chosen coordinate complement representing
g/h and the matrices of the induced h-action on it.  All values are
immutable after construction and all operations are pure functions, so
everything here is safe to use from multiple threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations

from .errors import (
    AntisymmetryViolation,
    DependentVectors,
    InputError,
    InvalidParams,
    InvalidStructure,
    JacobiViolation,
    NotAHomomorphism,
    NotClosedUnderBracket,
    SubalgebraNotPreserved,
    UnknownBuiltin,
)
from .linalg import Matrix, clear_denominators, row_reduce
from .rationals import format_rational, parse_rational


@dataclass(frozen=True, eq=True)
class LieAlgebra:
    dim: int
    basis_names: tuple
    structure: dict  # (i, j) with i < j -> {k: coefficient}, zero rows absent

    def bracket_basis(self, i: int, j: int) -> dict:
        """[e_i, e_j] as a sparse coordinate dict (any index order)."""
        if i == j:
            return {}
        if i < j:
            return dict(self.structure.get((i, j), {}))
        return {k: -v for k, v in self.structure.get((j, i), {}).items()}

    def bracket_basis_vec(self, i: int, j: int):
        out = [0] * self.dim
        for k, v in self.bracket_basis(i, j).items():
            out[k] = v
        return out

    def bracket(self, x, y):
        """[x, y] for coordinate vectors x, y."""
        out = [0] * self.dim
        for (i, j), terms in self.structure.items():
            c = x[i] * y[j] - x[j] * y[i]
            if c:
                for k, v in terms.items():
                    out[k] = out[k] + c * v
        return out

    def adjoint_matrix(self, x) -> Matrix:
        """ad_x as a dim x dim matrix acting on coordinate columns."""
        entries = {}
        for (i, j), terms in self.structure.items():
            if x[i]:
                for k, v in terms.items():
                    entries[(k, j)] = entries.get((k, j), 0) + x[i] * v
            if x[j]:
                for k, v in terms.items():
                    entries[(k, i)] = entries.get((k, i), 0) - x[j] * v
        return Matrix(self.dim, self.dim, entries)

    def basis_vector(self, i: int):
        vec = [0] * self.dim
        vec[i] = 1
        return vec


def validate_structure(structure, dim: int, basis_names=None) -> LieAlgebra:
    """Validate a raw structure table and return the algebra.

    ``structure`` is either a mapping (i, j) -> {k: value} or an iterable of
    (i, j, k, value) entries; values may be Fractions, ints or "p/q" strings.
    Raises InvalidStructure carrying every violated identity: antisymmetry
    failures as (i, j, k) with the exact residual c[i][j][k] + c[j][i][k],
    and Jacobi failures as (i, j, k, l) with the coefficient of e_l in the
    cyclic sum [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j].
    """
    items = _normalize_table(structure, dim)
    violations = []

    upper = {}  # (i, j, k) with i < j -> accumulated value of c[i][j][k]
    lower = {}  # (i, j, k) with i < j -> accumulated value of c[j][i][k]
    diagonal = {}
    for i, j, k, v in items:
        if i == j:
            diagonal[(i, j, k)] = diagonal.get((i, j, k), Fraction(0)) + v
        elif i < j:
            upper[(i, j, k)] = upper.get((i, j, k), Fraction(0)) + v
        else:
            lower[(j, i, k)] = lower.get((j, i, k), Fraction(0)) + v
    for (i, j, k), v in sorted(diagonal.items()):
        if v:
            violations.append(AntisymmetryViolation(i, j, k, v))
    for key in sorted(set(upper) & set(lower)):
        residual = upper[key] + lower[key]
        if residual:
            violations.append(AntisymmetryViolation(*key, residual))

    table = {}
    for key in set(upper) | set(lower):
        i, j, k = key
        value = upper[key] if key in upper else -lower[key]
        if value:
            table.setdefault((i, j), {})[k] = value

    candidate = LieAlgebra(dim, _default_names(dim, basis_names), table)
    if not violations:
        for i, j, k in combinations(range(dim), 3):
            cyc = candidate.bracket(candidate.bracket_basis_vec(i, j), candidate.basis_vector(k))
            _add_into(cyc, candidate.bracket(candidate.bracket_basis_vec(j, k), candidate.basis_vector(i)))
            _add_into(cyc, candidate.bracket(candidate.bracket_basis_vec(k, i), candidate.basis_vector(j)))
            for l, v in enumerate(cyc):
                if v:
                    violations.append(JacobiViolation(i, j, k, l, Fraction(v)))
    if violations:
        raise InvalidStructure(violations)
    return candidate


def _normalize_table(structure, dim):
    items = []
    if hasattr(structure, "items"):
        for (i, j), terms in structure.items():
            for k, v in terms.items():
                items.append((i, j, k, v))
    else:
        for entry in structure:
            i, j, k, v = entry
            items.append((int(i), int(j), int(k), v))
    for i, j, k, _ in items:
        if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
            raise InputError(f"structure index ({i}, {j}, {k}) outside dimension {dim}")
    return [(i, j, k, Fraction(parse_rational(v))) for i, j, k, v in items]


def _add_into(target, other):
    for idx, v in enumerate(other):
        if v:
            target[idx] = target[idx] + v


def _default_names(dim, names):
    if names is None:
        return tuple(f"e{i + 1}" for i in range(dim))
    names = tuple(str(n) for n in names)
    if len(names) != dim:
        raise InputError(f"{len(names)} basis names for dimension {dim}")
    return names


def _unit(n, j):
    vec = [0] * n
    vec[j] = 1
    return vec


# ---------------------------------------------------------------------------
# builtin algebras
# ---------------------------------------------------------------------------

def _matrix_unit(n, a, b):
    m = [[Fraction(0)] * n for _ in range(n)]
    m[a][b] = Fraction(1)
    return m


def _mat_mul(a, b):
    n = len(a)
    return [
        [sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n)]
        for i in range(n)
    ]


def _mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _commutator(a, b):
    return _mat_sub(_mat_mul(a, b), _mat_mul(b, a))


def _from_matrix_basis(mats, names) -> LieAlgebra:
    """Structure constants of a bracket-closed list of n x n matrices."""
    dim = len(mats)
    flat = Matrix.from_cols([[x for row in m for x in row] for m in mats])
    solver = flat.solver()
    structure = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            comm = _commutator(mats[i], mats[j])
            coords = solver.solve([x for row in comm for x in row])
            if coords is None:
                raise NotClosedUnderBracket(i, j)
            terms = {k: v for k, v in enumerate(coords) if v}
            if terms:
                structure[(i, j)] = terms
    return LieAlgebra(dim, tuple(names), structure)


def gl_basis_names(n):
    return [f"E{a + 1}{b + 1}" for a in range(n) for b in range(n)]


def so_pairs(n):
    return [(a, b) for a in range(n) for b in range(a + 1, n)]


def builtin(name: str, n: int) -> LieAlgebra:
    """Construct a named algebra with its documented basis.

    gl(n): elementary matrices E_ab, row-major.
    sl(n): H_a = E_aa - E_(a+1)(a+1) for a < n-1, then E_ab (a != b) row-major.
    so(n): A_ab = E_ab - E_ba for a < b, lexicographic; n >= 2.
    abelian(n): x_1..x_n, all brackets zero.
    heisenberg(m), m = 2k+1: p_1..p_k, q_1..q_k, z with [p_i, q_i] = z.
    """
    if not isinstance(n, int) or isinstance(n, bool):
        raise InvalidParams(f"parameter must be an integer, got {n!r}")
    if name == "gl":
        if n < 1:
            raise InvalidParams("gl(n) needs n >= 1")
        mats = [_matrix_unit(n, a, b) for a in range(n) for b in range(n)]
        return _from_matrix_basis(mats, gl_basis_names(n))
    if name == "sl":
        if n < 2:
            raise InvalidParams("sl(n) needs n >= 2")
        mats = [
            _mat_sub(_matrix_unit(n, a, a), _matrix_unit(n, a + 1, a + 1))
            for a in range(n - 1)
        ]
        names = [f"H{a + 1}" for a in range(n - 1)]
        for a in range(n):
            for b in range(n):
                if a != b:
                    mats.append(_matrix_unit(n, a, b))
                    names.append(f"E{a + 1}{b + 1}")
        return _from_matrix_basis(mats, names)
    if name == "so":
        if n < 2:
            raise InvalidParams("so(n) needs n >= 2")
        mats = [
            _mat_sub(_matrix_unit(n, a, b), _matrix_unit(n, b, a)) for a, b in so_pairs(n)
        ]
        names = [f"A{a + 1}{b + 1}" for a, b in so_pairs(n)]
        return _from_matrix_basis(mats, names)
    if name == "abelian":
        if n < 1:
            raise InvalidParams("abelian(n) needs n >= 1")
        return LieAlgebra(n, tuple(f"x{i + 1}" for i in range(n)), {})
    if name == "heisenberg":
        if n < 3 or n % 2 == 0:
            raise InvalidParams("heisenberg(m) needs odd m >= 3")
        k = (n - 1) // 2
        names = [f"p{i + 1}" for i in range(k)] + [f"q{i + 1}" for i in range(k)] + ["z"]
        structure = {(i, k + i): {2 * k: Fraction(1)} for i in range(k)}
        return LieAlgebra(n, tuple(names), structure)
    raise UnknownBuiltin(f"unknown builtin algebra {name!r}")


def direct_sum(g: LieAlgebra, h: LieAlgebra):
    """Direct product g (+) h with zero cross brackets.

    Returns (sum, left_injection, right_injection); the injections are
    coordinate inclusion matrices of the two factors.
    """
    dim = g.dim + h.dim
    structure = {key: dict(terms) for key, terms in g.structure.items()}
    for (i, j), terms in h.structure.items():
        structure[(i + g.dim, j + g.dim)] = {k + g.dim: v for k, v in terms.items()}
    names = list(g.basis_names)
    for name in h.basis_names:
        while name in names:
            name = name + "'"
        names.append(name)
    total = LieAlgebra(dim, tuple(names), structure)
    left = Matrix(dim, g.dim, {(i, i): 1 for i in range(g.dim)})
    right = Matrix(dim, h.dim, {(g.dim + i, i): 1 for i in range(h.dim)})
    return total, left, right


# ---------------------------------------------------------------------------
# subalgebra pairs
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=True)
class SubalgebraPair:
    """A subalgebra h < g with a chosen coordinate complement for g/h."""

    ambient: LieAlgebra
    sub_basis: tuple       # h generators as coordinate vectors in g
    quotient_basis: tuple  # complement vectors representing g/h
    action: tuple          # per h generator, the induced matrix on g/h
    sub: LieAlgebra        # h with its own structure constants

    @property
    def dim_sub(self) -> int:
        return len(self.sub_basis)

    @property
    def dim_quotient(self) -> int:
        return len(self.quotient_basis)

    @cached_property
    def sub_matrix(self) -> Matrix:
        return Matrix.from_cols(self.sub_basis, self.ambient.dim)

    @cached_property
    def quotient_matrix(self) -> Matrix:
        return Matrix.from_cols(self.quotient_basis, self.ambient.dim)

    @cached_property
    def _basis_solver(self):
        return self.sub_matrix.hstack(self.quotient_matrix).solver()

    def decompose(self, vec):
        """Coordinates (h part, quotient part) of an ambient vector."""
        coords = self._basis_solver.solve(vec)
        return coords[: self.dim_sub], coords[self.dim_sub:]

    def project_quotient(self, vec):
        return self.decompose(vec)[1]

    @cached_property
    def projection_matrix(self) -> Matrix:
        """g -> g/h in coordinates (rows = quotient coordinate functionals)."""
        n = self.ambient.dim
        cols = [self.project_quotient(_unit(n, j)) for j in range(n)]
        return Matrix.from_cols(cols, self.dim_quotient)


def subalgebra(g: LieAlgebra, vectors, quotient=None) -> SubalgebraPair:
    """Validate h = span(vectors) < g and build the pair.

    The complement is chosen by greedy pivot completion of the given
    generators in ambient coordinates, unless an explicit ``quotient`` basis
    is supplied (it must complete the generators to a basis of g).
    """
    vectors = [tuple(Fraction(parse_rational(x)) for x in v) for v in vectors]
    for v in vectors:
        if len(v) != g.dim:
            raise InputError(f"subalgebra vector length {len(v)} != dim {g.dim}")
    r = len(vectors)
    sub_mat = Matrix.from_cols(vectors, g.dim)
    if sub_mat.rank() != r:
        raise DependentVectors("subalgebra generators are linearly dependent")

    solver = sub_mat.solver()
    h_structure = {}
    for a in range(r):
        for b in range(a + 1, r):
            coords = solver.solve(g.bracket(vectors[a], vectors[b]))
            if coords is None:
                raise NotClosedUnderBracket(a, b)
            terms = {k: v for k, v in enumerate(coords) if v}
            if terms:
                h_structure[(a, b)] = terms

    if quotient is None:
        pivots = row_reduce([clear_denominators(list(v)) for v in vectors], g.dim, False)
        pivot_cols = {c for _, c in pivots}
        quotient = [_unit(g.dim, j) for j in range(g.dim) if j not in pivot_cols]
    quotient = [tuple(Fraction(parse_rational(x)) for x in v) for v in quotient]
    if len(quotient) != g.dim - r:
        raise DependentVectors("complement size must equal dim g - dim h")
    full = Matrix.from_cols(list(vectors) + list(quotient), g.dim)
    if full.rank() != g.dim:
        raise DependentVectors("complement does not complete the subalgebra basis")

    full_solver = full.solver()
    action = []
    for a in range(r):
        cols = [full_solver.solve(g.bracket(vectors[a], q))[r:] for q in quotient]
        action.append(Matrix.from_cols(cols, len(quotient)))

    return SubalgebraPair(
        ambient=g,
        sub_basis=tuple(vectors),
        quotient_basis=tuple(quotient),
        action=tuple(action),
        sub=LieAlgebra(r, _sub_names(g, vectors), h_structure),
    )


def _sub_names(g, vectors):
    names = []
    for a, v in enumerate(vectors):
        support = [j for j, x in enumerate(v) if x]
        if len(support) == 1 and v[support[0]] == 1:
            names.append(g.basis_names[support[0]])
        else:
            names.append(f"h{a + 1}")
    return tuple(names)


def zero_subalgebra(g: LieAlgebra) -> SubalgebraPair:
    """The pair (g, 0); the quotient is g itself."""
    return subalgebra(g, [])


def full_subalgebra(g: LieAlgebra) -> SubalgebraPair:
    """The pair (g, g); the quotient is zero."""
    return subalgebra(g, [_unit(g.dim, i) for i in range(g.dim)])


# ---------------------------------------------------------------------------
# morphisms of pairs
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=True)
class PairMorphism:
    """A Lie algebra homomorphism H: g' -> g with H(h') contained in h."""

    source: SubalgebraPair
    target: SubalgebraPair
    matrix: Matrix  # shape (dim g, dim g')


def pair_morphism(source: SubalgebraPair, target: SubalgebraPair, matrix) -> PairMorphism:
    """Validate bracket preservation and subalgebra containment."""
    if not isinstance(matrix, Matrix):
        matrix = Matrix.from_rows(
            [[Fraction(parse_rational(x)) for x in row] for row in matrix]
        )
    gs, gt = source.ambient, target.ambient
    if matrix.shape != (gt.dim, gs.dim):
        raise InputError(
            f"morphism matrix shape {matrix.shape} != ({gt.dim}, {gs.dim})"
        )
    cols = matrix.cols_dense()
    for i in range(gs.dim):
        for j in range(i + 1, gs.dim):
            lhs = matrix.apply(gs.bracket_basis_vec(i, j))
            rhs = gt.bracket(cols[i], cols[j])
            if any(a != b for a, b in zip(lhs, rhs)):
                raise NotAHomomorphism(i, j)
    sub_solver = target.sub_matrix.solver()
    for a, v in enumerate(source.sub_basis):
        if sub_solver.solve(matrix.apply(v)) is None:
            raise SubalgebraNotPreserved(a)
    return PairMorphism(source=source, target=target, matrix=matrix)


def identity_morphism(pair: SubalgebraPair) -> PairMorphism:
    return PairMorphism(pair, pair, Matrix.identity(pair.ambient.dim))


def compose_morphisms(outer: PairMorphism, inner: PairMorphism) -> PairMorphism:
    if outer.source != inner.target:
        raise InputError("morphisms are not composable")
    return PairMorphism(inner.source, outer.target, outer.matrix @ inner.matrix)


# ---------------------------------------------------------------------------
# canonical embeddings used by the CLI shorthand
# ---------------------------------------------------------------------------

def so_in_gl_vectors(k: int, n: int):
    """Basis of so(k) inside gl(n) (upper-left block), as gl coordinates."""
    if k > n:
        raise InvalidParams(f"so({k}) does not embed in gl({n}) as a block")
    out = []
    for a, b in so_pairs(k):
        vec = [0] * (n * n)
        vec[a * n + b] = 1
        vec[b * n + a] = -1
        out.append(vec)
    return out


def so_in_so_vectors(k: int, n: int):
    """Basis of so(k) inside so(n) (upper-left block), as so(n) coordinates."""
    if k > n:
        raise InvalidParams(f"so({k}) does not embed in so({n}) as a block")
    index = {pair: idx for idx, pair in enumerate(so_pairs(n))}
    out = []
    for a, b in so_pairs(k):
        vec = [0] * len(index)
        vec[index[(a, b)]] = 1
        out.append(vec)
    return out


def symmetric_gl_vectors(n: int):
    """Symmetric-matrix complement of so(n) in gl(n).

    Order: upper triangle row-major; E_aa on the diagonal, E_ab + E_ba off it.
    """
    out = []
    for a in range(n):
        for b in range(a, n):
            vec = [0] * (n * n)
            if a == b:
                vec[a * n + a] = 1
            else:
                vec[a * n + b] = 1
                vec[b * n + a] = 1
            out.append(vec)
    return out


def symmetric_gl_matrices(n: int):
    """The same complement as actual n x n matrices (same order)."""
    out = []
    for a in range(n):
        for b in range(a, n):
            m = [[Fraction(0)] * n for _ in range(n)]
            if a == b:
                m[a][a] = Fraction(1)
            else:
                m[a][b] = Fraction(1)
                m[b][a] = Fraction(1)
            out.append(m)
    return out


def gl_block_inclusion(k: int, n: int) -> Matrix:
    """Coordinate matrix of the block inclusion gl(k) -> gl(n)."""
    if k > n:
        raise InvalidParams(f"gl({k}) does not embed in gl({n}) as a block")
    entries = {}
    for a in range(k):
        for b in range(k):
            entries[(a * n + b, a * k + b)] = 1
    return Matrix(n * n, k * k, entries)


# ---------------------------------------------------------------------------
# JSON forms (all rationals as "p/q" strings)
# ---------------------------------------------------------------------------

def algebra_to_json(g: LieAlgebra) -> dict:
    brackets = []
    for (i, j) in sorted(g.structure):
        for k in sorted(g.structure[(i, j)]):
            brackets.append([i, j, k, format_rational(g.structure[(i, j)][k])])
    return {"dim": g.dim, "basis": list(g.basis_names), "brackets": brackets}


def algebra_from_json(data) -> LieAlgebra:
    if not isinstance(data, dict) or "dim" not in data:
        raise InputError("algebra file must be an object with a 'dim' field")
    dim = data["dim"]
    if not isinstance(dim, int) or dim < 0:
        raise InputError(f"invalid dimension {dim!r}")
    names = data.get("basis")
    table = []
    for idx, entry in enumerate(data.get("brackets", [])):
        if not (isinstance(entry, list) and len(entry) == 4):
            raise InputError(f"bracket entry {idx} must be [i, j, k, value]")
        i, j, k, v = entry
        table.append((i, j, k, parse_rational(v)))
    return validate_structure(table, dim, names)


def vectors_from_json(data):
    if not isinstance(data, dict) or "vectors" not in data:
        raise InputError("subalgebra file must be an object with a 'vectors' field")
    return [[parse_rational(x) for x in row] for row in data["vectors"]]
