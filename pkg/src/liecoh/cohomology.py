"""Exact cohomology of cochain complexes.

A complex is a tuple of per-degree dimensions plus the differential
matrices; construction checks the shapes and that consecutive
differentials compose to zero.  Cohomology is computed by exact rank:
betti_k = dim ker d_k - rank d_(k-1).  Representatives are kernel-basis
vectors not in the coboundary span, selected greedily in the fixed pivot
order, so the whole output is deterministic.

Complexes that carry a graded product (all complexes in this library do)
also support cup products and the odd-generation test on their cohomology.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DimensionMismatch,
    InternalInvariantError,
    InvalidComplex,
    NotAChainMap,
    NotACocycle,
)
from .exterior import ce_differential, wedge_vector
from .linalg import Matrix, SpanBuilder, clear_denominators, row_reduce
from .parallel import parallel_map


class BasisProduct:
    """Wedge product on the multi-index bases of Lambda V*."""

    def __init__(self, n: int):
        self.n = n

    def mul(self, k, v, l, w):
        return wedge_vector(self.n, k, v, l, w)


class EmbeddedProduct:
    """Product on a subcomplex given by per-degree embedding matrices.

    Vectors are lifted to the ambient graded algebra, multiplied there, and
    expressed back in the subspace basis.  The subspaces this library builds
    are closed under the ambient product; failure to solve is a bug.
    """

    def __init__(self, ambient, embeddings):
        self.ambient = ambient
        self.embeddings = tuple(embeddings)
        self._solvers = {}

    def mul(self, k, v, l, w):
        target = k + l
        if target >= len(self.embeddings):
            raise DimensionMismatch(f"no degree {target} in this complex")
        big = self.ambient.mul(
            k, self.embeddings[k].apply(v), l, self.embeddings[l].apply(w)
        )
        solver = self._solvers.get(target)
        if solver is None:
            solver = self.embeddings[target].solver()
            self._solvers[target] = solver
        coords = solver.solve(big)
        if coords is None:
            raise InternalInvariantError(
                f"product left the subcomplex in degree {target}"
            )
        return coords


@dataclass(frozen=True, eq=False)
class CochainComplex:
    dims: tuple
    differentials: tuple  # differentials[k]: dims[k] -> dims[k+1]
    product: object = None

    def __post_init__(self):
        if len(self.differentials) != max(len(self.dims) - 1, 0):
            raise InvalidComplex(
                f"{len(self.differentials)} differentials for {len(self.dims)} degrees"
            )
        for k, d in enumerate(self.differentials):
            if d.shape != (self.dims[k + 1], self.dims[k]):
                raise InvalidComplex(
                    f"differential {k} has shape {d.shape}, expected "
                    f"({self.dims[k + 1]}, {self.dims[k]})"
                )
        for k in range(len(self.differentials) - 1):
            if not (self.differentials[k + 1] @ self.differentials[k]).is_zero():
                raise InvalidComplex(f"d o d != 0 between degrees {k} and {k + 2}")

    @property
    def top_degree(self) -> int:
        return len(self.dims) - 1

    def dim(self, k: int) -> int:
        if 0 <= k <= self.top_degree:
            return self.dims[k]
        return 0

    def differential(self, k: int) -> Matrix:
        if 0 <= k < len(self.differentials):
            return self.differentials[k]
        return Matrix.zeros(self.dim(k + 1), self.dim(k))


def ce_complex(g, threads=None) -> CochainComplex:
    """The full Chevalley-Eilenberg complex of an algebra, with its wedge."""
    from .exterior import basis_size

    diffs = parallel_map(lambda k: ce_differential(g, k), range(g.dim), threads)
    dims = tuple(basis_size(g.dim, k) for k in range(g.dim + 1))
    return CochainComplex(dims=dims, differentials=tuple(diffs), product=BasisProduct(g.dim))


class CohomologySpace:
    """Betti numbers, chosen representatives and reduction data per degree."""

    def __init__(self, complex: CochainComplex, threads=None):
        self.complex = complex
        top = complex.top_degree
        ranks = parallel_map(
            lambda k: complex.differential(k).rank(), range(top + 1), threads
        )
        self.ranks = tuple(ranks)
        self.betti_numbers = tuple(
            complex.dim(k) - self.rank(k) - self.rank(k - 1) for k in range(top + 1)
        )
        self._representatives = parallel_map(self._pick_representatives, range(top + 1), threads)
        self._reducers = {}

    # -- structure ------------------------------------------------------

    @property
    def top_degree(self) -> int:
        return self.complex.top_degree

    def rank(self, k: int) -> int:
        if 0 <= k <= self.top_degree:
            return self.ranks[k]
        return 0

    def betti(self, k: int) -> int:
        if 0 <= k <= self.top_degree:
            return self.betti_numbers[k]
        return 0

    def betti_dict(self) -> dict:
        return {k: b for k, b in enumerate(self.betti_numbers) if b}

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.betti_numbers))

    def _pick_representatives(self, k: int) -> Matrix:
        """Kernel vectors extending the coboundary span, greedy pivot order."""
        n = self.complex.dim(k)
        kernel = self.complex.differential(k).nullspace()
        image_rows = self.complex.differential(k - 1).cols_dense()
        rows = [clear_denominators(r) for r in image_rows]
        rows += [clear_denominators(list(v)) for v in kernel]
        pivots = row_reduce(rows, n, False)
        offset = len(image_rows)
        chosen = [kernel[ri - offset] for ri, _ in pivots if ri >= offset]
        if len(chosen) != self.betti(k):
            raise InternalInvariantError(
                f"representative count {len(chosen)} != betti {self.betti(k)} in degree {k}"
            )
        return Matrix.from_cols(chosen, n)

    def representative_matrix(self, k: int) -> Matrix:
        if 0 <= k <= self.top_degree:
            return self._representatives[k]
        return Matrix.zeros(0, 0)

    def representative_vectors(self, k: int):
        return self.representative_matrix(k).cols_dense()

    # -- reduction ------------------------------------------------------

    def _reducer(self, k: int):
        solver = self._reducers.get(k)
        if solver is None:
            a = self.representative_matrix(k).hstack(self.complex.differential(k - 1))
            solver = a.solver()
            self._reducers[k] = solver
        return solver

    def reduce(self, k: int, vec):
        """Write a cocycle as (coordinates in representatives, primitive).

        Returns (coords, witness) with
        vec = representatives @ coords + d(witness); the coordinates are
        unique, the witness is the deterministic particular solution.
        Raises NotACocycle with the exact residual when d(vec) != 0.
        """
        residual = self.complex.differential(k).apply(vec)
        if any(residual):
            raise NotACocycle(k, residual)
        solution = self._reducer(k).solve(vec)
        if solution is None:
            raise InternalInvariantError(
                f"cocycle escapes representatives + coboundaries in degree {k}"
            )
        b = self.betti(k)
        return solution[:b], solution[b:]

    def unit_class(self):
        """Coordinates of the constant-function class in degree 0."""
        if self.complex.dim(0) != 1:
            raise InternalInvariantError("degree 0 is not one-dimensional")
        coords, _ = self.reduce(0, [Fraction(1)])
        return coords


def compute_cohomology(complex: CochainComplex, threads=None) -> CohomologySpace:
    """Exact Betti numbers and representative cocycles of a complex."""
    return CohomologySpace(complex, threads=threads)


# ---------------------------------------------------------------------------
# induced maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CohomologyMap:
    source: CohomologySpace
    target: CohomologySpace
    matrices: tuple  # per source degree, shape (betti_target_k, betti_source_k)

    def degree(self, k: int) -> Matrix:
        if 0 <= k < len(self.matrices):
            return self.matrices[k]
        return Matrix.zeros(self.target.betti(k), self.source.betti(k))

    def is_injective(self) -> bool:
        return all(
            self.degree(k).rank() == self.source.betti(k)
            for k in range(self.source.top_degree + 1)
        )

    def is_surjective(self) -> bool:
        return all(
            self.degree(k).rank() == self.target.betti(k)
            for k in range(
                max(self.source.top_degree, self.target.top_degree) + 1
            )
        )

    def kernel_basis(self, k: int):
        """Kernel classes in degree k, as coordinates in source representatives."""
        return self.degree(k).nullspace()

    def total_kernel_dimension(self) -> int:
        return sum(
            self.source.betti(k) - self.degree(k).rank()
            for k in range(self.source.top_degree + 1)
        )


def check_chain_map(maps, src: CochainComplex, dst: CochainComplex):
    """Exact commutation with the differentials; raises NotAChainMap."""
    for k, f in enumerate(maps):
        if f.shape != (dst.dim(k), src.dim(k)):
            raise DimensionMismatch(
                f"chain map degree {k} has shape {f.shape}, expected "
                f"({dst.dim(k)}, {src.dim(k)})"
            )
    top = max(src.top_degree, dst.top_degree)
    for k in range(top + 1):
        f_k = maps[k] if k < len(maps) else Matrix.zeros(dst.dim(k), src.dim(k))
        f_k1 = (
            maps[k + 1]
            if k + 1 < len(maps)
            else Matrix.zeros(dst.dim(k + 1), src.dim(k + 1))
        )
        mismatch = f_k1 @ src.differential(k) - dst.differential(k) @ f_k
        if not mismatch.is_zero():
            column = min(j for (_, j) in mismatch.entries)
            raise NotAChainMap(k, column)


def induced_map(maps, src: CohomologySpace, dst: CohomologySpace) -> CohomologyMap:
    """Cohomology map of a chain map, via representative reduction.

    ``maps[k]`` is the degree-k chain matrix from the source complex to the
    target complex; missing degrees are treated as zero.  Commutation with
    the differentials is checked exactly first.
    """
    maps = list(maps)
    check_chain_map(maps, src.complex, dst.complex)
    matrices = []
    for k in range(src.top_degree + 1):
        f_k = maps[k] if k < len(maps) else Matrix.zeros(dst.complex.dim(k), src.complex.dim(k))
        cols = []
        for rep in src.representative_vectors(k):
            coords, _ = dst.reduce(k, f_k.apply(rep))
            cols.append(coords)
        matrices.append(Matrix.from_cols(cols, dst.betti(k)))
    return CohomologyMap(source=src, target=dst, matrices=tuple(matrices))


# ---------------------------------------------------------------------------
# ring structure
# ---------------------------------------------------------------------------

def cup_product(space: CohomologySpace, a, b):
    """Cup product of classes given as (degree, coordinates) pairs.

    Products beyond the top degree are the zero class.  Well-definedness
    (independence of the representative choice) is exercised by the tests.
    """
    if space.complex.product is None:
        raise InternalInvariantError("complex has no graded product")
    (ka, ca), (kb, cb) = a, b
    k = ka + kb
    if k > space.top_degree:
        return (k, [])
    za = space.representative_matrix(ka).apply(ca)
    zb = space.representative_matrix(kb).apply(cb)
    chain = space.complex.product.mul(ka, za, kb, zb)
    coords, _ = space.reduce(k, chain)
    return (k, coords)


def generated_spans(space: CohomologySpace, generators):
    """Per-degree spans of the subalgebra generated by 1 and ``generators``.

    ``generators`` is a list of (degree, coordinates) classes.  Saturation
    multiplies generators against the current spans until nothing grows.
    """
    spans = {}
    for k in range(space.top_degree + 1):
        if space.betti(k):
            spans[k] = SpanBuilder(space.betti(k))
    if 0 in spans:
        spans[0].insert(space.unit_class())
    for d, v in generators:
        if any(v) and d in spans:
            spans[d].insert(v)
    changed = True
    while changed:
        changed = False
        for gd, gv in generators:
            for d in sorted(spans):
                target = gd + d
                if target not in spans:
                    continue
                for element in spans[d].basis():
                    _, coords = cup_product(space, (gd, gv), (d, element))
                    if any(coords) and spans[target].insert(coords):
                        changed = True
    return spans


def odd_degree_generators(space: CohomologySpace):
    gens = []
    for k in range(1, space.top_degree + 1, 2):
        for i in range(space.betti(k)):
            coords = [Fraction(0)] * space.betti(k)
            coords[i] = Fraction(1)
            gens.append((k, coords))
    return gens


def odd_generated(space: CohomologySpace) -> bool:
    """True iff 1 and the odd-degree classes generate the whole ring."""
    spans = generated_spans(space, odd_degree_generators(space))
    return all(spans[k].rank == space.betti(k) for k in spans)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def complex_to_json(complex: CochainComplex) -> dict:
    from .rationals import format_rational

    diffs = {}
    for k, d in enumerate(complex.differentials):
        diffs[str(k)] = [
            [format_rational(d.entry(i, j)) for j in range(d.ncols)]
            for i in range(d.nrows)
        ]
    return {"dims": list(complex.dims), "differentials": diffs}


def cohomology_to_json(space: CohomologySpace, form_of_vector=None) -> dict:
    """Betti numbers plus representatives; forms need a vector converter.

    ``form_of_vector(k, vec)`` turns a degree-k chain vector into a Form
    (e.g. via a subcomplex embedding); when omitted, representatives are
    emitted as raw coordinate vectors.
    """
    from .rationals import format_rational

    representatives = {}
    for k in range(space.top_degree + 1):
        if not space.betti(k):
            continue
        reps = []
        for vec in space.representative_vectors(k):
            if form_of_vector is None:
                reps.append([format_rational(x) for x in vec])
            else:
                from .exterior import form_to_json

                reps.append(form_to_json(form_of_vector(k, vec)))
        representatives[str(k)] = reps
    return {
        "betti": {str(k): b for k, b in sorted(space.betti_dict().items())},
        "representatives": representatives,
    }
