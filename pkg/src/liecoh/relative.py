"""Two chain models of relative cohomology for a subalgebra pair h < g.

Model 1 (basic subcomplex): the subspace of Lambda g* annihilated by every
interior product i_x and Lie derivative theta_x with x in h (horizontal and
invariant elements), with the restriction of the ambient differential.

Model 2 (invariant quotient complex): the h-invariant part of
Lambda (g/h)*, where invariance means vanishing of the Lie derivative along
the induced action on g/h, with the alternating-sum differential of the
projected bracket taken with the sign opposite to the ambient convention
(see ``exterior``).

The pullback along minus the projection s: g -> g/h restricts to a chain
isomorphism from model 2 onto model 1; ``compare_models`` verifies
bijectivity and the intertwining relation exactly, recording the per-degree
sign (-1)^k that relates the plain pullback to the chain map.

Also here: the restriction map Lambda g* -> Lambda h* along the inclusion,
used by the noncohomologous-to-zero test.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cohomology import (
    BasisProduct,
    CochainComplex,
    EmbeddedProduct,
    ce_complex,
    check_chain_map,
)
from .errors import InternalInvariantError, ModelMismatch, NotDStable
from .exterior import (
    alternating_differential_matrix,
    basis_size,
    endo_action_matrix,
    interior_matrix,
    lie_derivative_matrix,
    pullback_matrix,
)
from .linalg import Matrix
from .parallel import parallel_map


@dataclass(frozen=True, eq=False)
class BasicSubcomplex:
    pair: object
    complex: CochainComplex
    embeddings: tuple  # per degree, columns are basis vectors inside Lambda^k g*


@dataclass(frozen=True, eq=False)
class InvariantQuotientComplex:
    pair: object
    complex: CochainComplex
    embeddings: tuple      # per degree, columns inside Lambda^k (g/h)*
    full_differentials: tuple  # the differential on all of Lambda (g/h)*, per lift choice


def _restrict_differentials(ambient_diffs, embeddings, failure):
    """Express d(basis vector) in the next embedding; raise ``failure`` if it escapes."""
    restricted = []
    for k in range(len(embeddings) - 1):
        image = ambient_diffs[k] @ embeddings[k]
        solver = embeddings[k + 1].solver()
        cols = []
        for j in range(image.ncols):
            coords = solver.solve(image.col_dense(j))
            if coords is None:
                raise failure(f"differential leaves the subspace at degree {k}, vector {j}")
            cols.append(coords)
        restricted.append(Matrix.from_cols(cols, embeddings[k + 1].ncols))
    return tuple(restricted)


def basic_subcomplex(pair, ambient=None, threads=None) -> BasicSubcomplex:
    """Horizontal invariant subcomplex of Lambda g* for x ranging over h.

    Per degree, the basis is the kernel of the stacked i_x and theta_x
    matrices; the differential is the restriction of the ambient one
    (d-stability is verified exactly and its failure is a hard error).
    """
    g = pair.ambient
    n = g.dim
    if ambient is None:
        ambient = ce_complex(g, threads=threads)

    def basis_at(k):
        blocks = []
        for x in pair.sub_basis:
            blocks.append(interior_matrix(x, n, k))
            blocks.append(lie_derivative_matrix(g, x, k))
        constraints = Matrix.stack_rows(blocks, basis_size(n, k))
        return Matrix.from_cols(constraints.nullspace(), basis_size(n, k))

    embeddings = tuple(parallel_map(basis_at, range(n + 1), threads))
    diffs = _restrict_differentials(ambient.differentials, embeddings, NotDStable)
    complex = CochainComplex(
        dims=tuple(e.ncols for e in embeddings),
        differentials=diffs,
        product=EmbeddedProduct(BasisProduct(n), embeddings),
    )
    return BasicSubcomplex(pair=pair, complex=complex, embeddings=embeddings)


def quotient_bracket_table(pair):
    """Projected brackets of the quotient lifts: (i, j) -> sparse dict on g/h."""
    g = pair.ambient
    proj = pair.projection_matrix
    lifts = pair.quotient_basis
    q = pair.dim_quotient
    table = {}
    for i in range(q):
        for j in range(i + 1, q):
            coords = proj.apply(g.bracket(lifts[i], lifts[j]))
            entry = {m: c for m, c in enumerate(coords) if c}
            if entry:
                table[(i, j)] = entry
    return table


def invariant_quotient_complex(pair, threads=None) -> InvariantQuotientComplex:
    """h-invariant forms on g/h with the opposite-sign differential.

    Invariance per degree is the kernel of the Lie-derivative action of
    every h generator; the differential is the alternating sum over the
    projected brackets of the chosen lifts, restricted to invariants.
    """
    q = pair.dim_quotient
    table = quotient_bracket_table(pair)

    def bracket_fn(i, j):
        if i < j:
            return table.get((i, j), {})
        return {m: -c for m, c in table.get((j, i), {}).items()}

    full = tuple(
        parallel_map(
            lambda k: alternating_differential_matrix(q, bracket_fn, k, flip_sign=True),
            range(q),
            threads,
        )
    )

    def invariants_at(k):
        blocks = [endo_action_matrix(a, q, k) for a in pair.action]
        constraints = Matrix.stack_rows(blocks, basis_size(q, k))
        return Matrix.from_cols(constraints.nullspace(), basis_size(q, k))

    embeddings = tuple(parallel_map(invariants_at, range(q + 1), threads))
    diffs = _restrict_differentials(full, embeddings, InternalInvariantError)
    complex = CochainComplex(
        dims=tuple(e.ncols for e in embeddings),
        differentials=diffs,
        product=EmbeddedProduct(BasisProduct(q), embeddings),
    )
    return InvariantQuotientComplex(
        pair=pair, complex=complex, embeddings=embeddings, full_differentials=full
    )


@dataclass(frozen=True, eq=False)
class ModelComparison:
    """Chain isomorphism from the invariant quotient model onto the basic one."""

    pair: object
    matrices: tuple  # per degree, basic coordinates of the mapped invariant basis
    signs: tuple     # (-1)^k relating the plain pullback of s to the chain map
    dimensions: tuple  # per degree, the common dimension of both models


def compare_models(pair, basic=None, invq=None, threads=None) -> ModelComparison:
    """Verify the two relative models agree through (-s)^* exactly.

    Checks per degree: equal dimensions, the pullback of invariant forms
    along the projection lands in the basic subspace, bijectivity, and the
    intertwining of the two differentials.  Any failure is a hard error.
    """
    if basic is None:
        basic = basic_subcomplex(pair, threads=threads)
    if invq is None:
        invq = invariant_quotient_complex(pair, threads=threads)
    q = pair.dim_quotient
    proj = pair.projection_matrix
    matrices = []
    for k in range(q + 1):
        b_dim = basic.complex.dim(k)
        i_dim = invq.complex.dim(k)
        if b_dim != i_dim:
            raise ModelMismatch(
                f"model dimensions differ in degree {k}: basic {b_dim}, invariant {i_dim}"
            )
        pulled = pullback_matrix(proj, k).scale((-1) ** k) @ invq.embeddings[k]
        solver = basic.embeddings[k].solver()
        cols = []
        for j in range(pulled.ncols):
            coords = solver.solve(pulled.col_dense(j))
            if coords is None:
                raise ModelMismatch(
                    f"pullback leaves the basic subspace at degree {k}, vector {j}"
                )
            cols.append(coords)
        phi = Matrix.from_cols(cols, b_dim)
        if phi.rank() != b_dim:
            raise ModelMismatch(f"comparison is not bijective in degree {k}")
        matrices.append(phi)
    for k in range(q):
        lhs = basic.complex.differential(k) @ matrices[k]
        rhs = matrices[k + 1] @ invq.complex.differential(k)
        if lhs != rhs:
            column = min(j for (_, j) in (lhs - rhs).entries)
            raise ModelMismatch(
                f"differentials do not intertwine at degree {k}, vector {column}"
            )
    return ModelComparison(
        pair=pair,
        matrices=tuple(matrices),
        signs=tuple((-1) ** k for k in range(q + 1)),
        dimensions=tuple(m.nrows for m in matrices),
    )


@dataclass(frozen=True, eq=False)
class RestrictionMap:
    """Pullback Lambda g* -> Lambda h* along the inclusion of the subalgebra."""

    pair: object
    maps: tuple  # per degree k, shape (C(dim h, k), C(dim g, k))
    source: CochainComplex  # full complex of g
    target: CochainComplex  # full complex of h


def restriction_map(pair, ambient=None, threads=None) -> RestrictionMap:
    g = pair.ambient
    if ambient is None:
        ambient = ce_complex(g, threads=threads)
    sub_complex = ce_complex(pair.sub, threads=threads)
    incl = pair.sub_matrix
    maps = tuple(
        parallel_map(lambda k: pullback_matrix(incl, k), range(g.dim + 1), threads)
    )
    check_chain_map(maps, ambient, sub_complex)
    return RestrictionMap(pair=pair, maps=maps, source=ambient, target=sub_complex)


def subcomplex_to_json(model) -> dict:
    """Complex serialization plus the embedding of each basis vector.

    Works for both relative models: the embedding columns are coordinates
    in Lambda g* (basic) or Lambda (g/h)* (invariant quotient).
    """
    from .cohomology import complex_to_json
    from .rationals import format_rational

    payload = complex_to_json(model.complex)
    payload["embedding"] = {
        str(k): [
            [format_rational(x) for x in e.col_dense(j)] for j in range(e.ncols)
        ]
        for k, e in enumerate(model.embeddings)
        if e.ncols
    }
    return payload
