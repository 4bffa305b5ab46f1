"""liecoh: exact cohomology of finite-dimensional Lie algebras.

Computes Chevalley-Eilenberg and relative Lie algebra cohomology over the
rationals, realizes the Koszul characteristic homomorphism of a subalgebra
pair at chain level, and decides its injectivity by exact rank.
"""

__version__ = "0.1.0"

from .liealg import (  # noqa: F401
    LieAlgebra,
    PairMorphism,
    SubalgebraPair,
    builtin,
    direct_sum,
    pair_morphism,
    subalgebra,
    validate_structure,
)
