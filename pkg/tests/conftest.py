import pytest

from liecoh import builtin, subalgebra
from liecoh.classes import canonical_gl_so_pair
from liecoh.koszul import PairAnalysis
from liecoh.liealg import so_in_so_vectors, zero_subalgebra


@pytest.fixture(scope="session")
def gl2_so2():
    return canonical_gl_so_pair(2)


@pytest.fixture(scope="session")
def gl3_so3():
    return canonical_gl_so_pair(3)


@pytest.fixture(scope="session")
def so5_so3():
    return subalgebra(builtin("so", 5), so_in_so_vectors(3, 5))


@pytest.fixture(scope="session")
def heis3_center():
    return subalgebra(builtin("heisenberg", 3), [[0, 0, 1]])


@pytest.fixture(scope="session")
def ana_gl2_so2(gl2_so2):
    return PairAnalysis(gl2_so2)


@pytest.fixture(scope="session")
def ana_gl3_so3(gl3_so3):
    return PairAnalysis(gl3_so3)


@pytest.fixture(scope="session")
def ana_so5_so3(so5_so3):
    return PairAnalysis(so5_so3)


@pytest.fixture(scope="session")
def ana_gl2_zero():
    return PairAnalysis(zero_subalgebra(builtin("gl", 2)))
