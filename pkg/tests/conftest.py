import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ulift.field import Discriminant
from ulift.lattice import diagonal_lattice, hyperbolic_plane, hyperbolic_plane_cusp


@pytest.fixture(scope="session")
def d4():
    return Discriminant(-4)


@pytest.fixture(scope="session")
def d3():
    return Discriminant(-3)


@pytest.fixture(scope="session")
def cusp_h4(d4):
    """Standard cusp of the unimodular plane over d = -4."""
    return hyperbolic_plane_cusp(d4)


@pytest.fixture(scope="session")
def lattice_h4(d4):
    return hyperbolic_plane(d4)


@pytest.fixture(scope="session")
def lattice_diag11(d4):
    return diagonal_lattice(d4, [1, -1])


@pytest.fixture(scope="session")
def lattice_rank1_d3(d3):
    return diagonal_lattice(d3, [1])


@pytest.fixture(scope="session")
def m2_pair():
    from vvdata import m2_lattice

    return m2_lattice()
