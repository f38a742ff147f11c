from fractions import Fraction

import pytest

from leibkit.algebras import upper_triangular_model
from leibkit.leibniz import LeibnizAlgebra


@pytest.fixture(scope="session")
def ut_model():
    return upper_triangular_model()


@pytest.fixture()
def nilpotent_dim2():
    """Only nonzero bracket <e2,e2> = e1; simple and nilpotent."""
    return LeibnizAlgebra([[[0, 0], [0, 0]], [[0, 0], [1, 0]]])


@pytest.fixture()
def solvable_dim2():
    """<e2,e2> = e1 and <e1,e2> = -e1; the one that embeds in the
    upper-triangular model."""
    return LeibnizAlgebra([[[0, 0], [-1, 0]], [[0, 0], [1, 0]]])


def frac_vec(*xs):
    return tuple(Fraction(x) for x in xs)
