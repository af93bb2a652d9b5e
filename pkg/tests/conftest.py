import pytest

from app.cli import random_diagrams
from app.grid import validate_planar


@pytest.fixture
def unknot1():
    """The 1x1 diagram: X and O share the only cell."""
    return validate_planar(1, [1], [1])


@pytest.fixture
def unknot2():
    return validate_planar(2, [1, 2], [2, 1])


@pytest.fixture
def grid3():
    return validate_planar(3, [1, 3, 2], [2, 1, 3])


@pytest.fixture
def random_grids():
    """Seeded factory of random planar diagrams."""
    def make(n, count, seed=0):
        return [validate_planar(*key) for key in random_diagrams(n, count, seed)]

    return make
