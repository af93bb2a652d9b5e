from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from app.coeffs import FreeElement, Monomial
from app.complexes import (
    GradingError,
    cfk_complex,
    cfp_complex,
    left_completion,
    partial_gradings,
    planar_gradings,
)
from app.grid import Generator, slice_diagram, validate_planar, wrap


def g(*one_line):
    return Generator.from_one_line(one_line)


UNKNOT2_GRADINGS = {
    (1, 2, 3): (1, -1),
    (1, 3, 2): (0, -2),
    (2, 1, 3): (0, -2),
    (2, 3, 1): (0, -1),
    (3, 1, 2): (0, -1),
    (3, 2, 1): (1, 0),
}


def test_planar_gradings(unknot2):
    for one_line, expected in UNKNOT2_GRADINGS.items():
        assert planar_gradings(unknot2, g(*one_line)) == expected


def test_planar_differential(unknot2):
    c = cfp_complex(unknot2)
    assert len(c.basis) == factorial(3)
    assert c.diff[g(2, 3, 1)] == FreeElement.basis(2, g(3, 2, 1), Monomial.var(2, 1))
    assert c.diff[g(3, 1, 2)] == FreeElement.basis(2, g(3, 2, 1), Monomial.var(2, 2))
    assert set(c.nonzero_rows()) == {g(2, 3, 1), g(3, 1, 2)}
    assert c.d_squared_failures() == []
    assert c.grading_failures() == []


def test_planar_unknot1(unknot1):
    c = cfp_complex(unknot1)
    assert c.grading == {g(2, 1): (0, 0), g(1, 2): (0, -1)}
    assert not c.nonzero_rows()


def test_toroidal_complex(unknot2):
    c = cfk_complex(wrap(unknot2))
    assert c.grading == {g(2, 1): (0, 0), g(1, 2): (1, 1)}
    u1, u2 = Monomial.var(2, 1), Monomial.var(2, 2)
    assert c.diff[g(2, 1)] == FreeElement.sum(2, [(u1, g(1, 2)), (u2, g(1, 2))])
    assert not c.diff[g(1, 2)]


def test_differences(unknot2):
    c, other = cfp_complex(unknot2), cfp_complex(unknot2)
    assert c.differences(other) == []
    other.diff[g(1, 2, 3)] = FreeElement.basis(2, g(3, 2, 1))
    assert c.differences(other) == ["d[1,2,3]: 0 vs [3,2,1]"]


def test_left_completion(grid3):
    _, d_part = slice_diagram(grid3, [2])
    # the slab keeps X row 2 and O row 3 in column 3
    assert left_completion(d_part) == ([1, 3], [1, 2])


def test_partial_gradings_sum_to_planar(grid3):
    a_part, d_part = slice_diagram(grid3, [2])
    for x in cfp_complex(grid3).basis:
        left, right = Generator(0, x.rows[:2]), Generator(2, x.rows[2:])
        la, lmu = partial_gradings(a_part, left)
        ra, rmu = partial_gradings(d_part, right)
        assert (la + ra, lmu + rmu) == planar_gradings(grid3, x)


def test_partial_gradings_need_consistent_idempotents(grid3):
    _, m_part, d_part = slice_diagram(grid3, [1, 2])
    y = Generator(2, (0, 1))
    with pytest.raises(GradingError):
        partial_gradings(d_part, y, {0, 1})
    with pytest.raises(GradingError):
        partial_gradings(m_part, Generator(1, (0,)))
    with pytest.raises(GradingError):
        partial_gradings(m_part, Generator(1, (0,)), {0})


@settings(max_examples=25, deadline=None)
@given(
    st.integers(min_value=1, max_value=3).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.permutations(range(1, n + 1)),
            st.permutations(range(1, n + 1)),
        )
    )
)
def test_complexes_square_to_zero(key):
    d = validate_planar(*key)
    for c in (cfp_complex(d), cfk_complex(wrap(d))):
        assert c.d_squared_failures() == []
        assert c.grading_failures() == []
