import pytest
from hypothesis import given, settings, strategies as st

from app.coeffs import (
    DimensionError,
    FreeElement,
    Monomial,
    element_add,
    element_scale,
    monomial_mul,
)


N = 2
monomials = st.tuples(st.integers(0, 2), st.integers(0, 2)).map(Monomial)
elements = st.lists(st.tuples(monomials, st.sampled_from("abc")), max_size=6).map(
    lambda terms: FreeElement.sum(N, terms)
)


def test_monomial_basics():
    u1 = Monomial.var(2, 1)
    u2 = Monomial.var(2, 2)
    assert str(Monomial.one(2)) == "1"
    assert str(u1 * u1 * u2) == "U1^2U2"
    assert (u1 * u2).degree == 2
    assert u1.grading == (-1, -2)


def test_monomial_rejects_bad_input():
    with pytest.raises(ValueError):
        Monomial((1, -1))
    with pytest.raises(DimensionError):
        Monomial.var(2, 3)
    with pytest.raises(DimensionError):
        monomial_mul(Monomial.one(1), Monomial.one(2))


def test_terms_cancel_in_pairs():
    one = Monomial.one(1)
    e = FreeElement.sum(1, [(one, "x"), (one, "y"), (one, "x")])
    assert e == FreeElement.basis(1, "y")
    assert not (e + e)
    assert len(e + FreeElement.basis(1, "z")) == 2


def test_add_checks_ring():
    with pytest.raises(DimensionError):
        FreeElement.basis(1, "x") + FreeElement.basis(2, "x")


def test_scale_relabel_collisions_cancel():
    one = Monomial.one(2)
    e = FreeElement.sum(2, [(one, "a"), (one, "b")])
    assert not e.scale(Monomial.var(2, 1), lambda tag: "c")
    shifted = e.scale(Monomial.var(2, 2))
    assert shifted.tags() == frozenset({"a", "b"})
    assert all(m == Monomial.var(2, 2) for m, _ in shifted)


def test_format():
    assert FreeElement.zero(2).format() == "0"
    e = FreeElement.sum(2, [(Monomial.var(2, 1), "y"), (Monomial.one(2), "x")])
    assert e.format() == "x + U1·y"


@settings(max_examples=60, deadline=None)
@given(elements, elements, elements)
def test_addition_is_an_f2_vector_space(e1, e2, e3):
    assert element_add(e1, e2) == element_add(e2, e1)
    assert element_add(element_add(e1, e2), e3) == element_add(e1, element_add(e2, e3))
    assert element_add(e1, e1) == FreeElement.zero(N)
    assert element_add(e1, FreeElement.zero(N)) == e1


@settings(max_examples=60, deadline=None)
@given(monomials, monomials, elements, elements)
def test_scaling_composes_and_distributes(m1, m2, e1, e2):
    assert element_scale(m1, None, element_scale(m2, None, e1)) == element_scale(
        monomial_mul(m1, m2), None, e1
    )
    assert element_scale(m1, None, element_add(e1, e2)) == element_add(
        element_scale(m1, None, e1), element_scale(m1, None, e2)
    )


def test_dimension_errors_are_logged(caplog):
    with caplog.at_level("ERROR"):
        with pytest.raises(DimensionError):
            Monomial.var(2, 3)
    assert "U_3 asked for N=2" in caplog.text
