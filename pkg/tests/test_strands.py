import pytest
from hypothesis import given, settings, strategies as st

from app.coeffs import Monomial
from app.strands import (
    FactorizationError,
    InterfaceGradingData,
    StrandBasisElement,
    StrandError,
    algebra_diff,
    as_element,
    basis,
    basis_by_source,
    cross,
    diff_basis,
    factor_element,
    factorize,
    gradings_alg,
    idempotent,
    mirror,
    mirrored_basis,
    mul_basis,
    relation_diff,
    reverse,
    rho,
    rho_down,
)


def element(n, mapping, downward=False):
    return StrandBasisElement.from_map(n, mapping, downward)


def test_basis_sizes():
    assert len(basis(1, 1)) == 3
    assert len(basis(2, 2)) == 7
    assert len(basis(2, 0)) == 1
    assert len(basis(2, 3)) == 1
    with pytest.raises(StrandError):
        basis(2, 4)


def test_crossings():
    assert cross(element(4, {0: 4, 1: 3, 2: 2})) == 3
    assert cross(idempotent(3, [0, 2])) == 0


def test_elements_are_validated():
    with pytest.raises(StrandError):
        element(2, {1: 0})
    with pytest.raises(StrandError):
        element(2, {0: 2, 1: 2})
    with pytest.raises(StrandError):
        rho(2, {0}, 1, 2)
    with pytest.raises(StrandError):
        rho_down(2, {0}, 0, 1)


def test_products():
    assert mul_basis(rho(3, {0, 1}, 0, 2), rho(3, {1, 2}, 1, 3)) is None
    assert mul_basis(rho(2, {0}, 0, 1), rho(2, {1}, 1, 2)) == rho(2, {0}, 0, 2)
    # idempotents do not meet
    assert mul_basis(idempotent(2, {0}), idempotent(2, {1})) is None
    with pytest.raises(StrandError):
        mul_basis(idempotent(2, {0}), idempotent(2, {0, 1}))


def test_differential():
    assert diff_basis(element(2, {0: 2, 1: 1})) == {element(2, {0: 1, 1: 2})}
    assert diff_basis(rho(3, {0}, 0, 3)) == set()


def test_relation_form_of_the_differential():
    f = rho(3, {0, 1, 2}, 0, 3)
    assert set(relation_diff(3, {0, 1, 2}, 0, 3)) == diff_basis(f)
    assert len(diff_basis(f)) == 2
    assert relation_diff(3, {0}, 0, 3) == set()


def test_gradings():
    gd = InterfaceGradingData.of({1}, set())
    assert gradings_alg(element(1, {0: 1}), gd) == (1, 0)
    assert gradings_alg(element(1, {0: 1}), gd, Monomial.var(1, 1)) == (0, -2)
    assert gradings_alg(element(1, {0: 1}), InterfaceGradingData.of(set(), {1})) == (-1, -2)
    with pytest.raises(StrandError):
        gradings_alg(element(1, {1: 0}, downward=True), gd)


def test_factorize():
    f = element(3, {0: 2, 1: 3})
    factors = factorize(f)
    assert factors == ((frozenset({0, 1}), 1, 3), (frozenset({0, 3}), 0, 2))
    product = idempotent(3, f.source)
    for factor in factors:
        product = mul_basis(product, factor_element(3, factor))
    assert product == f
    assert factorize(idempotent(3, {1, 2})) == ()


def test_factorize_downward():
    c = StrandBasisElement.from_map(2, {2: 0}, downward=True)
    factors = factorize(c)
    product = StrandBasisElement.from_map(2, {2: 2}, downward=True)
    for factor in factors:
        assert factor[1] > factor[2]
        product = mul_basis(product, factor_element(2, factor, downward=True))
    assert product == c


def test_reverse_and_mirror():
    f = rho(3, {0, 2}, 0, 1)
    assert reverse(f) == StrandBasisElement.from_map(3, {2: 3, 1: 1})
    assert reverse(reverse(f)) == f
    assert mirror(f).downward
    assert mirror(mirror(f)) == f
    assert {mirror(g) for g in basis(2, 1)} == set(mirrored_basis(2, 1))


@pytest.mark.parametrize("n, k", [(2, 1), (2, 2), (3, 2)])
def test_reverse_respects_crossings_and_differential(n, k):
    for f in basis(n, k):
        assert cross(reverse(f)) == cross(f)
        assert {reverse(h) for h in diff_basis(f)} == diff_basis(reverse(f))


def test_basis_by_source_groups_everything():
    groups = basis_by_source(2, 1)
    assert sum(len(v) for v in groups.values()) == len(basis(2, 1))
    assert all(f.source == s for s, fs in groups.items() for f in fs)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=3).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(min_value=0, max_value=n + 1))
))
def test_algebra_axioms(nk):
    n, k = nk
    gd = InterfaceGradingData.of(range(1, min(k, n) + 1), range(1, min(k, n) + 1))
    for f in basis(n, k):
        assert not algebra_diff(algebra_diff(as_element(f, n)))
        a, mu = gradings_alg(f, gd)
        for h in diff_basis(f):
            assert gradings_alg(h, gd) == (a, mu - 1)
        try:
            factorize(f)
        except FactorizationError:
            pytest.fail(f"{f} does not factor")
