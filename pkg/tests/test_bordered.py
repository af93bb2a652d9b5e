from collections import Counter
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from app.bordered import (
    PairingError,
    cancellation_profile,
    cpa,
    cpa_abs,
    cpd,
    cpda,
    cpdd,
    middle_generator,
    pair_AD,
    tensor_A_DA,
    tensor_Aabs_DD,
    tensor_DA_D,
)
from app.coeffs import FreeElement, Monomial
from app.complexes import cfp_complex
from app.grid import Generator, empty_middle, slice_diagram, validate_planar
from app.strands import StrandBasisElement, idempotent, rho, rho_down


def test_type_d_unknot1(unknot1):
    _, d_part = slice_diagram(unknot1, [1])
    md = cpd(d_part)
    top, bottom = Generator(1, (1,)), Generator(1, (0,))
    assert md.delta[top] == FreeElement.basis(1, (rho(1, {0}, 0, 1), bottom))
    assert not md.delta[bottom]
    assert md.idempotent_of(top) == frozenset({0})
    assert md.d_squared_failures() == []


def test_type_a_blocked_by_x(unknot1):
    a_part, _ = slice_diagram(unknot1, [1])
    ma = cpa(a_part)
    assert ma.action == {}
    assert not ma.act_rho(Generator(0, (0,)), 0, 1)


def test_type_a_action(unknot2):
    a_part, _ = slice_diagram(unknot2, [1])
    ma = cpa(a_part)
    assert ma.action == {
        (Generator(0, (1,)), 1, 2): FreeElement.basis(2, Generator(0, (2,)), Monomial.var(2, 1))
    }
    with pytest.raises(PairingError):
        ma.act(FreeElement.basis(2, Generator(0, (1,))), rho(2, {0, 1}, 1, 2))


def test_modules_need_the_right_slab(grid3):
    a_part, m_part, d_part = slice_diagram(grid3, [1, 2])
    with pytest.raises(PairingError):
        cpa(d_part)
    with pytest.raises(PairingError):
        cpd(a_part)
    with pytest.raises(PairingError):
        cpda(a_part)
    with pytest.raises(PairingError):
        cpa_abs(m_part)


def test_pairing_needs_matching_interfaces(grid3):
    a_part, _ = slice_diagram(grid3, [1])
    _, d_part = slice_diagram(grid3, [2])
    with pytest.raises(PairingError):
        pair_AD(cpa(a_part), cpd(d_part))
    with pytest.raises(PairingError):
        tensor_Aabs_DD(cpa_abs(d_part), cpdd(3, 1))


def test_pairing_reproduces_the_planar_complex(unknot2, grid3):
    for d in (unknot2, grid3):
        direct = cfp_complex(d)
        for k in range(1, d.n + 1):
            a_part, d_part = slice_diagram(d, [k])
            assert pair_AD(cpa(a_part), cpd(d_part)).differences(direct) == []


def test_module_laws(grid3):
    for k in range(1, 4):
        a_part, d_part = slice_diagram(grid3, [k])
        ma, md = cpa(a_part), cpd(d_part)
        assert ma.d_squared_failures() == []
        assert ma.grading_failures() == []
        assert ma.associativity_failures() == []
        assert ma.leibniz_failures() == []
        assert md.d_squared_failures() == []
        assert md.grading_failures() == []


def test_middle_generators(grid3):
    _, m_part, _ = slice_diagram(grid3, [1, 2])
    mm = cpda(m_part)
    # one column, one idempotent row left over among the three free rows
    assert len(mm.generators) == 4 * 3
    g = middle_generator([2], Generator(1, (0,)))
    assert g in mm.generators
    assert g.right == frozenset({0, 2})
    assert str(g) == "{2}1:[1]"


def test_middle_laws(grid3):
    for k, l in combinations(range(1, 4), 2):
        _, m_part, _ = slice_diagram(grid3, [k, l])
        mm = cpda(m_part)
        assert mm.d_squared_failures() == []
        assert mm.grading_failures() == []
        assert mm.leibniz_failures() == []
        assert mm.associativity_failures() == []


def test_tensor_products_match_bigger_slabs(grid3):
    direct = cfp_complex(grid3)
    for k, l in combinations(range(1, 4), 2):
        a_k, _ = slice_diagram(grid3, [k])
        a_l, d_l = slice_diagram(grid3, [l])
        _, d_k = slice_diagram(grid3, [k])
        _, m_part, _ = slice_diagram(grid3, [k, l])
        mm = cpda(m_part)
        left = tensor_A_DA(cpa(a_k), mm)
        right = tensor_DA_D(mm, cpd(d_l))
        assert left.differences(cpa(a_l)) == []
        assert right.differences(cpd(d_k)) == []
        assert pair_AD(left, cpd(d_l)).differences(direct) == []
        assert pair_AD(cpa(a_k), right).differences(direct) == []


def test_empty_middle_is_the_identity(grid3):
    a_part, d_part = slice_diagram(grid3, [2])
    mm = cpda(empty_middle(3, 2))
    ma, md = cpa(a_part), cpd(d_part)
    assert tensor_A_DA(ma, mm).differences(ma) == []
    assert tensor_DA_D(mm, md).differences(md) == []


def test_cpdd_smallest():
    dd = cpdd(1, 1)
    assert dd.k_prime == 1
    assert len(dd.basis()) == 5
    unit = dd.unit(frozenset({0}))
    expected = FreeElement.basis(1, (rho(1, {0}, 0, 1), rho_down(1, {1}, 0, 1)))
    assert dd.d(FreeElement.basis(1, unit)) == expected
    assert rho_down(1, {1}, 0, 1) == StrandBasisElement.from_map(1, {1: 0}, downward=True)
    assert dd.d_squared_failures() == []


@pytest.mark.parametrize("n,k", [(2, 0), (2, 1), (2, 2), (2, 3), (3, 2)])
def test_cpdd_squares_to_zero(n, k):
    assert cpdd(n, k).d_squared_failures() == []


def test_absorption_recovers_type_d(unknot2, grid3):
    for d in (unknot2, grid3):
        for k in range(1, d.n + 1):
            _, d_part = slice_diagram(d, [k])
            mabs = cpa_abs(d_part)
            assert mabs.associativity_failures() == []
            absorbed = tensor_Aabs_DD(mabs, cpdd(d.n, k))
            assert absorbed.differences(cpd(d_part)) == []


def test_absorbing_module_rejects_upward_elements(unknot2):
    _, d_part = slice_diagram(unknot2, [1])
    mabs = cpa_abs(d_part)
    with pytest.raises(PairingError):
        mabs.act(FreeElement.basis(2, Generator(1, (0, 1))), idempotent(2, {0, 1}))


def test_cancellation_profile(grid3):
    _, d_part = slice_diagram(grid3, [1])
    profile = cancellation_profile(cpd(d_part))
    assert isinstance(profile, Counter)
    assert not [key for key in profile if key[0] == "odd"]


@settings(max_examples=15, deadline=None)
@given(
    st.integers(min_value=2, max_value=3).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.permutations(range(1, n + 1)),
            st.permutations(range(1, n + 1)),
            st.integers(min_value=1, max_value=n),
        )
    )
)
def test_random_pairings(key):
    n, sx, so, k = key
    d = validate_planar(n, sx, so)
    a_part, d_part = slice_diagram(d, [k])
    assert pair_AD(cpa(a_part), cpd(d_part)).differences(cfp_complex(d)) == []


def test_pairing_on_seeded_n4_sample(random_grids):
    for d in random_grids(4, 3, seed=11):
        direct = cfp_complex(d)
        for k in (1, 3):
            a_part, d_part = slice_diagram(d, [k])
            assert pair_AD(cpa(a_part), cpd(d_part)).differences(direct) == []
