import numpy as np
import pytest
from hypothesis import given, strategies as st

from starclean import groups, groupring as gr
from starclean.errors import BudgetError, CarrierMismatchError


@pytest.fixture(scope="module")
def rq8_f3(q8, f3):
    return gr.GroupRing(q8.group, f3)


@pytest.fixture(scope="module")
def sigma_q8(q8):
    return groups.canonical_involution(q8)


def _random_elt(RG, rng):
    return RG.random_element(rng)


# ---------------------------------------------------------------- arithmetic

def test_one_is_neutral(rq8_f3):
    rng = np.random.default_rng(7)
    a = _random_elt(rq8_f3, rng)
    assert rq8_f3.one() * a == a
    assert a * rq8_f3.one() == a


def test_one_minus_s_squares_to_twice_itself(rq8_f3, q8, f3):
    oms = rq8_f3.one() - rq8_f3.basis(q8.s)
    assert oms * oms == oms.scale(f3.from_int(2))


def test_xy_vs_yx_differ_by_s(rq8_f3, q8):
    x = rq8_f3.basis(q8.group.generators["x"])
    y = rq8_f3.basis(q8.group.generators["y"])
    s = rq8_f3.basis(q8.s)
    assert x * y == (y * x) * s
    assert x * y != y * x


def test_carrier_mismatch_raises(rq8_f3, f5, q8):
    other = gr.GroupRing(q8.group, f5)
    with pytest.raises(CarrierMismatchError):
        rq8_f3.one() + other.one()


def test_operation_aliases(rq8_f3, f3, q8):
    a = rq8_f3.basis(q8.group.generators["x"])
    b = rq8_f3.basis(q8.group.generators["y"])
    assert gr.add(a, b) == a + b
    assert gr.mul(a, b) == a * b
    assert gr.neg(a) == -a
    assert gr.scalar_mul(f3.from_int(2), a) == a.scale(f3.from_int(2))


# ---------------------------------------------------------------- involution

def test_involution_on_x_plus_y(rq8_f3, q8, sigma_q8):
    x = rq8_f3.basis(q8.group.generators["x"])
    y = rq8_f3.basis(q8.group.generators["y"])
    s = rq8_f3.basis(q8.s)
    assert gr.apply_involution(sigma_q8, x + y) == s * (x + y)


def test_involution_fixes_central_support(rq8_f3, q8, sigma_q8, f3):
    alpha = rq8_f3.from_int_coeffs([2, 1, 0, 0, 0, 0, 0, 0])  # supported on {1, s}
    assert gr.apply_involution(sigma_q8, alpha) == alpha


@given(st.integers(0, 3**8 - 1), st.integers(0, 3**8 - 1))
def test_involution_antimultiplicative(q8, f3, a_code, b_code):
    RG = gr.GroupRing(q8.group, f3)
    sigma = groups.canonical_involution(q8)
    digits = lambda c: [(c // 3**i) % 3 for i in range(8)]
    a = RG.from_int_coeffs(digits(a_code))
    b = RG.from_int_coeffs(digits(b_code))
    assert gr.apply_involution(sigma, a * b) == gr.apply_involution(
        sigma, b
    ) * gr.apply_involution(sigma, a)


def test_involution_order_two_and_support(rq8_f3, sigma_q8):
    rng = np.random.default_rng(3)
    a = _random_elt(rq8_f3, rng)
    astar = gr.apply_involution(sigma_q8, a)
    assert gr.apply_involution(sigma_q8, astar) == a
    assert sorted(astar.support()) == sorted(
        int(sigma_q8.image[g]) for g in a.support()
    )


# ---------------------------------------------------------------- predicates

def test_zero_one_projections(rq8_f3, sigma_q8):
    assert gr.is_projection(rq8_f3.zero(), sigma_q8)
    assert gr.is_projection(rq8_f3.one(), sigma_q8)


def test_e_is_projection_x_is_not(q8, f3, rq8_f3, sigma_q8):
    pair = gr.central_idempotents(q8, f3)
    assert gr.is_projection(pair.e, sigma_q8)
    x = rq8_f3.basis(q8.group.generators["x"])
    assert not gr.is_idempotent(x)  # x^2 = s != x


def test_central_idempotents_f3(q8, f3):
    pair = gr.central_idempotents(q8, f3)
    pair.validate()
    assert pair.e.to_dict() == {"1": "2", "s": "2"}
    assert pair.f.to_dict() == {"1": "2", "s": "1"}


# ---------------------------------------------------------------- units

def test_group_elements_are_units(rq8_f3, q8):
    for g in q8.group.elements():
        el = rq8_f3.basis(g)
        assert gr.is_unit(el)
        assert gr.unit_inverse(el) == rq8_f3.basis(q8.group.inv_idx(g))


def test_one_plus_s_is_not_a_unit(rq8_f3, q8):
    one_plus_s = rq8_f3.one() + rq8_f3.basis(q8.s)
    oms = rq8_f3.one() - rq8_f3.basis(q8.s)
    assert (one_plus_s * oms).is_zero()
    assert not gr.is_unit(one_plus_s)
    assert gr.unit_inverse(one_plus_s) is None


def test_proper_idempotent_not_unit(q8, f3):
    pair = gr.central_idempotents(q8, f3)
    assert not gr.is_unit(pair.f)


@pytest.mark.parametrize("factors", [[2], [4]])
def test_unit_predicate_matches_exhaustive_inverse_search(factors, f3):
    G = groups.build_abelian(factors)
    RG = gr.GroupRing(G, f3)
    els = list(gr.enumerate_elements(RG))
    one = RG.one()
    for a in els:
        exhaustive = any(a * b == one for b in els)
        assert exhaustive == gr.is_unit(a)


def test_regrep_det_multiplicative(q8, f5):
    RG = gr.GroupRing(q8.group, f5)
    rng = np.random.default_rng(11)
    for _ in range(10):
        a, b = RG.random_element(rng), RG.random_element(rng)
        assert gr.regrep_det(a * b) == f5.mul(gr.regrep_det(a), gr.regrep_det(b))


def test_units_over_infinite_rings(q8, qq):
    RG = gr.GroupRing(q8.group, qq)
    x = RG.basis(q8.group.generators["x"])
    assert gr.is_unit(x)
    assert gr.unit_inverse(x) * x == RG.one()
    assert not gr.is_unit(RG.one() + RG.basis(q8.s))


# ---------------------------------------------------------------- splitting

def test_split_of_one(q8, f5):
    pair = gr.central_idempotents(q8, f5)
    parts = gr.split(gr.GroupRing(q8.group, f5).one(), pair)
    assert parts.e_part == gr.GroupRing(parts.quotient_group, f5).one()
    assert parts.f_part == pair.f


def test_split_of_s_gives_minus_f(q8, f5):
    RG = gr.GroupRing(q8.group, f5)
    pair = gr.central_idempotents(q8, f5)
    parts = gr.split(RG.basis(q8.s), pair)
    assert parts.e_part == gr.GroupRing(parts.quotient_group, f5).one()
    assert parts.f_part == -pair.f


def test_split_roundtrip_random(q8, f5):
    RG = gr.GroupRing(q8.group, f5)
    pair = gr.central_idempotents(q8, f5)
    rng = np.random.default_rng(5)
    for _ in range(25):
        alpha = RG.random_element(rng)
        assert gr.split(alpha, pair).reassemble() == alpha


def test_f_annihilates_e_side(q8, f5):
    RG = gr.GroupRing(q8.group, f5)
    pair = gr.central_idempotents(q8, f5)
    oms = RG.one() - RG.basis(q8.s)
    assert (oms * pair.e).is_zero()
    rng = np.random.default_rng(6)
    alpha = RG.random_element(rng)
    assert alpha * pair.f == alpha - alpha * pair.e


# ---------------------------------------------------------------- enumeration

def test_f3_c2_enumeration_counts(f3):
    c2 = groups.cyclic_group(2)
    RG = gr.GroupRing(c2, f3)
    els = list(gr.enumerate_elements(RG))
    assert len(els) == 9
    assert sum(1 for a in els if gr.is_unit(a)) == 4
    idems = [a for a in els if gr.is_idempotent(a)]
    half = f3.half
    e = RG.from_coeffs([half, half])
    f = RG.from_coeffs([half, f3.neg(half)])
    assert set(idems) == {RG.zero(), RG.one(), e, f}


def test_projection_enumeration_symmetric_subspace(q8, f3, sigma_q8):
    RG = gr.GroupRing(q8.group, f3)
    projs = list(gr.enumerate_projections(RG, sigma_q8))
    pair = gr.central_idempotents(q8, f3)
    pset = set(projs)
    assert {RG.zero(), RG.one(), pair.e, pair.f} <= pset
    for p in projs:
        assert gr.is_projection(p, sigma_q8)


def test_enumeration_budget_error(f3):
    s = groups.build_slc(groups.Presentation.D2, 1, abelian=[2, 2])
    RG = gr.GroupRing(s.group, f3)
    with pytest.raises(BudgetError) as err:
        list(gr.enumerate_elements(RG))
    assert err.value.cardinality == 3**32


def test_enumerate_units_small(f3):
    c2 = groups.cyclic_group(2)
    RG = gr.GroupRing(c2, f3)
    units = list(gr.enumerate_units(RG))
    assert len(units) == 4
