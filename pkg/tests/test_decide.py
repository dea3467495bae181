import numpy as np
import pytest

from starclean import coeff, decide, groups, groupring as gr
from starclean.decide import Budget, Status
from starclean.errors import CharDividesError, PreconditionError
from starclean.groups import Presentation as P


# ---------------------------------------------------------------- number theory

def test_exists_n_dividing_examples():
    assert decide.exists_n_dividing(3) == 1
    assert decide.exists_n_dividing(5) == 2
    assert decide.exists_n_dividing(7) is None
    assert decide.exists_n_dividing(17) == 4  # 17 = 2^4 + 1


def test_exists_n_dividing_verifies():
    for p in [3, 5, 11, 13, 17, 19, 29]:
        n = decide.exists_n_dividing(p)
        if n is not None:
            assert (2**n + 1) % p == 0


def test_exists_n_rejects_composite():
    with pytest.raises(PreconditionError):
        decide.exists_n_dividing(9)


# ---------------------------------------------------------------- necessary conditions

def test_necessary_q8c3_fails_prime_condition(f3, qq):
    s = groups.build_slc(P.D2, 1, abelian=[3])
    for R in (f3, qq):
        v = decide.necessary_conditions(s, R)
        assert v.status is Status.NOT_STAR_CLEAN
        assert v.cited("TheoremA.2")


def test_necessary_q8c7_over_q_passes(qq):
    s = groups.build_slc(P.D2, 1, abelian=[7])
    v = decide.necessary_conditions(s, qq)
    assert v.status is Status.UNKNOWN
    assert v.cited("TheoremA.necessary")


def test_necessary_dihedral_fails_structure(d4, f3):
    v = decide.necessary_conditions(d4, f3)
    assert v.status is Status.NOT_STAR_CLEAN
    assert v.cited("TheoremA.structure")


def test_necessary_order4_condition(f3):
    s = groups.build_slc(P.D2, 1, abelian=[4])
    v = decide.necessary_conditions(s, f3)
    assert v.status is Status.NOT_STAR_CLEAN
    assert v.cited("TheoremA.1")


def test_necessary_equation_condition(q8, f3):
    v = decide.necessary_conditions(q8, f3)
    assert v.status is Status.NOT_STAR_CLEAN
    assert v.cited("TheoremA.equation")
    cert = next(c for c in v.certificates if c["kind"] == "three-squares")
    assert cert["triple"] == ["1", "1", "0"]


# ---------------------------------------------------------------- perlis-walker

def test_perlis_walker_q_c7(qq):
    pw = decide.perlis_walker(qq, groups.cyclic_group(7))
    assert pw.components == ((1, 1, 1), (7, 1, 6))
    assert pw.mass() == 7


def test_perlis_walker_f3_c8(f3):
    pw = decide.perlis_walker(f3, groups.cyclic_group(8))
    assert pw.components == ((1, 1, 1), (2, 1, 1), (4, 1, 2), (8, 2, 2))
    assert pw.mass() == 8


def test_perlis_walker_trivial(qq):
    assert decide.perlis_walker(qq, groups.trivial_group()).components == ((1, 1, 1),)


def test_perlis_walker_char_divides(f3):
    with pytest.raises(CharDividesError):
        decide.perlis_walker(f3, groups.cyclic_group(3))


def test_perlis_walker_random_mass(qq, f3, f5):
    rng = np.random.default_rng(0)
    for _ in range(30):
        factors = [int(rng.choice([2, 3, 4, 5, 7, 8, 9])) for _ in range(rng.integers(1, 4))]
        A = groups.build_abelian(factors)
        if A.order > 512:
            continue
        for F in (qq, f3, f5):
            if F.char and A.order % F.char == 0:
                continue
            assert decide.perlis_walker(F, A).mass() == A.order


# ---------------------------------------------------------------- theorem C / B

def test_theorem_c_rational_c7_star_clean(qq):
    v = decide.theorem_c_decide([qq], groups.cyclic_group(7))
    assert v.status is Status.STAR_CLEAN
    assert v.cited("TheoremC")


def test_theorem_c_rational_c3_not(qq):
    v = decide.theorem_c_decide([qq], groups.cyclic_group(3))
    assert v.status is Status.NOT_STAR_CLEAN


def test_theorem_c_finite_field_trivial_a(f3):
    v = decide.theorem_c_decide([f3], groups.trivial_group())
    assert v.status is Status.NOT_STAR_CLEAN
    assert v.certificates and v.certificates[0]["kind"] == "three-squares"


def test_theorem_c_char_divides(f3):
    with pytest.raises(CharDividesError):
        decide.theorem_c_decide([f3], groups.cyclic_group(3))


def test_theorem_b_examples(f3, qq):
    assert decide.theorem_b_decide(f3, 1, True).status is Status.NOT_STAR_CLEAN
    assert decide.theorem_b_decide(qq, 3, True).status is Status.STAR_CLEAN
    assert decide.theorem_b_decide(qq, 1, False).status is Status.NOT_STAR_CLEAN
    assert decide.theorem_b_decide(qq, 1, None).status is Status.UNKNOWN


def test_theorem_b_agrees_with_theorem_c_where_both_apply(qq, f3):
    # rank-0 over a field is the trivial-A case of the semisimple criterion
    for F in (qq, coeff.Qzeta(7), f3):
        b = decide.theorem_b_decide(F, 0, True)
        c = decide.theorem_c_decide([F], groups.trivial_group())
        assert b.status == c.status


def test_direct_sum_reduce(qq):
    sc = decide.Verdict(Status.STAR_CLEAN)
    nsc = decide.Verdict(Status.NOT_STAR_CLEAN)
    unk = decide.Verdict(Status.UNKNOWN)
    assert decide.direct_sum_reduce([sc, sc]).status is Status.STAR_CLEAN
    assert decide.direct_sum_reduce([sc, nsc]).status is Status.NOT_STAR_CLEAN
    assert decide.direct_sum_reduce([sc, unk]).status is Status.UNKNOWN
    empty = decide.direct_sum_reduce([])
    assert empty.status is Status.STAR_CLEAN
    assert empty.reasons[0].data["degenerate"]


# ---------------------------------------------------------------- brute force

def test_brute_clean_f3_c2(f3):
    rep = decide.brute_clean(groups.cyclic_group(2), f3)
    assert rep.result is True and rep.mode == "full"


def test_brute_star_clean_f3_c2_identity_involution(f3):
    c2 = groups.cyclic_group(2)
    rep = decide.brute_star_clean(c2, groups.classical_involution(c2), f3)
    assert rep.result is True and rep.mode == "full"


def test_brute_star_clean_f3_q8_counterexample(q8, f3):
    sigma = groups.canonical_involution(q8)
    rep = decide.brute_star_clean(q8.group, sigma, f3)
    assert rep.result is False
    assert rep.structure_full
    # the counterexample really has no decomposition
    assert decide.element_star_clean(rep.counterexample, sigma) is None


def test_brute_clean_sampled_mode_with_full_idempotents(q8, f5):
    # force element sampling while the idempotent set stays exhaustive
    budget = Budget(full_scan_limit=1000, sample_count=300, seed=2)
    rep = decide.brute_clean(q8.group, f5, budget)
    assert rep.mode == "sampled"
    assert rep.structure_full
    assert rep.result is True  # F5[Q8] is clean; sampling finds no counterexample


def test_brute_star_clean_sampled_mode(q8, f3):
    sigma = groups.canonical_involution(q8)
    budget = Budget(full_scan_limit=100, sample_count=300, seed=1)
    rep = decide.brute_star_clean(q8.group, sigma, f3, budget)
    assert rep.mode == "sampled"
    # sampling still runs against the full projection set
    assert rep.structure_full
    assert rep.result is False  # counterexamples are dense enough to hit


def test_element_star_clean_one_yields_unit_plus_zero(q8, f3):
    RG = gr.GroupRing(q8.group, f3)
    sigma = groups.canonical_involution(q8)
    dec = decide.element_star_clean(RG.one(), sigma)
    assert dec.projection == RG.zero() and dec.unit == RG.one()


def test_element_star_clean_central_idempotent(q8, f3):
    sigma = groups.canonical_involution(q8)
    pair = gr.central_idempotents(q8, f3)
    dec = decide.element_star_clean(pair.e, sigma)
    assert dec is not None
    dec.validate(sigma)
    assert dec.target() == pair.e


def test_projection_set_exhaustive_flag(q8, f3):
    RG = gr.GroupRing(q8.group, f3)
    sigma = groups.canonical_involution(q8)
    projs, full = decide.projection_set(RG, sigma)
    assert full and projs.shape[0] == 32
    projs_sampled, full_sampled = decide.projection_set(
        RG, sigma, Budget(structure_limit=10, structure_samples=50, low_support_limit=27)
    )
    assert not full_sampled
    rows = {tuple(r) for r in projs_sampled}
    assert tuple([0] * 8) in rows  # zero always found in the low-index stratum


@pytest.mark.parametrize("p,k", [(3, 1), (5, 1), (7, 1), (3, 2)])
def test_q8_never_star_clean_over_small_odd_fields(q8, p, k):
    R = coeff.GF(p, k)
    sigma = groups.canonical_involution(q8)
    rep = decide.brute_star_clean(q8.group, sigma, R, Budget(sample_count=3000))
    assert rep.result is False and rep.structure_full
    assert decide.necessary_conditions(q8, R).status is Status.NOT_STAR_CLEAN


@pytest.mark.parametrize("p,k", [(5, 2), (3, 3)])
def test_q8_never_star_clean_over_larger_prime_powers(q8, p, k):
    # the projection candidate space needs a raised structure budget here
    R = coeff.GF(p, k)
    sigma = groups.canonical_involution(q8)
    budget = Budget(structure_limit=20_000_000, sample_count=3000)
    rep = decide.brute_star_clean(q8.group, sigma, R, budget)
    assert rep.result is False and rep.structure_full
    assert decide.necessary_conditions(q8, R).status is Status.NOT_STAR_CLEAN


# ---------------------------------------------------------------- cross validation

def test_cross_validate_f3_q8(q8, f3):
    sigma = groups.canonical_involution(q8)
    cr = decide.cross_validate(q8, sigma, f3)
    assert cr.agreement == "agree"
    assert cr.theory.status is Status.NOT_STAR_CLEAN
    assert cr.brute_star.result is False
    assert cr.brute_clean_report.result is True


def test_cross_validate_abelian_theory_na(f3):
    c2 = groups.cyclic_group(2)
    cr = decide.cross_validate(c2, groups.classical_involution(c2), f3)
    assert cr.agreement == "theory-not-applicable"
    assert cr.brute_star.result is True


def test_cross_validate_classical_involution_on_d1_theory_na(d4, f3):
    # the canonical theory only covers its own involution
    cr = decide.cross_validate(d4, groups.classical_involution(d4.group), f3)
    assert cr.theory is None


# ---------------------------------------------------------------- full decide

def test_decide_star_clean_q8c7_over_q(qq):
    s = groups.build_slc(P.D2, 1, abelian=[7])
    v = decide.decide_star_clean(s, qq)
    assert v.status is Status.STAR_CLEAN
    assert v.cited("CorollaryA.2")


def test_decide_star_clean_plain_group_is_out_of_scope(f3):
    v = decide.decide_star_clean(groups.cyclic_group(4), f3)
    assert v.status is Status.UNKNOWN
    assert v.cited("NotInScope")


def test_decide_star_clean_q8_over_gaussian_field(q8):
    v = decide.decide_star_clean(q8, coeff.Qzeta(4))
    assert v.status is Status.NOT_STAR_CLEAN  # i solves the equation


def test_decide_star_clean_q8_over_qzeta7(q8):
    v = decide.decide_star_clean(q8, coeff.Qzeta(7))
    assert v.status is Status.STAR_CLEAN
