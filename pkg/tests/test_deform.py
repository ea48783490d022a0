"""Tests for formal deformations, defects, extension and isomorphism search."""

import random
from fractions import Fraction

import pytest

from liedeform.catalog import d5_d6_basis_change, h1_cocycles, heisenberg, phi
from liedeform.cohomology import (
    Cochain,
    CochainBasis,
    NotACocycleError,
    apply_differential,
    class_eq,
    is_coboundary,
    is_cocycle,
)
from liedeform.deform import (
    Deformation,
    defect,
    defect_report,
    extend_step,
    infinitesimal_class,
    search_isomorphism,
    specialize,
    strict_extendability,
    verify_isomorphism,
)
from liedeform.exact import ExactMatrix, SingularMatrixError
from liedeform.liealg import BasisChange, LieAlgebra

from test_cohomology import random_cochain


def single(c, base=None, truncation=4):
    return Deformation(base or heisenberg(2), {1: c}, truncation_order=truncation)


# -- defects ---------------------------------------------------------------------


def test_defect_of_phi3_vanishes_at_all_orders():
    D = single(phi("phi3"))
    for n in (1, 2, 3, 4):
        assert defect(D, n).is_zero


def test_defect_of_obstructed_phi8_point():
    D = single(phi("phi8", (0, 1, 0)))
    assert defect(D, 1).is_zero
    assert not defect(D, 2).is_zero


def test_defect_order1_iff_cocycle_randomized():
    rng = random.Random(41)
    h2 = heisenberg(2)
    seen_noncocycle = False
    for _ in range(20):
        c = random_cochain(rng, 2, 5)
        D = single(c)
        assert defect(D, 1).is_zero == is_cocycle(h2, c)
        seen_noncocycle = seen_noncocycle or not is_cocycle(h2, c)
    assert seen_noncocycle  # the sample actually exercised both branches
    # coboundaries are cocycles, so their order-1 defect vanishes
    lam = random_cochain(rng, 1, 5)
    assert defect(single(apply_differential(h2, lam)), 1).is_zero


def test_single_term_defect_vanishes_for_orders_three_and_four():
    rng = random.Random(43)
    for _ in range(10):
        c = random_cochain(rng, 2, 5)
        D = single(c)
        assert defect(D, 3).is_zero
        assert defect(D, 4).is_zero


def test_defect_report_statuses():
    report = defect_report(single(phi("phi8", (0, 0, 1))))
    assert report.first_nonzero == 2
    st = report.status(2)
    assert not st.is_zero
    assert st.is_coboundary  # exact-defect family; class in H^3 is zero
    assert st.obstruction is None
    assert report.status(1).is_zero


# -- strict extendability -----------------------------------------------------------


def test_strict_extendability_of_singles():
    for name in ("phi1", "phi2", "phi3"):
        verdict = strict_extendability(single(phi(name)))
        assert verdict.exact_lie_bracket and verdict.obstructed_at is None


def test_strict_extendability_of_obstructed_points():
    for params in ((0, 1, 0), (0, 0, 1)):
        verdict = strict_extendability(single(phi("phi8", params)))
        assert not verdict.exact_lie_bracket
        assert verdict.obstructed_at == 2


def test_h1_deformations_are_real():
    h1 = heisenberg(1)
    for c in h1_cocycles():
        verdict = strict_extendability(single(c, base=h1))
        assert verdict.exact_lie_bracket


def test_strict_extendability_rejects_non_cocycle():
    bad = Cochain(2, 5, {(3, 4): [0, 0, 0, 0, 1]})
    with pytest.raises(NotACocycleError):
        strict_extendability(single(bad))


def test_strict_extendability_rejects_multi_term():
    c = phi("phi3")
    D = Deformation(heisenberg(2), {1: c, 2: c})
    with pytest.raises(ValueError):
        strict_extendability(D)


# -- extension steps -----------------------------------------------------------------


def test_extend_step_trivial_deformation():
    D = Deformation(heisenberg(2), {})
    out = extend_step(D)
    assert out.ok
    assert out.extended.term(1).is_zero
    out2 = extend_step(out.extended)
    assert out2.ok and out2.extended.term(2).is_zero


def test_extend_step_extendable_family_adds_zero():
    out = extend_step(single(phi("phi4", (1, 0))))
    assert out.ok
    assert out.extended.term(2).is_zero


def test_extend_step_on_exact_defect_finds_correction():
    # The order-2 defect of this cocycle is a coboundary, so a second-order
    # correction exists even though the strict (mu_2 = 0) check fails.
    D = single(phi("phi8", (0, 1, 0)))
    out = extend_step(D)
    assert out.ok
    mu2 = out.extended.term(2)
    assert not mu2.is_zero
    assert defect(out.extended, 2).is_zero


def test_extend_step_requires_clean_lower_orders():
    h2 = heisenberg(2)
    D = Deformation(h2, {1: phi("phi8", (0, 1, 0)), 2: Cochain.zero(2, 5)})
    with pytest.raises(ValueError):
        extend_step(D)  # order-2 defect is nonzero with mu_2 = 0 pinned


def test_infinitesimal_class():
    h2 = heisenberg(2)
    c = phi("phi4", (1, 1))
    assert infinitesimal_class(single(c)) == c
    with pytest.raises(NotACocycleError):
        infinitesimal_class(single(Cochain(2, 5, {(3, 4): [0, 0, 0, 0, 1]})))


def test_infinitesimal_class_combination_identities():
    # phi4(p:q) ~ phi4(p:0) + phi4(0:q) - phi4(0:0), and the phi7 analogue
    # with coefficient -2, hold entry-wise, hence also as classes.
    h2 = heisenberg(2)
    rng = random.Random(47)
    for _ in range(5):
        p = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        q = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        combo4 = phi("phi4", (p, 0)) + phi("phi4", (0, q)) - phi("phi4", (0, 0))
        assert phi("phi4", (p, q)) == combo4
        assert class_eq(h2, infinitesimal_class(single(phi("phi4", (p, q)))), combo4)
        r = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        combo7 = (
            phi("phi7", (p, 0, 0))
            + phi("phi7", (0, q, 0))
            + phi("phi7", (0, 0, r))
            - phi("phi7", (0, 0, 0)).scale(Fraction(2))
        )
        assert phi("phi7", (p, q, r)) == combo7


def test_class_unchanged_by_coboundary_perturbation_of_mu1():
    rng = random.Random(53)
    h2 = heisenberg(2)
    c = phi("phi6", (1, 0))
    for _ in range(5):
        lam = random_cochain(rng, 1, 5)
        shifted = c + apply_differential(h2, lam)
        assert class_eq(
            h2, infinitesimal_class(single(c)), infinitesimal_class(single(shifted))
        )


# -- specialization -------------------------------------------------------------------


def test_specialize_at_zero_gives_base():
    h2 = heisenberg(2)
    member = specialize(single(phi("phi1")), 0)
    assert member.brackets == h2.brackets


def test_specialize_structure_flags():
    d3 = specialize(single(phi("phi3")), 1)
    assert d3.is_solvable() and not d3.is_nilpotent()
    d4_00 = specialize(single(phi("phi4", (0, 0))), 1)
    assert d4_00.is_nilpotent()
    d4_10 = specialize(single(phi("phi4", (1, 0))), 1)
    assert d4_10.is_solvable() and not d4_10.is_nilpotent()


def test_specialize_refuses_nonzero_defect():
    with pytest.raises(ValueError):
        specialize(single(phi("phi8", (0, 1, 0))), 1)


def test_specialize_many_t_values():
    D = single(phi("phi2"))
    for t in (Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(3), Fraction(-2, 7)):
        member = specialize(D, t)  # constructor validates Jacobi
        assert member.dim == 5


# -- isomorphism verification and search ----------------------------------------------


def test_verify_isomorphism_identity():
    h2 = heisenberg(2)
    assert verify_isomorphism(h2, h2, BasisChange.identity(5))


def test_verify_isomorphism_d4_d7_sign_diagonal():
    A = specialize(single(phi("phi4", (0, 0))), 1)
    B = specialize(single(phi("phi7", (0, 0, 0))), 1)
    T = BasisChange.diagonal([-1, 1, 1, -1, -1])
    assert verify_isomorphism(A, B, T)


def test_verify_isomorphism_false_for_distinct_tables():
    A = specialize(single(phi("phi4", (0, 0))), 1)
    B = specialize(single(phi("phi7", (0, 0, 0))), 1)
    assert not verify_isomorphism(A, B, BasisChange.identity(5))


def test_verify_isomorphism_singular_map_rejected():
    h2 = heisenberg(2)
    with pytest.raises(SingularMatrixError):
        verify_isomorphism(h2, h2, ExactMatrix.zeros(5, 5))


def test_single_transvection_does_not_carry_d5_to_d6():
    # The bare column change e1 -> e1 + e4 maps [e1+e4, e2] to -e5 inside
    # mu_t(d5)(0:0), while the target table needs zero there; the compensating
    # column e2 -> e2 + e3 is required.
    A = specialize(single(phi("phi5", (0, 0))), 1)
    B = specialize(single(phi("phi6", (0, 0))), 1)
    for c in (1, -1):
        T = BasisChange.transvection(5, 0, 3, c)
        assert not verify_isomorphism(A, B, T)
        assert not verify_isomorphism(B, A, T)
    assert verify_isomorphism(A, B, d5_d6_basis_change())


def test_search_identity_found_first():
    h2 = heisenberg(2)
    for klass in ("diagonal_signs", "monomial", "monomial_plus_one_transvection"):
        T = search_isomorphism(h2, h2, klass)
        assert T is not None
        assert T.matrix == ExactMatrix.identity(5)


def test_search_d4_d7_diagonal_signs():
    A = specialize(single(phi("phi4", (0, 0))), 1)
    B = specialize(single(phi("phi7", (0, 0, 0))), 1)
    T = search_isomorphism(A, B, "diagonal_signs")
    assert T is not None
    diag = [T.matrix.entry(i, i) for i in range(5)]
    assert diag == [Fraction(-1), Fraction(1), Fraction(1), Fraction(-1), Fraction(-1)]


def test_search_d5_d6_finds_nothing_in_declared_classes():
    # Exhausted over coefficients +-1: the true isomorphism needs two
    # transvections, which no monomial-plus-one-transvection map provides.
    A = specialize(single(phi("phi5", (0, 0))), 1)
    B = specialize(single(phi("phi6", (0, 0))), 1)
    assert search_isomorphism(A, B, "monomial_plus_one_transvection") is None


def test_search_validates_inputs():
    h2 = heisenberg(2)
    with pytest.raises(ValueError):
        search_isomorphism(h2, h2, "full_gl")
    with pytest.raises(ValueError):
        search_isomorphism(h2, h2, "monomial", bound=(0, 1))
    with pytest.raises(ValueError):
        search_isomorphism(h2, heisenberg(1), "monomial")


def test_successful_search_implies_matching_invariants():
    A = specialize(single(phi("phi4", (0, 0))), 1)
    B = specialize(single(phi("phi7", (0, 0, 0))), 1)
    T = search_isomorphism(A, B, "diagonal_signs")
    assert T is not None
    assert len(A.center()) == len(B.center())
    assert A.series("derived") == B.series("derived")
    assert A.series("lower_central") == B.series("lower_central")


def test_deformation_validation():
    h2 = heisenberg(2)
    with pytest.raises(ValueError):
        Deformation(h2, {0: phi("phi3")})
    with pytest.raises(ValueError):
        Deformation(h2, {1: Cochain.zero(3, 5)})
    with pytest.raises(ValueError):
        Deformation(h2, {1: phi("phi8", symbolic=True)})
