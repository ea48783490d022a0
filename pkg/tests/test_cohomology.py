"""Tests for the Chevalley-Eilenberg complex with adjoint coefficients."""

import math
import random
from fractions import Fraction

import pytest

from liedeform.catalog import h1_cocycles, heisenberg, phi
from liedeform.cohomology import (
    Cochain,
    CochainBasis,
    NotACocycleError,
    apply_differential,
    class_eq,
    cocycle_constraints,
    cohomology_dim,
    differential,
    heisenberg_hp_formula,
    is_coboundary,
    is_cocycle,
    span_in_cohomology,
)
from liedeform.exact import PolyScalar, is_rational_multiple
from liedeform.liealg import LieAlgebra

from test_exact import naive_rank


def abelian(n):
    return LieAlgebra(n, {})


def random_cochain(rng, degree, dim, lo=-3, hi=3):
    basis = CochainBasis(dim, degree)
    coords = [Fraction(rng.randint(lo, hi)) for _ in range(basis.size)]
    return Cochain.from_coords(degree, dim, coords)


# -- cochain mechanics ---------------------------------------------------------


def test_cochain_alternating_evaluation():
    c = Cochain(2, 3, {(0, 2): [1, 2, 0]})
    assert c.value((0, 2)) == (Fraction(1), Fraction(2), Fraction(0))
    assert c.value((2, 0)) == (Fraction(-1), Fraction(-2), Fraction(0))
    assert c.value((1, 1)) == (Fraction(0),) * 3
    assert c.value((0, 1)) == (Fraction(0),) * 3


def test_cochain_rejects_bad_entries():
    with pytest.raises(ValueError):
        Cochain(2, 3, {(2, 0): [1, 0, 0]})  # not increasing
    with pytest.raises(ValueError):
        Cochain(2, 3, {(0, 3): [1, 0, 0]})  # out of range
    with pytest.raises(ValueError):
        Cochain(2, 3, {(0, 1): [1, 0]})  # short vector


def test_cochain_coords_round_trip():
    rng = random.Random(31)
    for degree in (0, 1, 2, 3):
        c = random_cochain(rng, degree, 4)
        assert Cochain.from_coords(degree, 4, c.coords()) == c


def test_cochain_basis_size():
    for n in (3, 5, 7):
        for q in range(n + 1):
            assert CochainBasis(n, q).size == math.comb(n, q) * n


# -- the differential ------------------------------------------------------------


def test_differential_abelian_is_zero():
    A = abelian(4)
    for q in range(0, 5):
        assert differential(A, q).is_zero()


def test_differential_out_of_range():
    with pytest.raises(ValueError):
        differential(heisenberg(1), 4)
    with pytest.raises(ValueError):
        differential(heisenberg(1), -1)


def test_h1_cocycles_in_kernel_of_d2():
    h1 = heisenberg(1)
    d2 = differential(h1, 2)
    for c in h1_cocycles():
        assert all(x == 0 for x in d2.mul_vector(c.coords()))


def test_h2_differential_ranks():
    h2 = heisenberg(2)
    assert differential(h2, 0).rank() == 4
    assert differential(h2, 1).rank() == 10


def test_h2_d2_rank_and_nullity_against_naive_oracle():
    d2 = differential(heisenberg(2), 2)
    assert (d2.nrows, d2.ncols) == (50, 50)
    assert naive_rank([list(d2.row(i)) for i in range(d2.nrows)]) == 20
    assert d2.rank() == 20
    assert len(d2.nullspace()) == 30  # = 50 - 20; dim H^2 + rank d_1 = 20 + 10


def test_d_compose_d_is_zero_h1_h2():
    for n in (1, 2):
        A = heisenberg(n)
        for q in range(A.dim):
            assert (differential(A, q + 1) * differential(A, q)).is_zero()


def test_apply_differential_matches_matrix():
    rng = random.Random(13)
    A = heisenberg(2)
    for q in (1, 2):
        c = random_cochain(rng, q, 5)
        dc = apply_differential(A, c)
        assert dc.coords() == differential(A, q).mul_vector(c.coords())


# -- cocycles and coboundaries -----------------------------------------------------


def test_is_cocycle_examples():
    h2 = heisenberg(2)
    assert is_cocycle(h2, phi("phi3"))
    assert is_cocycle(h2, Cochain.zero(2, 5))
    assert not is_cocycle(h2, Cochain(2, 5, {(3, 4): [0, 0, 0, 0, 1]}))


def test_symbolic_cocycle_constraints():
    h2 = heisenberg(2)
    for name in ("phi1", "phi2", "phi3", "phi4", "phi5", "phi6", "phi7"):
        assert cocycle_constraints(h2, phi(name, symbolic=True)) == []
    gen = PolyScalar.variable("p") * (
        PolyScalar.variable("q") - PolyScalar.variable("r")
    )
    constraints = cocycle_constraints(h2, phi("phi8", symbolic=True))
    assert constraints
    assert all(is_rational_multiple(x, gen) for x in constraints)


def test_coboundary_of_random_one_cochain():
    rng = random.Random(17)
    h2 = heisenberg(2)
    for _ in range(10):
        lam = random_cochain(rng, 1, 5)
        c = apply_differential(h2, lam)
        preimage = is_coboundary(h2, c)
        assert preimage is not None
        assert apply_differential(h2, preimage) == c


def test_h1_cocycles_are_not_coboundaries():
    h1 = heisenberg(1)
    for c in h1_cocycles():
        assert is_coboundary(h1, c) is None


def test_phi7_000_plus_phi4_00_is_the_zero_cochain():
    total = phi("phi7", (0, 0, 0)) + phi("phi4", (0, 0))
    assert total.is_zero
    preimage = is_coboundary(heisenberg(2), total)
    assert preimage is not None and preimage.is_zero


def test_is_coboundary_rejects_degree_zero_and_symbolic():
    h2 = heisenberg(2)
    with pytest.raises(ValueError):
        is_coboundary(h2, Cochain(0, 5, {(): [1, 0, 0, 0, 0]}))
    with pytest.raises(ValueError):
        is_coboundary(h2, phi("phi8", symbolic=True))


# -- cohomology dimensions ---------------------------------------------------------


def test_dim_h2_of_h1_and_h2():
    assert cohomology_dim(heisenberg(1), 2).dim_H == 5
    assert cohomology_dim(heisenberg(2), 2).dim_H == 20


def test_dim_h_abelian():
    A = abelian(3)
    for q in range(4):
        assert cohomology_dim(A, q).dim_H == 3 * math.comb(3, q)


def test_report_consistency():
    report = cohomology_dim(heisenberg(2), 2)
    assert report.dim_kernel == report.dim_cochain - report.rank_d == 30
    assert report.dim_image_prev == 10
    assert report.dim_H == report.dim_kernel - report.dim_image_prev


def test_representatives_span_cohomology():
    h1 = heisenberg(1)
    report = cohomology_dim(h1, 2, representatives=True)
    reps = report.representatives
    assert len(reps) == report.dim_H == 5
    assert all(is_cocycle(h1, c) for c in reps)
    assert span_in_cohomology(h1, 2, list(reps)) == 5


def test_formula_examples_and_errors():
    assert heisenberg_hp_formula(1, 2) == 5
    assert heisenberg_hp_formula(2, 2) == 20
    for n in (1, 2, 3, 4):
        assert heisenberg_hp_formula(n, 0) == 1
    with pytest.raises(ValueError):
        heisenberg_hp_formula(0, 0)
    with pytest.raises(ValueError):
        heisenberg_hp_formula(1, 4)
    with pytest.raises(ValueError):
        heisenberg_hp_formula(2, -1)


def test_formula_matches_direct_computation_small():
    # n = 3 is covered by the acceptance suite
    for n in (1, 2):
        A = heisenberg(n)
        for p in range(0, 2 * n + 2):
            assert heisenberg_hp_formula(n, p) == cohomology_dim(A, p).dim_H


def test_euler_characteristic_consistency():
    for n in (1, 2):
        dim = 2 * n + 1
        chi_cochain = sum(
            (-1) ** q * CochainBasis(dim, q).size for q in range(dim + 1)
        )
        chi_h = sum(
            (-1) ** p * heisenberg_hp_formula(n, p) for p in range(dim + 1)
        )
        assert chi_cochain == chi_h == 0


# -- class comparison and spans ------------------------------------------------------


def test_class_eq_examples():
    h2 = heisenberg(2)
    c = phi("phi3")
    assert class_eq(h2, c, c)
    assert class_eq(h2, phi("phi8", (0, 0, 0)), phi("phi6", (0, 0)))
    h1 = heisenberg(1)
    five = h1_cocycles()
    assert not class_eq(h1, five[0], five[1])


def test_class_eq_rejects_non_cocycles():
    h2 = heisenberg(2)
    not_cocycle = Cochain(2, 5, {(3, 4): [0, 0, 0, 0, 1]})
    with pytest.raises(NotACocycleError):
        class_eq(h2, not_cocycle, phi("phi3"))


def test_class_eq_is_an_equivalence_relation():
    rng = random.Random(23)
    h2 = heisenberg(2)
    base = [phi("phi3"), phi("phi4", (1, 0)), phi("phi6", (0, 1))]
    cocycles = list(base)
    for c in base:  # the same classes shifted by random coboundaries
        lam = random_cochain(rng, 1, 5)
        cocycles.append(c + apply_differential(h2, lam))
    for a in cocycles:
        assert class_eq(h2, a, a)
    for a in cocycles:
        for b in cocycles:
            assert class_eq(h2, a, b) == class_eq(h2, b, a)
    for i, a in enumerate(base):
        shifted = cocycles[len(base) + i]
        assert class_eq(h2, a, shifted)
    # transitivity across the coboundary shifts
    for i, a in enumerate(base):
        for j, b in enumerate(base):
            lhs = class_eq(h2, a, b)
            rhs = class_eq(h2, cocycles[len(base) + i], cocycles[len(base) + j])
            assert lhs == rhs


def test_coboundary_perturbation_invariance():
    rng = random.Random(29)
    h2 = heisenberg(2)
    a = phi("phi4", (1, 0))
    b = phi("phi5", (0, 1))
    for _ in range(5):
        lam = random_cochain(rng, 1, 5)
        shift = apply_differential(h2, lam)
        assert class_eq(h2, a, a + shift)
        assert class_eq(h2, a, b) == class_eq(h2, a + shift, b)
        assert span_in_cohomology(h2, 2, [a, b]) == span_in_cohomology(
            h2, 2, [a + shift, b]
        )


def test_span_examples():
    h2 = heisenberg(2)
    assert span_in_cohomology(
        h2, 2, [phi("phi4", (1, 0)), phi("phi4", (0, 1)), phi("phi4", (0, 0))]
    ) == 3
    assert span_in_cohomology(
        h2,
        2,
        [
            phi("phi7", (0, 0, 0)),
            phi("phi7", (1, 0, 0)),
            phi("phi7", (0, 1, 0)),
            phi("phi7", (0, 0, 1)),
        ],
    ) == 4
    h1 = heisenberg(1)
    assert span_in_cohomology(h1, 2, h1_cocycles()) == 5


def test_span_rejects_non_cocycles():
    h2 = heisenberg(2)
    with pytest.raises(NotACocycleError):
        span_in_cohomology(h2, 2, [Cochain(2, 5, {(3, 4): [0, 0, 0, 0, 1]})])
