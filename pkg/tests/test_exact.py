"""Tests for exact scalars and dense exact linear algebra."""

import random
from fractions import Fraction

import pytest

from liedeform.exact import (
    DegreeCapExceeded,
    ExactMatrix,
    PolyScalar,
    SingularMatrixError,
    format_scalar,
    is_rational_multiple,
    parse_rational,
    parse_scalar,
)


# -- independent oracle: textbook fraction row reduction, no shortcuts --------


def naive_rank(rows):
    """Plain Gaussian elimination over Fraction, written independently of the
    library's echelon code so it can serve as a rank oracle."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, nrows):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(nrows):
            if r != rank and m[r][col] != 0:
                f = m[r][col] / m[rank][col]
                for c in range(ncols):
                    m[r][c] -= f * m[rank][c]
        rank += 1
    return rank


def random_matrix(rng, nrows, ncols, density=0.5):
    return [
        [
            Fraction(rng.randint(-4, 4), rng.randint(1, 3)) if rng.random() < density else Fraction(0)
            for _ in range(ncols)
        ]
        for _ in range(nrows)
    ]


# -- rationals -----------------------------------------------------------------


def test_rational_arithmetic_examples():
    assert Fraction(1, 2) + Fraction(1, 3) == Fraction(5, 6)
    assert Fraction(2, 4) == Fraction(1, 2)  # stored reduced
    assert Fraction(-1) * Fraction(-1, 3) == Fraction(1, 3)
    assert Fraction(-3, 6).denominator == 2  # positive denominator, reduced


def test_rational_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        Fraction(1, 2) / Fraction(0)


def test_rational_parse_and_format():
    assert parse_rational("-3") == Fraction(-3)
    assert parse_rational("1/2") == Fraction(1, 2)
    assert parse_rational("−3/4") == Fraction(-3, 4)  # unicode minus
    assert format_scalar(Fraction(-3, 4)) == "-3/4"
    assert format_scalar(Fraction(7)) == "7"


def test_rational_field_axioms_randomized():
    rng = random.Random(20240811)
    for _ in range(200):
        a, b, c = (Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        assert a + (-a) == 0
        if a != 0:
            assert a * (1 / a) == 1


# -- polynomials ---------------------------------------------------------------


P = PolyScalar.variable("p")
Q = PolyScalar.variable("q")
R = PolyScalar.variable("r")


def test_poly_examples():
    assert P * (Q - R) == P * Q - P * R
    assert ((P + Q) - (P + Q)).is_zero
    assert (R * (P - Q)).evaluate({"p": 1, "q": 2, "r": 3}) == -3


def test_poly_canonical_form():
    x = P * Q * 2 - R * R + PolyScalar.const(-1)
    assert str(x) == "-1 - r^2 + 2*p*q"
    # no zero terms survive
    assert not any(c == 0 for _, c in x.terms)
    assert (P - P).terms == ()


def test_poly_parse_round_trip():
    for text in ("p", "r - q", "q*r - p*r", "-1 - r^2 + 2*p*q", "3/2*p^2*q"):
        x = parse_scalar(text)
        assert isinstance(x, PolyScalar)
        assert parse_scalar(str(x)) == x
    assert parse_scalar("5/3") == Fraction(5, 3)
    with pytest.raises(ValueError):
        parse_scalar("p + (q)")


def test_poly_constant_interop():
    assert PolyScalar.const(Fraction(1, 2)) == Fraction(1, 2)
    assert hash(PolyScalar.const(Fraction(1, 2))) == hash(Fraction(1, 2))
    assert (P - P) == 0
    assert Fraction(2) * P == P + P


def test_poly_degree_cap():
    p4 = P * P * P * P
    capped = p4 * p4  # degree 8 is still allowed
    assert capped.total_degree() == 8
    with pytest.raises(DegreeCapExceeded):
        capped * P


def random_poly(rng, max_terms=4, max_deg=1):
    # per-variable degree <= 1 keeps products of two factors under the cap
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        e = tuple(rng.randint(0, max_deg) for _ in range(3))
        terms[e] = terms.get(e, 0) + Fraction(rng.randint(-3, 3))
    return PolyScalar(terms)


def test_poly_evaluation_homomorphism_randomized():
    rng = random.Random(7)
    for _ in range(200):
        a = random_poly(rng)
        b = random_poly(rng)
        point = {v: Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for v in "pqr"}
        assert (a + b).evaluate(point) == a.evaluate(point) + b.evaluate(point)
        assert (a - b).evaluate(point) == a.evaluate(point) - b.evaluate(point)
        assert (a * b).evaluate(point) == a.evaluate(point) * b.evaluate(point)


def test_is_rational_multiple():
    gen = P * (Q - R)
    assert is_rational_multiple(P * Q - P * R, gen)
    assert is_rational_multiple((P * R - P * Q) * Fraction(3, 7), gen)
    assert is_rational_multiple(PolyScalar.zero(), gen)
    assert not is_rational_multiple(Q - R, gen)
    assert not is_rational_multiple(P * Q, gen)


# -- matrices ------------------------------------------------------------------


def test_rank_examples():
    assert ExactMatrix.identity(3).rank() == 3
    assert ExactMatrix.zeros(4, 5).rank() == 0


def test_nullspace_examples():
    assert ExactMatrix.identity(3).nullspace() == []
    basis = ExactMatrix([[1, 1]]).nullspace()
    assert len(basis) == 1
    # one basis vector, proportional to (1, -1)
    v = basis[0]
    assert v == (Fraction(-1), Fraction(1))


def test_solve_examples():
    eye = ExactMatrix.identity(4)
    b = [Fraction(3), Fraction(-1, 2), Fraction(0), Fraction(5)]
    assert eye.solve(b) == tuple(b)
    zero = ExactMatrix.zeros(3, 3)
    assert zero.solve([Fraction(1), Fraction(0), Fraction(0)]) is None
    assert zero.solve([Fraction(0)] * 3) == (Fraction(0),) * 3


def test_solve_shape_mismatch():
    with pytest.raises(ValueError):
        ExactMatrix.identity(3).solve([Fraction(1)] * 4)


def test_rank_matches_naive_oracle_randomized():
    rng = random.Random(99)
    for _ in range(60):
        rows = random_matrix(rng, rng.randint(1, 8), rng.randint(1, 8))
        assert ExactMatrix(rows).rank() == naive_rank(rows)


def test_rank_nullity_randomized():
    rng = random.Random(123)
    for _ in range(60):
        m = ExactMatrix(random_matrix(rng, rng.randint(1, 8), rng.randint(1, 8)))
        null = m.nullspace()
        assert m.rank() + len(null) == m.ncols
        for v in null:
            assert all(x == 0 for x in m.mul_vector(v))


def test_solve_consistent_systems_randomized():
    rng = random.Random(4242)
    for _ in range(60):
        m = ExactMatrix(random_matrix(rng, rng.randint(1, 7), rng.randint(1, 7)))
        x = [Fraction(rng.randint(-3, 3)) for _ in range(m.ncols)]
        b = m.mul_vector(x)
        sol = m.solve(list(b))
        assert sol is not None
        assert m.mul_vector(sol) == b


def test_matmul_against_naive():
    rng = random.Random(5)
    for _ in range(20):
        n, k, m = rng.randint(1, 5), rng.randint(1, 5), rng.randint(1, 5)
        A = ExactMatrix(random_matrix(rng, n, k))
        B = ExactMatrix(random_matrix(rng, k, m))
        C = A * B
        for i in range(n):
            for j in range(m):
                expected = sum(A.entry(i, t) * B.entry(t, j) for t in range(k))
                assert C.entry(i, j) == expected


def test_inverse():
    m = ExactMatrix([[2, 1], [1, 1]])
    inv = m.inverse()
    assert m * inv == ExactMatrix.identity(2)
    with pytest.raises(SingularMatrixError):
        ExactMatrix([[1, 2], [2, 4]]).inverse()


def test_zero_row_matrix():
    m = ExactMatrix.zeros(0, 4)
    assert m.rank() == 0
    assert len(m.nullspace()) == 4
    assert m.solve([]) == (Fraction(0),) * 4


def test_polynomial_entries_require_evaluation():
    m = ExactMatrix([[P, Q]])
    with pytest.raises(ValueError):
        m.rank()
