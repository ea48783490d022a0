"""Formal one-parameter deformations of a Lie algebra.

A deformation is the base bracket plus finitely many order-tagged
2-cochains mu_n, representing [x,y]_t = [x,y] + sum t^n mu_n(x,y).  The
order-n defect is the coefficient of t^n in the deformed Jacobi expression,

    sum_{i+j=n} mu_i(x, mu_j(y,z)) + mu_i(y, mu_j(z,x)) + mu_i(z, mu_j(x,y))

with mu_0 the base bracket; the deformation is a Lie structure through
order N iff these vanish for 1 <= n <= N.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Mapping, Optional, Sequence, Union

from .cohomology import (
    Cochain,
    NotACocycleError,
    differential,
    is_coboundary,
    is_cocycle,
)
from .exact import ExactMatrix, vec_is_zero, vec_zero
from .liealg import BasisChange, LieAlgebra

_ZERO = Fraction(0)
_ONE = Fraction(1)


class Deformation:
    """Base algebra plus order-tagged 2-cochain terms (all rational)."""

    __slots__ = ("base", "terms", "truncation_order")

    def __init__(
        self,
        base: LieAlgebra,
        terms: Mapping[int, Cochain] = (),
        truncation_order: int = 4,
    ):
        self.base = base
        clean: dict[int, Cochain] = {}
        for order, c in dict(terms).items():
            order = int(order)
            if order < 1:
                raise ValueError("deformation orders start at 1; order 0 is the base")
            if c.degree != 2 or c.dim != base.dim:
                raise ValueError(f"term at order {order} must be a 2-cochain on the base")
            if c.is_symbolic():
                raise ValueError(
                    "deformation terms must be rational; substitute parameters first"
                )
            clean[order] = c
        self.terms = dict(sorted(clean.items()))
        if truncation_order < 1:
            raise ValueError("truncation order must be at least 1")
        self.truncation_order = truncation_order

    def term(self, order: int) -> Cochain:
        c = self.terms.get(order)
        return c if c is not None else Cochain.zero(2, self.base.dim)

    @property
    def max_order(self) -> int:
        return max(self.terms, default=0)

    def with_term(self, order: int, c: Cochain) -> "Deformation":
        terms = dict(self.terms)
        terms[order] = c
        return Deformation(self.base, terms, self.truncation_order)

    def is_single_term(self) -> bool:
        return set(self.terms) <= {1}

    def __repr__(self):
        orders = sorted(self.terms) or [0]
        return f"Deformation(base dim {self.base.dim}, orders {orders})"


def _pair_value(D: Deformation, i: int, a: int, b: int) -> tuple[Fraction, ...]:
    """mu_i(e_a, e_b); order 0 is the base bracket."""
    if i == 0:
        return D.base.bracket_basis(a, b)
    c = D.terms.get(i)
    if c is None:
        return vec_zero(D.base.dim)
    return c.value((a, b))


def _pair_on_vector(D: Deformation, i: int, a: int, w: Sequence[Fraction]) -> list[Fraction]:
    """mu_i(e_a, w) for a coefficient vector w."""
    n = D.base.dim
    acc = [_ZERO] * n
    for k, wk in enumerate(w):
        if not wk:
            continue
        v = _pair_value(D, i, a, k)
        for m, vm in enumerate(v):
            if vm:
                acc[m] += wk * vm
    return acc


def defect(D: Deformation, n: int) -> Cochain:
    """The order-n defect as a 3-cochain (zero iff the t^n Jacobi terms cancel)."""
    if n < 1:
        raise ValueError("defect order must be >= 1")
    dim = D.base.dim
    present = {0, *D.terms}
    pairs = [(i, n - i) for i in sorted(present) if (n - i) in present]
    entries = {}
    for tau in _increasing_triples(dim):
        a, b, c = tau
        acc = [_ZERO] * dim
        for i, j in pairs:
            for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                w = _pair_value(D, j, y, z)
                if vec_is_zero(w):
                    continue
                v = _pair_on_vector(D, i, x, w)
                for m, vm in enumerate(v):
                    if vm:
                        acc[m] += vm
        if not vec_is_zero(tuple(acc)):
            entries[tau] = tuple(acc)
    return Cochain(3, dim, entries)


def _increasing_triples(n: int):
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                yield (a, b, c)


@dataclass(frozen=True)
class OrderStatus:
    """Status of one defect order: the defect cochain and its class data."""

    order: int
    defect: Cochain
    is_zero: bool
    is_coboundary: bool
    obstruction: Optional[Cochain]  # the defect itself when its class is nonzero


@dataclass(frozen=True)
class DefectReport:
    orders: tuple[OrderStatus, ...]

    def status(self, n: int) -> OrderStatus:
        return self.orders[n - 1]

    @property
    def first_nonzero(self) -> Optional[int]:
        for st in self.orders:
            if not st.is_zero:
                return st.order
        return None


def defect_report(D: Deformation, max_order: Optional[int] = None) -> DefectReport:
    """Per-order defect statuses for orders 1..max_order."""
    max_order = max_order or D.truncation_order
    statuses = []
    for n in range(1, max_order + 1):
        d = defect(D, n)
        if d.is_zero:
            statuses.append(OrderStatus(n, d, True, True, None))
        else:
            cob = is_coboundary(D.base, d) is not None
            statuses.append(OrderStatus(n, d, False, cob, None if cob else d))
    return DefectReport(tuple(statuses))


@dataclass(frozen=True)
class ExtendabilityVerdict:
    """Outcome of the strict extendability check for a single-cocycle deformation."""

    exact_lie_bracket: bool
    obstructed_at: Optional[int] = None

    def __str__(self):
        if self.exact_lie_bracket:
            return "exact_Lie_bracket"
        return f"obstructed_at({self.obstructed_at})"


def strict_extendability(
    D: Deformation, max_order: Optional[int] = None
) -> ExtendabilityVerdict:
    """Exact-Lie-bracket verdict for a deformation with only mu_1.

    For a single term the defect vanishes identically for n >= 3, so order 2
    is mathematically sufficient; higher orders act as self-checks.
    """
    if not D.is_single_term():
        raise ValueError("strict extendability applies to single-term deformations")
    mu1 = D.term(1)
    if not is_cocycle(D.base, mu1):
        raise NotACocycleError("the infinitesimal term must be a 2-cocycle")
    max_order = max_order or D.truncation_order
    for n in range(2, max_order + 1):
        if not defect(D, n).is_zero:
            return ExtendabilityVerdict(False, obstructed_at=n)
    return ExtendabilityVerdict(True)


@dataclass(frozen=True)
class ExtendOutcome:
    """Result of one extension step: a new deformation or an obstruction class."""

    extended: Optional[Deformation]
    obstruction: Optional[Cochain]

    @property
    def ok(self) -> bool:
        return self.extended is not None


def extend_step(D: Deformation) -> ExtendOutcome:
    """Try to choose mu_n (n = max stored order + 1) killing the order-n defect.

    Solves d mu_n = partial defect, where the partial defect collects the
    i, j >= 1 terms; when the system is inconsistent the partial defect is
    a nonzero class in H^3 and is returned as the obstruction.
    """
    n = D.max_order + 1
    for k in range(1, n):
        if not defect(D, k).is_zero:
            raise ValueError(f"deformation already has a nonzero defect at order {k}")
    dim = D.base.dim
    partial_entries = {}
    pairs = [(i, n - i) for i in D.terms if (n - i) in D.terms]
    for tau in _increasing_triples(dim):
        a, b, c = tau
        acc = [_ZERO] * dim
        for i, j in pairs:
            for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                w = _pair_value(D, j, y, z)
                if vec_is_zero(w):
                    continue
                v = _pair_on_vector(D, i, x, w)
                for m, vm in enumerate(v):
                    if vm:
                        acc[m] += vm
        if not vec_is_zero(tuple(acc)):
            partial_entries[tau] = tuple(acc)
    partial = Cochain(3, dim, partial_entries)
    d2 = differential(D.base, 2)
    x = d2.solve(list(partial.coords()))
    if x is None:
        return ExtendOutcome(extended=None, obstruction=partial)
    mu_n = Cochain.from_coords(2, dim, x)
    extended = D.with_term(n, mu_n)
    residual = defect(extended, n)
    if not residual.is_zero:
        raise RuntimeError(f"extension left a nonzero defect at order {n}")
    return ExtendOutcome(extended=extended, obstruction=None)


def infinitesimal_class(D: Deformation) -> Cochain:
    """The infinitesimal part mu_1, validated to be a cocycle."""
    mu1 = D.term(1)
    if not is_cocycle(D.base, mu1):
        raise NotACocycleError("the infinitesimal term must be a 2-cocycle")
    return mu1


def specialize(D: Deformation, t_value: Union[Fraction, int]) -> LieAlgebra:
    """The member algebra at a rational t; refuses non-Lie tables."""
    t = Fraction(t_value)
    for n in range(1, D.truncation_order + 1):
        if not defect(D, n).is_zero:
            raise ValueError(
                f"defect is nonzero at order {n}; refusing to emit a non-Lie table"
            )
    dim = D.base.dim
    brackets = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            vec = list(D.base.bracket_basis(i, j))
            for order, c in D.terms.items():
                tn = t**order
                if not tn:
                    continue
                v = c.value((i, j))
                for k, vk in enumerate(v):
                    if vk:
                        vec[k] += tn * vk
            if not vec_is_zero(tuple(vec)):
                brackets[(i, j)] = tuple(vec)
    name = None
    if D.base.name:
        name = f"{D.base.name} deformed at t={t}"
    return LieAlgebra(dim, brackets, check=True, name=name)


# ---------------------------------------------------------------------------
# Isomorphism verification and finite search.
# ---------------------------------------------------------------------------


def verify_isomorphism(
    A: LieAlgebra, B: LieAlgebra, transform: Union[BasisChange, ExactMatrix]
) -> bool:
    """True iff transporting A's table through the basis change gives B's table."""
    if A.dim != B.dim:
        raise ValueError("algebras must have equal dimension")
    return A.change_basis(transform).brackets == B.brackets


def _sparse_iso_check(
    A: LieAlgebra, B: LieAlgebra, cols: Sequence[Sequence[tuple[int, Fraction]]]
) -> bool:
    """Check [T e_i, T e_j]_A = T [e_i, e_j]_B for all i < j, sparse columns."""
    n = A.dim
    for i in range(n):
        for j in range(i + 1, n):
            lhs = [_ZERO] * n
            for a, va in cols[i]:
                for b, vb in cols[j]:
                    w = A.bracket_basis(a, b)
                    if vec_is_zero(w):
                        continue
                    coeff = va * vb
                    for m, wm in enumerate(w):
                        if wm:
                            lhs[m] += coeff * wm
            rhs = [_ZERO] * n
            cb = B.bracket_basis(i, j)
            for k, ck in enumerate(cb):
                if not ck:
                    continue
                for m, vm in cols[k]:
                    rhs[m] += ck * vm
            if lhs != rhs:
                return False
    return True


def _columns_to_matrix(n: int, cols: Sequence[Sequence[tuple[int, Fraction]]]) -> ExactMatrix:
    rows = [[_ZERO] * n for _ in range(n)]
    for j, col in enumerate(cols):
        for i, v in col:
            rows[i][j] = v
    return ExactMatrix(rows)


SEARCH_CLASSES = ("diagonal_signs", "monomial", "monomial_plus_one_transvection")


def search_isomorphism(
    A: LieAlgebra,
    B: LieAlgebra,
    search_class: str,
    bound: Sequence[Union[Fraction, int]] = (1, -1),
) -> Optional[BasisChange]:
    """First basis change in the class with verify_isomorphism(A, B, T) true.

    Enumeration is deterministic: sign patterns and scale tuples vary the
    last coordinate fastest, permutations in lexicographic order, and the
    plain monomial is tried before its transvection compositions, so the
    identity is found first whenever it works.
    """
    if A.dim != B.dim:
        raise ValueError("algebras must have equal dimension")
    if search_class not in SEARCH_CLASSES:
        raise ValueError(f"unknown search class {search_class!r}")
    n = A.dim
    scales = tuple(Fraction(c) for c in bound)
    if any(not c for c in scales):
        raise ValueError("bound coefficients must be nonzero")

    def candidates():
        if search_class == "diagonal_signs":
            for signs in product((_ONE, Fraction(-1)), repeat=n):
                yield tuple(((i, s),) for i, s in enumerate(signs))
            return
        for perm in permutations(range(n)):
            for scale in product(scales, repeat=n):
                mono = tuple(((perm[i], scale[i]),) for i in range(n))
                yield mono
                if search_class == "monomial":
                    continue
                for i0 in range(n):
                    for j0 in range(n):
                        if i0 == j0:
                            continue
                        for c in scales:
                            cols = list(mono)
                            extra = (perm[j0], c * scale[j0])
                            cols[i0] = _merge_sparse(cols[i0], extra)
                            yield tuple(cols)

    for cols in candidates():
        if _sparse_iso_check(A, B, cols):
            T = BasisChange(_columns_to_matrix(n, cols))
            if verify_isomorphism(A, B, T):  # slow-path confirmation
                return T
    return None


def _merge_sparse(
    col: Sequence[tuple[int, Fraction]], extra: tuple[int, Fraction]
) -> tuple[tuple[int, Fraction], ...]:
    row, val = extra
    out = []
    merged = False
    for r, v in col:
        if r == row:
            v = v + val
            merged = True
        if v:
            out.append((r, v))
    if not merged:
        out.append((row, val))
    return tuple(out)
