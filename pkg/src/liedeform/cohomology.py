"""Chevalley-Eilenberg cochain complex with adjoint coefficients.

A degree-q cochain stores coefficient vectors on strictly increasing index
tuples only; evaluation on permuted arguments applies the permutation sign
and repeated arguments give zero.  The differential follows the convention

    dc(g_1,...,g_{q+1}) = sum_{s<t} (-1)^(s+t-1) c([g_s,g_t], ..^s..^t..)
                        + sum_s    (-1)^s       [g_s, c(..^s..)]

with 1-based positions s, t; no alternative sign conventions are supported.
Coordinates on C^q are ordered by tuple (lexicographic), then target basis
index, which keeps every matrix and report deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence, Union

from .exact import (
    ExactMatrix,
    PolyScalar,
    Scalar,
    vec_add,
    vec_is_zero,
    vec_scale,
    vec_sub,
    vec_zero,
)
from .liealg import LieAlgebra

_ZERO = Fraction(0)
_ONE = Fraction(1)


class NotACocycleError(ValueError):
    """An operation defined on cocycles received a non-cocycle."""


def _coerce_scalar(x) -> Scalar:
    if isinstance(x, (Fraction, PolyScalar)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cochain entries must be exact scalars, got {type(x).__name__}")


def _perm_sign(args: Sequence[int]) -> int:
    sign = 1
    for a in range(len(args)):
        for b in range(a + 1, len(args)):
            if args[a] > args[b]:
                sign = -sign
    return sign


class Cochain:
    """Alternating multilinear map g^q -> g, stored on increasing tuples."""

    __slots__ = ("degree", "dim", "entries")

    def __init__(
        self,
        degree: int,
        dim: int,
        entries: Mapping[tuple[int, ...], Sequence[Scalar]] = (),
    ):
        if degree < 0 or dim < 1:
            raise ValueError("degree must be >= 0 and dimension >= 1")
        self.degree = degree
        self.dim = dim
        clean: dict[tuple[int, ...], tuple[Scalar, ...]] = {}
        for key, vec in dict(entries).items():
            key = tuple(int(i) for i in key)
            if len(key) != degree:
                raise ValueError(f"tuple {key} has length {len(key)}, expected {degree}")
            if any(not (0 <= i < dim) for i in key):
                raise ValueError(f"tuple {key} out of range for dimension {dim}")
            if any(key[a] >= key[a + 1] for a in range(len(key) - 1)):
                raise ValueError(f"tuple {key} is not strictly increasing")
            v = tuple(_coerce_scalar(x) for x in vec)
            if len(v) != dim:
                raise ValueError(f"value vector for {key} has length {len(v)}")
            if not vec_is_zero(v):
                clean[key] = v
        self.entries = dict(sorted(clean.items()))

    @classmethod
    def zero(cls, degree: int, dim: int) -> "Cochain":
        return cls(degree, dim, {})

    def value(self, args: Sequence[int]) -> tuple[Scalar, ...]:
        """Evaluate on basis indices in any order (sign applied, repeats -> 0)."""
        if len(args) != self.degree:
            raise ValueError(f"expected {self.degree} arguments, got {len(args)}")
        if len(set(args)) != len(args):
            return vec_zero(self.dim)
        key = tuple(sorted(args))
        vec = self.entries.get(key)
        if vec is None:
            return vec_zero(self.dim)
        sign = _perm_sign(args)
        return vec if sign == 1 else tuple(-x for x in vec)

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def is_symbolic(self) -> bool:
        return any(
            isinstance(x, PolyScalar) for vec in self.entries.values() for x in vec
        )

    def _merge(self, other: "Cochain", op) -> "Cochain":
        if (self.degree, self.dim) != (other.degree, other.dim):
            raise ValueError("cochain degree/dimension mismatch")
        keys = set(self.entries) | set(other.entries)
        out = {}
        for k in keys:
            a = self.entries.get(k, vec_zero(self.dim))
            b = other.entries.get(k, vec_zero(self.dim))
            out[k] = op(a, b)
        return Cochain(self.degree, self.dim, out)

    def __add__(self, other: "Cochain") -> "Cochain":
        return self._merge(other, vec_add)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self._merge(other, vec_sub)

    def __neg__(self) -> "Cochain":
        return Cochain(
            self.degree, self.dim, {k: tuple(-x for x in v) for k, v in self.entries.items()}
        )

    def scale(self, c: Scalar) -> "Cochain":
        return Cochain(
            self.degree, self.dim, {k: vec_scale(c, v) for k, v in self.entries.items()}
        )

    def substitute(self, point: Mapping[str, Union[Fraction, int]]) -> "Cochain":
        """Substitute rational values for p, q, r in all entries."""
        out = {}
        for k, vec in self.entries.items():
            out[k] = tuple(
                x.evaluate(point) if isinstance(x, PolyScalar) else x for x in vec
            )
        return Cochain(self.degree, self.dim, out)

    def coords(self) -> tuple[Scalar, ...]:
        basis = CochainBasis(self.dim, self.degree)
        out = [_ZERO] * basis.size
        for t_index, key in enumerate(basis.tuples):
            vec = self.entries.get(key)
            if vec is None:
                continue
            base = t_index * self.dim
            for k, x in enumerate(vec):
                out[base + k] = x
        return tuple(out)

    @classmethod
    def from_coords(cls, degree: int, dim: int, coords: Sequence[Scalar]) -> "Cochain":
        basis = CochainBasis(dim, degree)
        if len(coords) != basis.size:
            raise ValueError(f"expected {basis.size} coordinates, got {len(coords)}")
        entries = {}
        for t_index, key in enumerate(basis.tuples):
            vec = tuple(coords[t_index * dim : (t_index + 1) * dim])
            if not vec_is_zero(vec):
                entries[key] = vec
        return cls(degree, dim, entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.dim == other.dim
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.degree, self.dim, tuple(self.entries.items())))

    def __repr__(self):
        return f"Cochain(degree={self.degree}, dim={self.dim}, {len(self.entries)} entries)"


@lru_cache(maxsize=None)
def _tuples(dim: int, degree: int) -> tuple[tuple[int, ...], ...]:
    return tuple(combinations(range(dim), degree))


class CochainBasis:
    """Coordinates on C^q(g; g): (increasing tuple, target index) pairs."""

    __slots__ = ("dim", "degree", "tuples", "_tuple_index")

    def __init__(self, dim: int, degree: int):
        self.dim = dim
        self.degree = degree
        self.tuples = _tuples(dim, degree)
        self._tuple_index = {t: i for i, t in enumerate(self.tuples)}

    @property
    def size(self) -> int:
        return len(self.tuples) * self.dim

    def index_of(self, key: tuple[int, ...], target: int) -> int:
        return self._tuple_index[key] * self.dim + target

    def pairs(self) -> Iterable[tuple[tuple[int, ...], int]]:
        for t in self.tuples:
            for k in range(self.dim):
                yield (t, k)


def apply_differential(algebra: LieAlgebra, c: Cochain) -> Cochain:
    """The Chevalley-Eilenberg differential of c, with adjoint coefficients.

    Works uniformly for rational and symbolic (PolyScalar) cochains since
    the structure constants are always rational.
    """
    if c.dim != algebra.dim:
        raise ValueError("cochain dimension does not match the algebra")
    q = c.degree
    n = algebra.dim
    if q > n:
        raise ValueError(f"degree {q} exceeds dimension {n}")
    out: dict[tuple[int, ...], tuple[Scalar, ...]] = {}
    for tau in _tuples(n, q + 1):
        acc = list(vec_zero(n))
        touched = False
        # sum over s < t: (-1)^(s+t-1) c([g_s, g_t], rest), 1-based signs
        for s in range(q + 1):
            for t in range(s + 1, q + 1):
                w = algebra.bracket_basis(tau[s], tau[t])
                if vec_is_zero(w):
                    continue
                rest = tau[:s] + tau[s + 1 : t] + tau[t + 1 :]
                sign = -1 if (s + t + 1) % 2 else 1
                for k, wk in enumerate(w):
                    if not wk:
                        continue
                    val = c.value((k,) + rest)
                    if vec_is_zero(val):
                        continue
                    coeff = wk if sign == 1 else -wk
                    touched = True
                    for m, vm in enumerate(val):
                        if vm:
                            acc[m] = acc[m] + coeff * vm
        # sum over s: (-1)^s [g_s, c(rest)], 1-based sign
        for s in range(q + 1):
            rest = tau[:s] + tau[s + 1 :]
            val = c.value(rest)
            if vec_is_zero(val):
                continue
            sign = -1 if (s + 1) % 2 else 1
            for k, vk in enumerate(val):
                if not vk:
                    continue
                w = algebra.bracket_basis(tau[s], k)
                for m, wm in enumerate(w):
                    if wm:
                        touched = True
                        term = vk * wm
                        acc[m] = acc[m] + (term if sign == 1 else -term)
        if touched and not vec_is_zero(tuple(acc)):
            out[tau] = tuple(acc)
    return Cochain(q + 1, n, out)


def differential(algebra: LieAlgebra, q: int) -> ExactMatrix:
    """Matrix of d_q : C^q -> C^(q+1) in CochainBasis coordinates.

    Built fresh on every call; callers that need it repeatedly should keep
    their own cache.
    """
    n = algebra.dim
    if not (0 <= q <= n):
        raise ValueError(f"degree {q} out of range 0..{n}")
    src = CochainBasis(n, q)
    dst = CochainBasis(n, q + 1) if q < n else None
    nrows = dst.size if dst is not None else 0
    columns = []
    for key, target in src.pairs():
        basis_cochain = Cochain(q, n, {key: _unit_vec(n, target)})
        dc = apply_differential(algebra, basis_cochain)
        columns.append(dc.coords() if nrows else ())
    return ExactMatrix.from_columns(columns, nrows=nrows)


def _unit_vec(n: int, k: int) -> tuple[Fraction, ...]:
    return tuple(_ONE if i == k else _ZERO for i in range(n))


def is_cocycle(algebra: LieAlgebra, c: Cochain) -> bool:
    """True iff dc = 0 (symbolic cochains: identically, as polynomials)."""
    return apply_differential(algebra, c).is_zero


def cocycle_constraints(algebra: LieAlgebra, c: Cochain) -> list[PolyScalar]:
    """The nonzero entries of dc as polynomials (empty = identically cocycle).

    Duplicate polynomials are removed; order follows coordinates of C^(q+1).
    """
    dc = apply_differential(algebra, c)
    seen = []
    for _, vec in sorted(dc.entries.items()):
        for x in vec:
            if not x:
                continue
            p = x if isinstance(x, PolyScalar) else PolyScalar.const(x)
            if p not in seen:
                seen.append(p)
    return seen


def is_coboundary(algebra: LieAlgebra, c: Cochain) -> Optional[Cochain]:
    """A (q-1)-cochain b with db = c, or None when no preimage exists."""
    if c.degree < 1:
        raise ValueError("coboundary test needs degree >= 1")
    if c.is_symbolic():
        raise ValueError("coboundary test requires rational entries")
    d_prev = differential(algebra, c.degree - 1)
    x = d_prev.solve(list(c.coords()))
    if x is None:
        return None
    return Cochain.from_coords(c.degree - 1, algebra.dim, x)


@dataclass(frozen=True)
class CohomologyReport:
    """Dimensions around degree q: dim H^q = dim ker d_q - rank d_(q-1)."""

    degree: int
    dim_cochain: int
    rank_d: int
    rank_d_prev: int
    representatives: Optional[tuple[Cochain, ...]] = None

    @property
    def dim_kernel(self) -> int:
        return self.dim_cochain - self.rank_d

    @property
    def dim_image_prev(self) -> int:
        return self.rank_d_prev

    @property
    def dim_H(self) -> int:
        return self.dim_kernel - self.dim_image_prev


def cohomology_dim(
    algebra: LieAlgebra, q: int, representatives: bool = False
) -> CohomologyReport:
    """Compute dim H^q(g; g) by exact rank computations."""
    n = algebra.dim
    if not (0 <= q <= n):
        raise ValueError(f"degree {q} out of range 0..{n}")
    d_q = differential(algebra, q)
    rank_d = d_q.rank()
    if q == 0:
        rank_prev = 0
    else:
        rank_prev = differential(algebra, q - 1).rank()
    reps: Optional[tuple[Cochain, ...]] = None
    if representatives:
        reps = tuple(_representatives(algebra, q, d_q))
    return CohomologyReport(
        degree=q,
        dim_cochain=CochainBasis(n, q).size,
        rank_d=rank_d,
        rank_d_prev=rank_prev,
        representatives=reps,
    )


def _representatives(algebra: LieAlgebra, q: int, d_q: ExactMatrix) -> list[Cochain]:
    """Kernel vectors independent modulo the previous image, in nullspace order."""
    from .liealg import _reduce_span  # reuse the incremental echelon helper

    n = algebra.dim
    if q == 0:
        image_cols: list[tuple[Fraction, ...]] = []
    else:
        d_prev = differential(algebra, q - 1)
        image_cols = [d_prev.column(j) for j in range(d_prev.ncols)]
    echelon = _EchelonAccumulator(CochainBasis(n, q).size)
    for v in image_cols:
        echelon.add(v)
    reps = []
    for v in d_q.nullspace():
        if echelon.add(v):
            reps.append(Cochain.from_coords(q, n, v))
    return reps


class _EchelonAccumulator:
    """Incremental rank tracking: add(v) reports whether v extended the span."""

    def __init__(self, length: int):
        self.length = length
        self.rows: list[tuple[int, list[Fraction]]] = []  # (lead index, row)

    def add(self, v: Sequence[Fraction]) -> bool:
        w = list(v)
        for lead, row in self.rows:
            c = w[lead]
            if c:
                for k in range(self.length):
                    if row[k]:
                        w[k] -= c * row[k]
        lead = next((k for k, x in enumerate(w) if x), None)
        if lead is None:
            return False
        inv = _ONE / w[lead]
        self.rows.append((lead, [x * inv for x in w]))
        self.rows.sort(key=lambda p: p[0])
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


def class_eq(algebra: LieAlgebra, c1: Cochain, c2: Cochain) -> bool:
    """True iff the cocycles c1 and c2 differ by a coboundary."""
    if c1.degree != c2.degree:
        raise ValueError("class comparison needs cocycles of equal degree")
    if c1.is_symbolic() or c2.is_symbolic():
        raise ValueError("class comparison on symbolic cochains is unsupported")
    for c in (c1, c2):
        if not is_cocycle(algebra, c):
            raise NotACocycleError("class comparison is defined on cocycles only")
    return is_coboundary(algebra, c1 - c2) is not None


def span_in_cohomology(algebra: LieAlgebra, q: int, cocycles: Sequence[Cochain]) -> int:
    """Dimension of the span of the given cocycle classes inside H^q."""
    for c in cocycles:
        if c.degree != q:
            raise ValueError("all cochains must have the requested degree")
        if c.is_symbolic():
            raise ValueError("span computation requires rational cochains")
        if not is_cocycle(algebra, c):
            raise NotACocycleError("span computation is defined on cocycles only")
    if q == 0:
        image_rank = 0
        acc = _EchelonAccumulator(CochainBasis(algebra.dim, q).size)
    else:
        d_prev = differential(algebra, q - 1)
        acc = _EchelonAccumulator(CochainBasis(algebra.dim, q).size)
        for j in range(d_prev.ncols):
            acc.add(d_prev.column(j))
        image_rank = acc.rank
    for c in cocycles:
        acc.add(c.coords())
    return acc.rank - image_rank


def _comb(a: int, b: int) -> int:
    if b < 0 or b > a or a < 0:
        return 0
    return math.comb(a, b)


def heisenberg_hp_formula(n: int, p: int) -> int:
    """Closed-form dim H^p(h_n, h_n) for the rank-n Heisenberg algebra.

    Cases: p = 0; 1 <= p <= n; p = n+1; n+2 <= p <= 2n+1.  Binomials with
    out-of-range lower index are zero.
    """
    if n < 1:
        raise ValueError("heisenberg rank must be at least 1")
    if not (0 <= p <= 2 * n + 1):
        raise ValueError(f"degree {p} out of range 0..{2 * n + 1}")
    if p == 0:
        return 1
    if 1 <= p <= n:
        return (
            (2 * n + 1) * _comb(2 * n + 1, p)
            - _comb(2 * n + 1, p + 1)
            - 2 * n * _comb(2 * n + 1, p - 1)
        )
    if p == n + 1:
        return (
            (2 * n + 1) * (_comb(2 * n, n) - _comb(2 * n, n - 2))
            - _comb(2 * n, n - 1)
            + _comb(2 * n, n - 3)
        )
    return (
        2 * n * (_comb(2 * n, p - 1) - _comb(2 * n, p + 1))
        - _comb(2 * n, p)
        + _comb(2 * n, p + 2)
    )
