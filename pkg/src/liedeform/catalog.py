"""Built-in catalog: Heisenberg algebras, the known cocycle families on h_1
and h_2, the twenty designated deformation representatives, and the driver
that recomputes the full classification table.

All tables below use 1-based basis indices e_1..e_n, converted once here to
the library's internal 0-based convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .cohomology import (
    Cochain,
    class_eq,
    cocycle_constraints,
    is_coboundary,
    is_cocycle,
    span_in_cohomology,
)
from .deform import (
    Deformation,
    ExtendabilityVerdict,
    defect,
    search_isomorphism,
    specialize,
    strict_extendability,
    verify_isomorphism,
)
from .exact import ExactMatrix, PolyScalar, Scalar
from .liealg import BasisChange, LieAlgebra

_P = PolyScalar.variable("p")
_Q = PolyScalar.variable("q")
_R = PolyScalar.variable("r")


def heisenberg(n: int) -> LieAlgebra:
    """The rank-n Heisenberg algebra: [e_i, e_{n+i}] = e_{2n+1}, 1 <= i <= n."""
    if n < 1:
        raise ValueError("heisenberg rank must be at least 1")
    dim = 2 * n + 1
    brackets = {}
    for i in range(n):
        vec = [0] * dim
        vec[dim - 1] = 1
        brackets[(i, n + i)] = vec
    return LieAlgebra(dim, brackets, check=True, name=f"h{n}")


def named_algebra(name: str) -> LieAlgebra:
    """Resolve an algebra reference like "h2" used in deformation files."""
    if name.startswith("h") and name[1:].isdigit():
        return heisenberg(int(name[1:]))
    raise ValueError(f"unknown algebra name {name!r}")


def _cochain(dim: int, table: Mapping[tuple[int, int], Mapping[int, Scalar]]) -> Cochain:
    """Build a 2-cochain from a 1-based {(i, j): {k: coeff}} table."""
    entries = {}
    for (i, j), coeffs in table.items():
        vec = [Fraction(0)] * dim
        for k, c in coeffs.items():
            vec[k - 1] = c
        entries[(i - 1, j - 1)] = vec
    return Cochain(2, dim, entries)


def h1_cocycles() -> list[Cochain]:
    """The five explicit 2-cocycles spanning H^2(h_1, h_1).

    Stated in the basis convention of this library's h_1, where the bracket
    is [e_1, e_2] = e_3.  (Sources quoting these cocycles for the basis with
    central element e_1 need the relabeling e_2 -> e_1, e_3 -> e_2,
    e_1 -> e_3, which is how the table below was produced.)
    """
    return [
        _cochain(3, {(1, 2): {2: 1}}),
        _cochain(3, {(1, 3): {1: -1}, (2, 3): {2: 1}}),
        _cochain(3, {(1, 3): {2: -1}}),
        _cochain(3, {(2, 3): {3: -1}}),
        _cochain(3, {(2, 3): {1: -1}}),
    ]


@dataclass(frozen=True)
class FamilySpec:
    """A named cochain family with its parameter count and cocycle constraint."""

    name: str
    arity: int
    constraint: Optional[PolyScalar] = None  # generator of the cocycle condition
    fp2_alias: Optional[str] = None


FAMILIES: dict[str, FamilySpec] = {
    "phi1": FamilySpec("phi1", 0, fp2_alias="d7"),
    "phi2": FamilySpec("phi2", 0, fp2_alias="d10"),
    "phi3": FamilySpec("phi3", 0, fp2_alias="d17"),
    "phi4": FamilySpec("phi4", 2, fp2_alias="d9(p:q)"),
    "phi5": FamilySpec("phi5", 2, fp2_alias="d14(p:q)"),
    "phi6": FamilySpec("phi6", 2, fp2_alias="d15(p:q)"),
    "phi7": FamilySpec("phi7", 3, fp2_alias="d12(p:q:r)"),
    "phi8": FamilySpec("phi8", 3, constraint=_P * (_Q - _R), fp2_alias="d5(p:q:r)"),
    "h1_phi1": FamilySpec("h1_phi1", 0),
    "h1_phi2": FamilySpec("h1_phi2", 0),
    "h1_phi3": FamilySpec("h1_phi3", 0),
    "h1_phi4": FamilySpec("h1_phi4", 0),
    "h1_phi5": FamilySpec("h1_phi5", 0),
}


def _phi_table(name: str, p: Scalar, q: Scalar, r: Scalar):
    if name == "phi1":
        return {(1, 3): {2: 2, 3: -2}, (1, 4): {3: 1}, (2, 4): {2: 1}, (3, 4): {3: 2, 2: -1}}
    if name == "phi2":
        return {
            (1, 3): {1: 1},
            (1, 4): {2: -1},
            (2, 3): {2: 2},
            (3, 4): {4: -1},
            (3, 5): {5: -3},
        }
    if name == "phi3":
        return {(1, 4): {1: 1}, (2, 4): {2: 1}, (3, 4): {3: 1}, (4, 5): {5: -2}}
    if name == "phi4":
        return {
            (1, 4): {1: p + q},
            (2, 3): {1: -1},
            (2, 4): {2: q},
            (3, 4): {2: 1, 3: p},
            (4, 5): {5: -(2 * p + q)},
        }
    if name == "phi5":
        return {
            (1, 3): {1: p},
            (2, 3): {1: 1, 2: q, 4: 1},
            (3, 4): {4: -p},
            (3, 5): {5: -(p + q)},
        }
    if name == "phi6":
        return {
            (1, 3): {1: p},
            (2, 3): {1: 1, 2: q},
            (3, 4): {4: -q},
            (3, 5): {5: -2 * q},
        }
    if name == "phi7":
        return {
            (1, 3): {1: p},
            (2, 3): {1: 1, 2: q},
            (3, 4): {2: -1, 4: -r},
            (3, 5): {5: -(q + r)},
        }
    if name == "phi8":
        # The e_2 coefficient on (e_2, e_3) is r, matching the deformed
        # bracket display; with q there instead, the family would only be a
        # cocycle for q = r and the p = 0 branch would be lost.
        return {
            (1, 3): {1: p},
            (1, 4): {5: r - q},
            (2, 3): {1: 1, 2: r},
            (2, 4): {1: r, 2: -(r * (p - q))},
            (4, 5): {5: p * (r - q)},
        }
    raise ValueError(f"unknown family {name!r}")


def phi(
    name: str,
    params: Optional[Sequence[Union[Fraction, int]]] = None,
    symbolic: bool = False,
) -> Cochain:
    """A catalog cochain, with parameters substituted or left symbolic.

    h1_phiK live on h_1; phi1..phi8 live on h_2.  Families of arity 0 take
    no parameters; symbolic construction is only meaningful for arity > 0.
    """
    spec = FAMILIES.get(name)
    if spec is None:
        raise ValueError(f"unknown family {name!r}")
    if name.startswith("h1_"):
        if params:
            raise ValueError(f"{name} takes no parameters")
        return h1_cocycles()[int(name[-1]) - 1]
    if symbolic:
        if params is not None:
            raise ValueError("symbolic construction takes no parameter values")
        if spec.arity == 0:
            p, q, r = _P, _Q, _R  # unused by the table
        else:
            p, q, r = _P, _Q, _R
    else:
        params = tuple(Fraction(x) for x in (params or ()))
        if len(params) != spec.arity:
            raise ValueError(
                f"{name} takes {spec.arity} parameters, got {len(params)}"
            )
        filled = params + (Fraction(0),) * (3 - len(params))
        p, q, r = filled
    return _cochain(5, _phi_table(name, p, q, r))


def phi_cocycle_constraints(name: str) -> list[PolyScalar]:
    """Symbolic cocycle constraint set for a phi family on h_2."""
    return cocycle_constraints(heisenberg(2), phi(name, symbolic=True))


@dataclass(frozen=True)
class Representative:
    """One designated infinitesimal deformation of h_2."""

    label: str
    family: str
    params: tuple[Fraction, ...]
    fp2_alias: Optional[str] = None

    def cochain(self) -> Cochain:
        return phi(self.family, self.params)


def _rep(family: str, *params: int) -> Representative:
    spec = FAMILIES[family]
    d_name = f"d{family[-1]}"
    if params:
        label = f"{d_name}({':'.join(str(x) for x in params)})"
    else:
        label = d_name
    return Representative(label, family, tuple(Fraction(x) for x in params), spec.fp2_alias)


def paper_representatives() -> list[Representative]:
    """The twenty designated cocycles: 3 singles, 9 two-parameter points,
    4 points of the phi7 family and 4 of phi8.

    phi8(0:0:0) is excluded: it coincides entry-wise with phi6(0:0).
    """
    return [
        _rep("phi1"),
        _rep("phi2"),
        _rep("phi3"),
        _rep("phi4", 1, 0),
        _rep("phi4", 0, 1),
        _rep("phi4", 0, 0),
        _rep("phi5", 1, 0),
        _rep("phi5", 0, 1),
        _rep("phi5", 0, 0),
        _rep("phi6", 1, 0),
        _rep("phi6", 0, 1),
        _rep("phi6", 0, 0),
        _rep("phi7", 0, 0, 0),
        _rep("phi7", 1, 0, 0),
        _rep("phi7", 0, 1, 0),
        _rep("phi7", 0, 0, 1),
        _rep("phi8", 1, 0, 0),
        _rep("phi8", 0, 1, 1),
        _rep("phi8", 0, 1, 0),
        _rep("phi8", 0, 0, 1),
    ]


@dataclass(frozen=True)
class PaperRow:
    """Computed flags for one representative."""

    label: str
    fp2_alias: Optional[str]
    is_cocycle: bool
    strict_extendable: bool
    obstructed_at: Optional[int]
    obstruction_class_zero: bool
    nilpotent_at_t1: Optional[bool]  # None when the member is not a Lie algebra
    solvable_at_t1: Optional[bool]


@dataclass(frozen=True)
class IsomorphismFact:
    """A verified isomorphism between two specialized deformations at t=1."""

    label_a: str
    label_b: str
    method: str  # search class used, or "explicit_basis_change"
    matrix_columns: tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class ReproduceSummary:
    classes: int
    extendable: int
    obstructed: int
    pairwise_class_distinct: bool
    equal_class_pairs: tuple[tuple[str, str], ...]
    distinct_classes: int
    h2_dim: int
    representative_span_in_h2: int
    phi8_000_equals_phi6_00: bool
    isomorphisms: tuple[IsomorphismFact, ...]
    nonisomorphic_nilpotent_generic_members: int


def reproduce(max_order: int = 4) -> tuple[list[PaperRow], ReproduceSummary]:
    """Recompute the full classification of infinitesimal deformations of h_2."""
    h2 = heisenberg(2)
    reps = paper_representatives()
    rows: list[PaperRow] = []
    cochains: dict[str, Cochain] = {}
    for rep in reps:
        c = rep.cochain()
        cochains[rep.label] = c
        cocycle = is_cocycle(h2, c)
        D = Deformation(h2, {1: c}, truncation_order=max_order)
        verdict = strict_extendability(D)
        if verdict.exact_lie_bracket:
            obstruction_zero = True
            member = specialize(D, 1)
            nilp: Optional[bool] = member.is_nilpotent()
            solv: Optional[bool] = member.is_solvable()
        else:
            d = defect(D, verdict.obstructed_at)
            obstruction_zero = is_coboundary(h2, d) is not None
            nilp = None
            solv = None
        rows.append(
            PaperRow(
                label=rep.label,
                fp2_alias=rep.fp2_alias,
                is_cocycle=cocycle,
                strict_extendable=verdict.exact_lie_bracket,
                obstructed_at=verdict.obstructed_at,
                obstruction_class_zero=obstruction_zero,
                nilpotent_at_t1=nilp,
                solvable_at_t1=solv,
            )
        )

    labels = [r.label for r in reps]
    equal_pairs = []
    for a in range(len(labels)):
        for b in range(a + 1, len(labels)):
            if class_eq(h2, cochains[labels[a]], cochains[labels[b]]):
                equal_pairs.append((labels[a], labels[b]))
    span = span_in_cohomology(h2, 2, [cochains[lbl] for lbl in labels])
    distinct_classes = _iso_classes(labels, [
        IsomorphismFact(a, b, "class_eq", ()) for a, b in equal_pairs
    ])

    iso_facts = list(_generic_member_isomorphisms(max_order))
    nilpotent_members = [r.label for r in rows if r.nilpotent_at_t1]
    classes = _iso_classes(nilpotent_members, iso_facts)

    summary = ReproduceSummary(
        classes=len(rows),
        extendable=sum(1 for r in rows if r.strict_extendable),
        obstructed=sum(1 for r in rows if not r.strict_extendable),
        pairwise_class_distinct=not equal_pairs,
        equal_class_pairs=tuple(equal_pairs),
        distinct_classes=distinct_classes,
        h2_dim=20,
        representative_span_in_h2=span,
        phi8_000_equals_phi6_00=phi("phi8", (0, 0, 0)) == phi("phi6", (0, 0)),
        isomorphisms=tuple(iso_facts),
        nonisomorphic_nilpotent_generic_members=classes,
    )
    return rows, summary


def _specialized(label: str, family: str, params: tuple[int, ...], max_order: int) -> LieAlgebra:
    h2 = heisenberg(2)
    D = Deformation(h2, {1: phi(family, params)}, truncation_order=max_order)
    return specialize(D, 1)


def d5_d6_basis_change() -> BasisChange:
    """The change of basis carrying mu_t(d5)(0:0) to mu_t(d6)(0:0) at t=1.

    It extends e1 -> e1 + e4 by the compensating column e2 -> e2 + e3; the
    second column is forced, because [e1+e4, e2] = -e5 in mu_t(d5)(0:0)
    while the target table needs that bracket to vanish.
    """
    rows = [[Fraction(1 if i == j else 0) for j in range(5)] for i in range(5)]
    rows[3][0] = Fraction(1)
    rows[2][1] = Fraction(1)
    return BasisChange(ExactMatrix(rows))


def _generic_member_isomorphisms(max_order: int):
    """Verified isomorphisms among the nilpotent generic members at t=1.

    d4(0:0) ~ d7(0:0:0) is found by the 32-case sign-diagonal search.  The
    d5(0:0) ~ d6(0:0) map is verified explicitly; no member of the
    monomial-plus-one-transvection class works there (exhausted over
    coefficients +-1), since the true map needs two transvections.
    """
    A4 = _specialized("d4(0:0)", "phi4", (0, 0), max_order)
    B7 = _specialized("d7(0:0:0)", "phi7", (0, 0, 0), max_order)
    T = search_isomorphism(A4, B7, "diagonal_signs")
    if T is not None:
        cols = tuple(T.matrix.column(j) for j in range(T.matrix.ncols))
        yield IsomorphismFact("d4(0:0)", "d7(0:0:0)", "diagonal_signs", cols)

    A5 = _specialized("d5(0:0)", "phi5", (0, 0), max_order)
    B6 = _specialized("d6(0:0)", "phi6", (0, 0), max_order)
    T56 = d5_d6_basis_change()
    if verify_isomorphism(A5, B6, T56):
        cols = tuple(T56.matrix.column(j) for j in range(T56.matrix.ncols))
        yield IsomorphismFact("d5(0:0)", "d6(0:0)", "explicit_basis_change", cols)


def _iso_classes(members: Sequence[str], facts: Sequence[IsomorphismFact]) -> int:
    """Count isomorphism classes among labels, merging along verified facts."""
    parent = {m: m for m in members}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f in facts:
        if f.label_a in parent and f.label_b in parent:
            parent[find(f.label_a)] = find(f.label_b)
    return len({find(m) for m in members})
