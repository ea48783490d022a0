"""Command-line interface.

Exit codes are uniform across subcommands: 0 for success or a true verdict,
1 for a mathematical negative (Jacobi violation, non-cocycle, obstruction,
failed isomorphism), 2 for input errors (unreadable files, schema
violations, out-of-range arguments).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__, catalog
from .cohomology import (
    NotACocycleError,
    class_eq,
    cocycle_constraints,
    cohomology_dim,
    is_coboundary,
    is_cocycle,
    span_in_cohomology,
)
from .deform import (
    Deformation,
    defect_report,
    extend_step,
    search_isomorphism,
    specialize,
    strict_extendability,
    verify_isomorphism,
)
from .exact import PolyScalar, SingularMatrixError, format_scalar, parse_rational
from .jsonio import (
    SchemaError,
    algebra_from_dict,
    algebra_to_dict,
    cochain_from_dict,
    cochain_to_dict,
    defect_report_to_dict,
    deformation_from_dict,
    deformation_to_dict,
    cohomology_report_to_dict,
    matrix_from_dict,
    matrix_to_dict,
)
from .liealg import BasisChange, LieAlgebra

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise SchemaError(path, f"cannot read file ({exc})") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(path, f"invalid JSON at line {exc.lineno}, column {exc.colno}") from None


def _emit_json(doc) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


def _combo(vec, prefix: str = "e") -> str:
    """Format a coefficient vector as a basis combination like 2*e2 - 2*e3."""
    parts = []
    for k, x in enumerate(vec):
        if not x:
            continue
        body = f"{prefix}{k + 1}"
        text = format_scalar(x)
        if text == "1":
            term = body
        elif text == "-1":
            term = f"-{body}"
        elif isinstance(x, PolyScalar) and len(x.terms) > 1:
            term = f"({text})*{body}"
        else:
            term = f"{text}*{body}"
        if not parts:
            parts.append(term)
        elif term.startswith("-"):
            parts.append(f"- {term[1:]}")
        else:
            parts.append(f"+ {term}")
    return " ".join(parts) if parts else "0"


def _print_algebra(A: LieAlgebra) -> None:
    if A.name:
        print(f"algebra {A.name} (dim {A.dim})")
    else:
        print(f"algebra of dim {A.dim}")
    for (i, j), vec in sorted(A.brackets.items()):
        print(f"  [e{i + 1},e{j + 1}] = {_combo(vec)}")
    if not A.brackets:
        print("  (abelian)")


def _print_cochain(c, label: str = "c") -> None:
    print(f"{label}: degree {c.degree} cochain on dim {c.dim}")
    for key, vec in sorted(c.entries.items()):
        args = ",".join(f"e{i + 1}" for i in key)
        print(f"  {label}({args}) = {_combo(vec)}")
    if not c.entries:
        print("  (zero)")


def _print_deformed_table(D: Deformation) -> None:
    """Paper-style display: [e1,e3]_t = e5 + t*(2*e2 - 2*e3)."""
    dim = D.base.dim
    for i in range(dim):
        for j in range(i + 1, dim):
            pieces = []
            base = D.base.bracket_basis(i, j)
            if any(base):
                pieces.append(_combo(base))
            for order, c in sorted(D.terms.items()):
                vec = c.value((i, j))
                if not any(vec):
                    continue
                tpow = "t" if order == 1 else f"t^{order}"
                pieces.append(f"{tpow}*({_combo(vec)})")
            if pieces:
                print(f"  [e{i + 1},e{j + 1}]_t = {' + '.join(pieces)}")


# -- subcommand handlers -------------------------------------------------------


def _cmd_jacobi(args) -> int:
    A = algebra_from_dict(_load_json(args.algebra), check=False)
    violations = A.jacobi_violations()
    if args.json:
        _emit_json(
            {
                "valid": not violations,
                "violations": [
                    {
                        "triple": [i + 1, j + 1, k + 1],
                        "defect": {str(m + 1): format_scalar(x) for m, x in enumerate(d) if x},
                    }
                    for (i, j, k, d) in violations
                ],
            }
        )
    elif not violations:
        print("valid: the table satisfies the Jacobi identity")
    else:
        print(f"invalid: {len(violations)} violating triple(s)")
        for (i, j, k, d) in violations:
            print(f"  ({i + 1},{j + 1},{k + 1}): defect {_combo(d)}")
    return EXIT_OK if not violations else EXIT_NEGATIVE


def _cmd_invariants(args) -> int:
    A = algebra_from_dict(_load_json(args.algebra), check=False)
    violations = A.jacobi_violations()
    if violations:
        print("not a Lie algebra: Jacobi identity fails", file=sys.stderr)
        return EXIT_NEGATIVE
    center = A.center()
    doc = {
        "dim": A.dim,
        "center_dim": len(center),
        "center": [{str(k + 1): format_scalar(x) for k, x in enumerate(v) if x} for v in center],
        "derived_series": A.series("derived"),
        "lower_central_series": A.series("lower_central"),
        "solvable": A.is_solvable(),
        "nilpotent": A.is_nilpotent(),
    }
    if args.json:
        _emit_json(doc)
    else:
        _print_algebra(A)
        print(f"  center dimension: {doc['center_dim']}")
        for v in center:
            print(f"    {_combo(v)}")
        print(f"  derived series dims: {doc['derived_series']}")
        print(f"  lower central series dims: {doc['lower_central_series']}")
        print(f"  solvable: {doc['solvable']}, nilpotent: {doc['nilpotent']}")
    return EXIT_OK


def _cmd_cohomology(args) -> int:
    A = algebra_from_dict(_load_json(args.algebra))
    if not (0 <= args.degree <= A.dim):
        print(f"degree {args.degree} out of range 0..{A.dim}", file=sys.stderr)
        return EXIT_INPUT
    report = cohomology_dim(A, args.degree, representatives=args.representatives)
    if args.json:
        _emit_json(cohomology_report_to_dict(report))
    else:
        q = args.degree
        print(f"dim C^{q} = {report.dim_cochain}")
        print(f"rank d_{q} = {report.rank_d}")
        print(f"rank d_{q - 1} = {report.rank_d_prev}")
        print(f"dim H^{q} = {report.dim_H}")
        if report.representatives is not None:
            for idx, c in enumerate(report.representatives):
                print(json.dumps(cochain_to_dict(c), sort_keys=True))
    return EXIT_OK


def _cmd_check_cocycle(args) -> int:
    A = algebra_from_dict(_load_json(args.algebra))
    c = cochain_from_dict(_load_json(args.cochain))
    constraints = cocycle_constraints(A, c)
    ok = not constraints
    if args.json:
        _emit_json(
            {
                "is_cocycle": ok,
                "symbolic": c.is_symbolic(),
                "constraints": [str(x) for x in constraints],
            }
        )
    elif ok:
        print("cocycle: d(c) = 0")
    else:
        kind = "constraint set" if c.is_symbolic() else "nonzero differential entries"
        print(f"not a cocycle; {kind}:")
        for x in constraints:
            print(f"  {x}")
    return EXIT_OK if ok else EXIT_NEGATIVE


def _cmd_check_coboundary(args) -> int:
    A = algebra_from_dict(_load_json(args.algebra))
    c = cochain_from_dict(_load_json(args.cochain))
    preimage = is_coboundary(A, c)
    if args.json:
        _emit_json(
            {
                "is_coboundary": preimage is not None,
                "preimage": None if preimage is None else cochain_to_dict(preimage),
            }
        )
    elif preimage is None:
        print("not a coboundary")
    else:
        print("coboundary; one preimage:")
        _print_cochain(preimage, "b")
    return EXIT_OK if preimage is not None else EXIT_NEGATIVE


def _cmd_class_eq(args) -> int:
    A = algebra_from_dict(_load_json(args.algebra))
    c1 = cochain_from_dict(_load_json(args.cochain1))
    c2 = cochain_from_dict(_load_json(args.cochain2))
    equal = class_eq(A, c1, c2)
    if args.json:
        _emit_json({"class_equal": equal})
    else:
        print("true: same cohomology class" if equal else "false: classes differ")
    return EXIT_OK if equal else EXIT_NEGATIVE


def _cmd_span(args) -> int:
    A = algebra_from_dict(_load_json(args.algebra))
    cochains = [cochain_from_dict(_load_json(p)) for p in args.cochains]
    degrees = {c.degree for c in cochains}
    if len(degrees) != 1:
        print("all cochains must share one degree", file=sys.stderr)
        return EXIT_INPUT
    q = degrees.pop()
    dim = span_in_cohomology(A, q, cochains)
    if args.json:
        _emit_json({"degree": q, "count": len(cochains), "span_in_H": dim})
    else:
        print(f"span of {len(cochains)} cocycle class(es) in H^{q}: {dim}")
    return EXIT_OK


def _cmd_deform(args) -> int:
    A = algebra_from_dict(_load_json(args.algebra))
    mu1 = cochain_from_dict(_load_json(args.cochain))
    if mu1.degree != 2:
        print("the infinitesimal term must be a 2-cochain", file=sys.stderr)
        return EXIT_INPUT
    constraints = cocycle_constraints(A, mu1)
    if constraints:
        if args.json:
            _emit_json({"is_cocycle": False, "constraints": [str(x) for x in constraints]})
        else:
            print("not a cocycle; failing constraints:")
            for x in constraints:
                print(f"  {x}")
        return EXIT_NEGATIVE
    D = Deformation(A, {1: mu1}, truncation_order=args.max_order)
    report = defect_report(D)
    verdict = strict_extendability(D)
    doc = {
        "verdict": str(verdict),
        "exact_lie_bracket": verdict.exact_lie_bracket,
        "obstructed_at": verdict.obstructed_at,
        "defects": defect_report_to_dict(report),
    }
    if not verdict.exact_lie_bracket:
        status = report.status(verdict.obstructed_at)
        doc["obstruction_class_zero"] = status.is_coboundary
    if args.json:
        _emit_json(doc)
    else:
        _print_deformed_table(D)
        for st in report.orders:
            state = "zero" if st.is_zero else "nonzero"
            print(f"  order {st.order}: defect {state}")
        if verdict.exact_lie_bracket:
            print("exact Lie bracket (real deformation)")
        else:
            zero = doc["obstruction_class_zero"]
            kind = "zero" if zero else "nonzero"
            print(
                f"obstructed at order {verdict.obstructed_at}; "
                f"obstruction class {kind} in H^3"
            )
    return EXIT_OK if verdict.exact_lie_bracket else EXIT_NEGATIVE


def _cmd_extend(args) -> int:
    D = deformation_from_dict(_load_json(args.deformation), default_truncation=args.max_order)
    try:
        outcome = extend_step(D)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT
    if outcome.ok:
        if args.json:
            _emit_json({"extended": True, "deformation": deformation_to_dict(outcome.extended)})
        else:
            new_order = outcome.extended.max_order
            print(f"extended with a term at order {new_order}")
            _print_cochain(outcome.extended.term(new_order), f"mu{new_order}")
        return EXIT_OK
    if args.json:
        _emit_json({"extended": False, "obstruction": cochain_to_dict(outcome.obstruction)})
    else:
        print("obstructed; the partial defect has no preimage under d:")
        _print_cochain(outcome.obstruction, "obstruction")
    return EXIT_NEGATIVE


def _cmd_specialize(args) -> int:
    D = deformation_from_dict(_load_json(args.deformation), default_truncation=args.max_order)
    t = parse_rational(args.t)
    try:
        member = specialize(D, t)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_NEGATIVE
    if args.json:
        _emit_json(algebra_to_dict(member))
    else:
        _print_algebra(member)
    return EXIT_OK


def _cmd_iso(args) -> int:
    A = algebra_from_dict(_load_json(args.algebra_a))
    B = algebra_from_dict(_load_json(args.algebra_b))
    if args.iso_command == "verify":
        m = matrix_from_dict(_load_json(args.map))
        try:
            T = BasisChange(m)
        except SingularMatrixError as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_INPUT
        ok = verify_isomorphism(A, B, T)
        if args.json:
            _emit_json({"isomorphic_via_map": ok})
        else:
            print("true" if ok else "false")
        return EXIT_OK if ok else EXIT_NEGATIVE
    bound = [parse_rational(x) for x in args.bound.split(",") if x.strip()]
    T = search_isomorphism(A, B, args.search_class, bound)
    if T is None:
        if args.json:
            _emit_json({"found": False})
        else:
            print("none")
        return EXIT_NEGATIVE
    if args.json:
        _emit_json({"found": True, "matrix": matrix_to_dict(T.matrix)})
    else:
        print(json.dumps(matrix_to_dict(T.matrix), sort_keys=True))
    return EXIT_OK


def _catalog_object(args):
    name = args.name
    if name.startswith("h") and name[1:].isdigit():
        return algebra_to_dict(catalog.heisenberg(int(name[1:])))
    if name in catalog.FAMILIES:
        params = None
        if args.params:
            params = [parse_rational(x) for x in args.params.split(",") if x.strip()]
        c = catalog.phi(name, params, symbolic=args.symbolic)
        if args.deformed:
            if c.is_symbolic():
                raise SchemaError(name, "cannot specialize a symbolic cochain")
            base = catalog.heisenberg(2) if not name.startswith("h1_") else catalog.heisenberg(1)
            D = Deformation(base, {1: c}, truncation_order=args.max_order)
            return algebra_to_dict(specialize(D, parse_rational(args.t)))
        return cochain_to_dict(c)
    if name == "representatives":
        return {
            "representatives": [
                {
                    "label": rep.label,
                    "family": rep.family,
                    "params": [str(x) for x in rep.params],
                    "cochain": cochain_to_dict(rep.cochain()),
                }
                for rep in catalog.paper_representatives()
            ]
        }
    raise SchemaError("name", f"unknown catalog object {name!r}")


def _cmd_catalog(args) -> int:
    if args.catalog_command == "list":
        names = ["hN (any N >= 1: h1, h2, h3, ...)"]
        names += sorted(catalog.FAMILIES)
        names.append("representatives")
        for n in names:
            print(n)
        return EXIT_OK
    _emit_json(_catalog_object(args))
    return EXIT_OK


def _cmd_reproduce(args) -> int:
    rows, summary = catalog.reproduce(max_order=args.max_order)
    doc = {
        "version": __version__,
        "rows": [
            {
                "label": r.label,
                "fp2_alias": r.fp2_alias,
                "is_cocycle": r.is_cocycle,
                "strict_extendable": r.strict_extendable,
                "obstructed_at": r.obstructed_at,
                "obstruction_class_zero": r.obstruction_class_zero,
                "nilpotent_at_t1": r.nilpotent_at_t1,
                "solvable_at_t1": r.solvable_at_t1,
            }
            for r in rows
        ],
        "summary": {
            "classes": summary.classes,
            "extendable": summary.extendable,
            "obstructed": summary.obstructed,
            "pairwise_class_distinct": summary.pairwise_class_distinct,
            "equal_class_pairs": [list(p) for p in summary.equal_class_pairs],
            "distinct_classes": summary.distinct_classes,
            "dim_H2": summary.h2_dim,
            "representative_span_in_H2": summary.representative_span_in_h2,
            "phi8_000_equals_phi6_00": summary.phi8_000_equals_phi6_00,
            "nonisomorphic_nilpotent_generic_members": summary.nonisomorphic_nilpotent_generic_members,
            "isomorphisms": [
                {
                    "a": f.label_a,
                    "b": f.label_b,
                    "method": f.method,
                    "columns": [[str(x) for x in col] for col in f.matrix_columns],
                }
                for f in summary.isomorphisms
            ],
        },
    }
    if args.json:
        _emit_json(doc)
        return EXIT_OK
    print(f"{'label':12s} {'cocycle':8s} {'extendable':11s} {'nilpotent':10s} {'solvable':9s}")
    for r in rows:
        ext = "yes" if r.strict_extendable else f"no (order {r.obstructed_at})"
        nilp = "-" if r.nilpotent_at_t1 is None else ("yes" if r.nilpotent_at_t1 else "no")
        solv = "-" if r.solvable_at_t1 is None else ("yes" if r.solvable_at_t1 else "no")
        print(f"{r.label:12s} {'yes' if r.is_cocycle else 'no':8s} {ext:11s} {nilp:10s} {solv:9s}")
    print(
        f"{summary.classes} classes / {summary.extendable} real / "
        f"{summary.obstructed} infinitesimal-only"
    )
    print(
        f"distinct cohomology classes among representatives: {summary.distinct_classes}"
        + (
            f" (coinciding pairs: {', '.join(f'{a}~{b}' for a, b in summary.equal_class_pairs)})"
            if summary.equal_class_pairs
            else ""
        )
    )
    print(f"span of representatives in H^2: {summary.representative_span_in_h2}")
    for f in summary.isomorphisms:
        print(f"isomorphism {f.label_a} ~ {f.label_b} via {f.method}")
    print(
        "non-isomorphic nilpotent generic members: "
        f"{summary.nonisomorphic_nilpotent_generic_members}"
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liedeform",
        description="Exact workbench for Lie algebra cohomology and deformations.",
    )
    parser.add_argument("--version", action="version", version=f"liedeform {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, max_order=False, t=False):
        p.add_argument("--json", action="store_true", help="emit a JSON document")
        if max_order:
            p.add_argument("--max-order", type=int, default=4, metavar="N",
                           help="defect truncation order (default 4)")
        if t:
            p.add_argument("--t", default="1", metavar="VALUE",
                           help="rational deformation parameter (default 1)")

    p = sub.add_parser("jacobi", help="validate the Jacobi identity of an algebra file")
    p.add_argument("algebra")
    add_common(p)
    p.set_defaults(handler=_cmd_jacobi)

    p = sub.add_parser("invariants", help="center, series, solvability, nilpotency")
    p.add_argument("algebra")
    add_common(p)
    p.set_defaults(handler=_cmd_invariants)

    p = sub.add_parser("cohomology", help="dim H^q by exact rank computation")
    p.add_argument("algebra")
    p.add_argument("degree", type=int)
    p.add_argument("--representatives", action="store_true",
                   help="emit representative cocycles")
    add_common(p)
    p.set_defaults(handler=_cmd_cohomology)

    p = sub.add_parser("check-cocycle", help="is d(c) = 0 (symbolic aware)")
    p.add_argument("algebra")
    p.add_argument("cochain")
    add_common(p)
    p.set_defaults(handler=_cmd_check_cocycle)

    p = sub.add_parser("check-coboundary", help="find b with d(b) = c, if any")
    p.add_argument("algebra")
    p.add_argument("cochain")
    add_common(p)
    p.set_defaults(handler=_cmd_check_coboundary)

    p = sub.add_parser("class-eq", help="do two cocycles differ by a coboundary")
    p.add_argument("algebra")
    p.add_argument("cochain1")
    p.add_argument("cochain2")
    add_common(p)
    p.set_defaults(handler=_cmd_class_eq)

    p = sub.add_parser("span", help="dimension of cocycle span inside H^q")
    p.add_argument("algebra")
    p.add_argument("cochains", nargs="+")
    add_common(p)
    p.set_defaults(handler=_cmd_span)

    p = sub.add_parser("deform", help="per-order defects and extendability verdict")
    p.add_argument("algebra")
    p.add_argument("cochain")
    add_common(p, max_order=True)
    p.set_defaults(handler=_cmd_deform)

    p = sub.add_parser("extend", help="one order-by-order extension step")
    p.add_argument("deformation")
    add_common(p, max_order=True)
    p.set_defaults(handler=_cmd_extend)

    p = sub.add_parser("specialize", help="member algebra at a rational t")
    p.add_argument("deformation")
    add_common(p, max_order=True, t=True)
    p.set_defaults(handler=_cmd_specialize)

    p = sub.add_parser("iso", help="verify or search basis-change isomorphisms")
    iso_sub = p.add_subparsers(dest="iso_command", required=True)
    pv = iso_sub.add_parser("verify", help="check a supplied basis change")
    pv.add_argument("algebra_a")
    pv.add_argument("algebra_b")
    pv.add_argument("--map", required=True, help="matrix file with the basis change")
    add_common(pv)
    pv.set_defaults(handler=_cmd_iso)
    ps = iso_sub.add_parser("search", help="enumerate a finite class of basis changes")
    ps.add_argument("algebra_a")
    ps.add_argument("algebra_b")
    ps.add_argument("--class", dest="search_class", required=True,
                    choices=["diagonal_signs", "monomial", "monomial_plus_one_transvection"])
    ps.add_argument("--bound", default="1,-1",
                    help="comma-separated nonzero coefficients (default 1,-1)")
    add_common(ps)
    ps.set_defaults(handler=_cmd_iso)

    p = sub.add_parser("catalog", help="emit built-in objects as JSON")
    cat_sub = p.add_subparsers(dest="catalog_command", required=True)
    pl = cat_sub.add_parser("list", help="list catalog object names")
    pl.set_defaults(handler=_cmd_catalog)
    pe = cat_sub.add_parser("emit", help="emit one catalog object")
    pe.add_argument("name", help="hN, phi1..phi8, h1_phi1..h1_phi5, representatives")
    pe.add_argument("--params", help="comma-separated rational parameters")
    pe.add_argument("--symbolic", action="store_true", help="keep p, q, r symbolic")
    pe.add_argument("--deformed", action="store_true",
                    help="emit the deformed algebra at --t instead of the cochain")
    add_common(pe, max_order=True, t=True)
    pe.set_defaults(handler=_cmd_catalog)

    p = sub.add_parser("reproduce", help="recompute the full classification table")
    add_common(p, max_order=True)
    p.set_defaults(handler=_cmd_reproduce)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except SchemaError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotACocycleError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SingularMatrixError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, ZeroDivisionError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
