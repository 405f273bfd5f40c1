"""Command-line front end.

Exit codes: 0 verified / decided yes, 1 refuted or failed, 2 malformed
input.  --json switches every subcommand to one machine-readable result
object per check.  The sampling seed defaults to 0 and can be overridden
by the QMOD_SEED environment variable or per-command flags.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import cexp, exprs, fock, gramcert, matalg, numfield, polyalg, qmod, reproduce, weyl
from .scalars import parse_rational

EXIT_OK, EXIT_REFUTED, EXIT_MALFORMED = 0, 1, 2


def _default_seed() -> int:
    try:
        return int(os.environ.get("QMOD_SEED", "0"))
    except ValueError:
        return 0


def _emit(args, payload: dict, text_lines) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, default=str))
    else:
        for line in text_lines:
            print(line)


def _parse_or_die(text, context, forbid_decimals=False):
    try:
        return exprs.parse_value(text, context, forbid_decimals=forbid_decimals)
    except exprs.ExprError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_MALFORMED)


# -- verify-gram -----------------------------------------------------------------

def cmd_verify_gram(args) -> int:
    try:
        with open(args.certificate) as handle:
            data = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot load certificate: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    if args.forbid_decimals:
        data["forbid_decimals"] = True
    try:
        cert = gramcert.certificate_from_json(data)
    except gramcert.CertificateFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    result = gramcert.verify(cert)
    psd = [gramcert.psd_exact(block.matrix) for block in cert.blocks]
    ok = result.ok and all(psd)
    lines = [f"expansion identity: {'ok' if result.ok else 'MISMATCH'}"]
    if not result.ok:
        lines.append(f"discrepancy: {weyl.format_xy(result.discrepancy)}")
    for i, flag in enumerate(psd):
        lines.append(f"block {i} PSD: {'ok' if flag else 'NO'}")
    lines.append("verified" if ok else "refuted")
    _emit(args, {"check": "verify-gram", "ok": ok,
                 "identity": result.ok, "blocks_psd": psd,
                 "discrepancy": None if result.ok else weyl.format_xy(result.discrepancy)},
          lines)
    return EXIT_OK if ok else EXIT_REFUTED


# -- fock ------------------------------------------------------------------------

def cmd_fock(args) -> int:
    context = (exprs.weyl_xy_context() if args.context == "weyl-xy"
               else exprs.weyl_ast_context())
    elem = _parse_or_die(args.element, context)
    if not elem.is_hermitian():
        print("error: element is not hermitian", file=sys.stderr)
        return EXIT_MALFORMED
    rows = []
    all_psd = True
    for level in range(args.max_level + 1):
        flag = fock.psd_truncated(elem, level)
        all_psd = all_psd and flag
        rows.append((level, flag))
    lines = [f"level {lvl:3d}: {'PSD' if flag else 'not PSD'}" for lvl, flag in rows]
    lines.append("positive through the table" if all_psd
                 else "refuted at level "
                      + str(next(lvl for lvl, flag in rows if not flag)))
    _emit(args, {"check": "fock", "ok": all_psd,
                 "levels": {lvl: flag for lvl, flag in rows}}, lines)
    return EXIT_OK if all_psd else EXIT_REFUTED


# -- posn0 -----------------------------------------------------------------------

def cmd_posn0(args) -> int:
    algebra = polyalg.PolyAlgebra([args.var], label=f"C[{args.var}]")
    f = _parse_or_die(args.poly, exprs.poly_context(algebra))
    try:
        verdict = polyalg.nonneg_on(f, "N0")
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    _emit(args, {"check": "posn0", "ok": verdict}, ["yes" if verdict else "no"])
    return EXIT_OK if verdict else EXIT_REFUTED


# -- hermite ----------------------------------------------------------------------

def cmd_hermite(args) -> int:
    algebra = polyalg.PolyAlgebra(["x"])
    p = _parse_or_die(args.minpoly, exprs.poly_context(algebra))
    try:
        coeffs = p.rational_coeffs()
        field = numfield.NumberField(coeffs)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    r = numfield.real_root_count(field)
    s = field.degree
    inducible = r == s
    payload = {"check": "hermite", "r": r, "s": s, "inducible": inducible,
               "ok": True}
    lines = [f"r={r}, s={s}, inducible: {'yes' if inducible else 'no'}"]
    if args.q is not None:
        q_poly = _parse_or_die(args.q, exprs.poly_context(algebra))
        q = field.element(q_poly.rational_coeffs())
        if q.is_zero():
            print("error: q vanishes in the field", file=sys.stderr)
            return EXIT_MALFORMED
        sig = numfield.signature(numfield.hermite_form(q))
        payload["signature"] = sig
        lines.append(f"signature of the q-twisted trace form: {sig}")
        if inducible:
            member = numfield.in_induced_ordering(q)
            payload["in_induced_ordering"] = member
            payload["ok"] = member
            lines.append(f"q in the induced ordering: {'yes' if member else 'no'}")
    _emit(args, payload, lines)
    return EXIT_OK if payload["ok"] else EXIT_REFUTED


# -- matpsd -----------------------------------------------------------------------

def cmd_matpsd(args) -> int:
    try:
        with open(args.file) as handle:
            data = json.load(handle)
        names = data["vars"]
        algebra = polyalg.PolyAlgebra(names)
        context = exprs.poly_context(algebra)
        entries = [[_parse_or_die(cell, context) for cell in row]
                   for row in data["entries"]]
        mat = matalg.MatPoly(algebra, entries)
    except (OSError, KeyError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: bad matrix file: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    constraints = [_parse_or_die(text, context) for text in (args.constraints or [])]
    sset = matalg.SemialgebraicSet(constraints)
    points = []
    if args.points:
        for chunk in args.points.split(";"):
            coords = [parse_rational(c) for c in chunk.split(",")]
            if len(coords) != len(names):
                print("error: point arity mismatch", file=sys.stderr)
                return EXIT_MALFORMED
            points.append(tuple(coords))
    if args.box:
        box = []
        for spec_chunk in args.box:
            lo, _, hi = spec_chunk.partition(":")
            box.append((parse_rational(lo), parse_rational(hi)))
        if len(box) != len(names):
            print("error: box arity mismatch", file=sys.stderr)
            return EXIT_MALFORMED
        points.extend(matalg.grid_points(box, args.grid))
    if not mat.is_hermitian():
        print("error: matrix is not hermitian", file=sys.stderr)
        return EXIT_MALFORMED
    refutation = matalg.ind_tr_refute(mat, sset, points)
    if refutation is None:
        _emit(args, {"check": "matpsd", "ok": True, "points": len(points)},
              [f"no refutation at {len(points)} sample points (proves nothing)"])
        return EXIT_OK
    lines = [f"refuted at point {tuple(str(c) for c in refutation.point)}",
             f"direction {tuple(str(v) for v in refutation.direction)}",
             f"value {refutation.value}"]
    _emit(args, {"check": "matpsd", "ok": False,
                 "point": [str(c) for c in refutation.point],
                 "direction": [str(v) for v in refutation.direction],
                 "value": str(refutation.value)}, lines)
    return EXIT_REFUTED


# -- ce-check ---------------------------------------------------------------------

def _projection_registry():
    def flagship():
        return reproduce._flagship_cyclic(-1)

    return {
        "weyl-grading": cexp.weyl_grading_projection,
        "parity": lambda: cexp.parity_map(polyalg.real_line("x"), "x", 1),
        "parity2": lambda: cexp.parity_map(polyalg.real_line("x"), "x", 2),
        "parity-tower": lambda: cexp.parity_tower_map("x"),
        "charge": cexp.charge_map,
        "mat-trace:2": lambda: cexp.matrix_trace_map(polyalg.real_line("x"), 2),
        "mat-trace:3": lambda: cexp.matrix_trace_map(polyalg.real_line("x"), 3),
        "field-trace:sqrt2": lambda: cexp.field_trace_map(numfield.NumberField([-2, 0, 1])),
        "galois:sqrt2": lambda: (lambda fld: cexp.galois_average_map(
            fld, fld.automorphism([0, -1])))(numfield.NumberField([-2, 0, 1])),
        "vacuum": cexp.vacuum_map,
        "cyclic-field": lambda: cexp.cyclic_field_map(flagship()),
        "cyclic-trace": lambda: cexp.cyclic_trace_map(flagship()),
        "matrix-average": lambda: cexp.matrix_average_map(flagship()),
    }


def cmd_ce_check(args) -> int:
    registry = _projection_registry()
    if args.projection not in registry:
        print(f"error: unknown projection {args.projection!r}; known: "
              + ", ".join(sorted(registry)), file=sys.stderr)
        return EXIT_MALFORMED
    projection = registry[args.projection]()
    report = cexp.check_axioms(projection, num_samples=args.samples,
                               seed=args.seed, with_ce5=args.ce5)
    ok = report.passed(include_ce5=args.ce5)
    payload = {"check": "ce-check", "projection": args.projection, "ok": ok,
               "axioms": {axiom: status for axiom, (status, _) in report.results.items()}}
    _emit(args, payload, report.lines())
    return EXIT_OK if ok else EXIT_REFUTED


# -- member / ind / act -------------------------------------------------------------

def _module_by_descriptor(desc: str):
    if desc == "posn0":
        return qmod.PosNaturals()
    if desc == "posr":
        return qmod.PosReals()
    if desc == "poshalf":
        return qmod.PosHalfline()
    if desc == "ninf":
        return qmod.LeadingCoeff()
    if desc.startswith("npoint:"):
        return qmod.PointEval(int(desc.split(":", 1)[1]))
    raise ValueError(f"unknown module descriptor {desc!r}; "
                     "use posn0 | posr | poshalf | ninf | npoint:<k>")


def cmd_member(args) -> int:
    try:
        module = _module_by_descriptor(args.qm)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    algebra = polyalg.PolyAlgebra([args.var], label=f"C[{args.var}]")
    f = _parse_or_die(args.poly, exprs.poly_context(algebra))
    try:
        result = module.membership(f)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    lines = [result.status + (f"  ({result.detail})" if result.detail else "")]
    _emit(args, {"check": "member", "qm": args.qm, "status": result.status,
                 "ok": result.status == qmod.YES, "detail": result.detail}, lines)
    return EXIT_OK if result.status == qmod.YES else EXIT_REFUTED


def cmd_ind(args) -> int:
    if args.minpoly is not None:
        algebra = polyalg.PolyAlgebra(["x"])
        p = _parse_or_die(args.minpoly, exprs.poly_context(algebra))
        try:
            field = numfield.NumberField(p.rational_coeffs())
            module = qmod.InducedOrdering(field)
            if args.q is None:
                print("error: field mode needs --q", file=sys.stderr)
                return EXIT_MALFORMED
            q_poly = _parse_or_die(args.q, exprs.poly_context(algebra))
            q = field.element(q_poly.rational_coeffs())
            result = module.membership(q)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_MALFORMED
        _emit(args, {"check": "ind", "mode": "field", "status": result.status,
                     "ok": bool(result)}, [result.status])
        return EXIT_OK if result.status == qmod.YES else EXIT_REFUTED

    context = (exprs.weyl_xy_context() if args.context == "weyl-xy"
               else exprs.weyl_ast_context())
    elem = _parse_or_die(args.element, context)
    projection = cexp.weyl_grading_projection()
    module = qmod.PosNaturals()
    witnesses = [_parse_or_die(text, context) for text in (args.witness or [])]
    try:
        result = qmod.ind_membership(projection, module, elem,
                                     witnesses=witnesses,
                                     mode="fock" if args.fock else None,
                                     level=args.max_level)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    line = result.status + (f"  ({result.detail})" if result.detail else "")
    _emit(args, {"check": "ind", "mode": "fock" if args.fock else "witness",
                 "status": result.status, "ok": result.status == qmod.YES,
                 "detail": result.detail}, [line])
    return EXIT_OK if result.status == qmod.YES else EXIT_REFUTED


def cmd_act(args) -> int:
    try:
        module = _module_by_descriptor(args.qm)
        moved = qmod.graded_action(args.k, module)
    except (TypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    name = "undefined" if moved is None else moved.name
    _emit(args, {"check": "act", "k": args.k, "qm": args.qm,
                 "result": name, "ok": moved is not None}, [name])
    return EXIT_OK if moved is not None else EXIT_REFUTED


# -- reproduce-paper -----------------------------------------------------------------

def cmd_reproduce(args) -> int:
    results = reproduce.run_checks(set(args.only) if args.only else None)
    width = max(len(r.check_id) for r in results)
    lines = [f"{'PASS' if r.ok else 'FAIL'}  {r.check_id:<{width}}  "
             f"{r.seconds:7.2f}s  {r.detail}" for r in results]
    ok = all(r.ok for r in results)
    lines.append(f"{sum(r.ok for r in results)}/{len(results)} checks passed")
    _emit(args, {"check": "reproduce-paper", "ok": ok,
                 "results": [{"id": r.check_id, "ok": r.ok,
                              "seconds": round(r.seconds, 3), "detail": r.detail}
                             for r in results]}, lines)
    return EXIT_OK if ok else EXIT_REFUTED


# -- parser wiring ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="starpos",
        description="Exact positivity computations in *-algebras")
    parser.add_argument("--json", action="store_true",
                        help="emit one JSON result object instead of text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-gram", help="verify a Gram certificate file")
    p.add_argument("certificate", help="certificate JSON path")
    p.add_argument("--forbid-decimals", action="store_true",
                   help="reject decimal literals in the certificate")
    p.set_defaults(func=cmd_verify_gram)

    p = sub.add_parser("fock", help="per-level ladder PSD table of an element")
    p.add_argument("--element", required=True)
    p.add_argument("--context", choices=["weyl-xy", "weyl-ast"], default="weyl-xy")
    p.add_argument("--max-level", type=int, default=10)
    p.set_defaults(func=cmd_fock)

    p = sub.add_parser("posn0", help="exact nonnegativity on the integers >= 0")
    p.add_argument("--poly", required=True)
    p.add_argument("--var", default="N")
    p.set_defaults(func=cmd_posn0)

    p = sub.add_parser("hermite", help="trace-form signature and inducibility "
                       "(squarefree monic minimal polynomial; irreducibility "
                       "is the caller's responsibility)")
    p.add_argument("--minpoly", required=True)
    p.add_argument("--q", default=None)
    p.set_defaults(func=cmd_hermite)

    p = sub.add_parser("matpsd", help="refute matrix-polynomial PSDness on a set")
    p.add_argument("--file", required=True, help="JSON with vars + entries")
    p.add_argument("--constraints", nargs="*", default=[])
    p.add_argument("--box", nargs="*", default=[], metavar="LO:HI")
    p.add_argument("--grid", type=int, default=8)
    p.add_argument("--points", default=None, help="semicolon-separated points")
    p.set_defaults(func=cmd_matpsd)

    p = sub.add_parser("ce-check", help="replay bimodule-projection axioms")
    p.add_argument("--projection", required=True)
    p.add_argument("--samples", type=int, default=8)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--ce5", action="store_true", help="also check CE5")
    p.set_defaults(func=cmd_ce_check)

    p = sub.add_parser("member", help="quadratic-module membership of a polynomial")
    p.add_argument("--qm", required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--var", default="N")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("ind", help="induced-module membership")
    p.add_argument("--element", default=None, help="Weyl element")
    p.add_argument("--context", choices=["weyl-xy", "weyl-ast"], default="weyl-xy")
    p.add_argument("--fock", action="store_true", help="decide via ladder Gram matrices")
    p.add_argument("--max-level", type=int, default=None)
    p.add_argument("--witness", nargs="*", default=[])
    p.add_argument("--minpoly", default=None, help="number-field mode")
    p.add_argument("--q", default=None)
    p.set_defaults(func=cmd_ind)

    p = sub.add_parser("act", help="graded action on a point/leading module")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--qm", required=True)
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("reproduce-paper",
                       help="run the bundled exact verification suite")
    p.add_argument("--only", nargs="*", default=None,
                   help="subset of check ids")
    p.set_defaults(func=cmd_reproduce)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
