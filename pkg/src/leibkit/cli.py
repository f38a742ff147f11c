"""Command-line front end.

Exit codes: 0 holds/success, 1 falsified or negative verdict, 2 input or
usage error, 3 unknown/undecided.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import io as lio
from .algebras import Algebra, GradedAlgebra, verify_associative, verify_special_grading
from .derive import derive_huliu, derive_leibniz
from .fuzz import run_fuzz
from .huliu import (
    HuLiuAlgebra,
    classify_huliu_simplicity,
    verify_huliu_identities,
    verify_lie,
)
from .leibniz import (
    LeibnizAlgebra,
    annihilator,
    classify_simplicity,
    verify_right_leibniz,
)
from .report import Report
from .xigroup import (
    LinearXiGroup,
    RankAmbiguityError,
    check_xi_group,
    tangent_space,
    verify_tangent_huliu,
)


def _vec(v):
    return "(" + ", ".join(str(c) for c in v) + ")"


def _witness_json(w):
    if w is None:
        return None
    return {
        "inputs": [[str(c) for c in v] for v in w.inputs],
        "lhs": [str(c) for c in w.lhs],
        "rhs": [str(c) for c in w.rhs],
        "note": w.note,
    }


def _emit_report(rep: Report, as_json: bool, out) -> int:
    if as_json:
        json.dump({"holds": rep.holds, "identity": rep.identity,
                   "witness": _witness_json(rep.witness)}, out)
        out.write("\n")
    elif rep.holds:
        out.write(f"holds: {rep.identity}\n")
    else:
        w = rep.witness
        out.write(f"falsified: {rep.identity} ({w.note})\n")
        for v in w.inputs:
            out.write(f"  input {_vec(v)}\n")
        out.write(f"  lhs {_vec(w.lhs)}\n  rhs {_vec(w.rhs)}\n")
    return 0 if rep.holds else 1


def _as_leibniz(obj):
    if isinstance(obj, LeibnizAlgebra):
        return obj
    if isinstance(obj, HuLiuAlgebra):
        return obj.leibniz
    raise lio.SchemaError("this command needs a leibniz or huliu file")


def cmd_verify(args, out) -> int:
    obj = lio.load_file(args.path)
    if args.kind == "assoc":
        if isinstance(obj, LinearXiGroup):
            obj = obj.graded
        algebra = obj.algebra if isinstance(obj, GradedAlgebra) else obj
        if not isinstance(algebra, Algebra):
            raise lio.SchemaError("kind 'assoc' needs an algebra, graded, or xigroup file")
        return _emit_report(verify_associative(algebra), args.json, out)
    if args.kind == "grading":
        if isinstance(obj, LinearXiGroup):
            obj = obj.graded
        if not isinstance(obj, GradedAlgebra):
            raise lio.SchemaError("kind 'grading' needs a graded or xigroup file")
        rep = verify_associative(obj.algebra)
        if not rep.holds:
            return _emit_report(rep, args.json, out)
        return _emit_report(verify_special_grading(obj), args.json, out)
    if args.kind == "leibniz":
        return _emit_report(verify_right_leibniz(_as_leibniz(obj)), args.json, out)
    # kind == huliu: the full stack, reporting the first layer that fails
    if not isinstance(obj, HuLiuAlgebra):
        raise lio.SchemaError("kind 'huliu' needs a huliu file")
    rep = verify_right_leibniz(obj.leibniz)
    if rep.holds:
        rep = verify_lie(obj.square)
    if rep.holds:
        rep = verify_huliu_identities(obj)
    return _emit_report(rep, args.json, out)


def cmd_annihilator(args, out) -> int:
    leib = _as_leibniz(lio.load_file(args.path))
    try:
        ann = annihilator(leib)
    except ValueError as e:
        raise lio.SchemaError(str(e)) from None
    if args.json:
        json.dump({"dim": ann.dim,
                   "basis": [[str(c) for c in b] for b in ann.basis]}, out)
        out.write("\n")
    else:
        out.write(f"annihilator dimension {ann.dim}\n")
        for b in ann.basis:
            out.write(f"  {_vec(b)}\n")
    return 0


def cmd_simple(args, out) -> int:
    obj = lio.load_file(args.path)
    try:
        if isinstance(obj, HuLiuAlgebra):
            verdict = classify_huliu_simplicity(obj, seed=args.seed)
        elif isinstance(obj, LeibnizAlgebra):
            verdict = classify_simplicity(obj, seed=args.seed)
        else:
            raise lio.SchemaError("this command needs a leibniz or huliu file")
    except ValueError as e:
        raise lio.SchemaError(str(e)) from None
    if args.json:
        json.dump({
            "verdict": verdict.tag,
            "reason": verdict.reason,
            "note": verdict.note,
            "checks": list(verdict.checks),
            "certificate": None if verdict.certificate is None
            else [[str(c) for c in b] for b in verdict.certificate.basis],
        }, out)
        out.write("\n")
    else:
        out.write(f"{verdict.tag}: {verdict.reason}\n")
        if verdict.note:
            out.write(f"  note: {verdict.note}\n")
        for c in verdict.checks:
            out.write(f"  checked: {c}\n")
        if verdict.certificate is not None:
            out.write("  certificate ideal basis:\n")
            for b in verdict.certificate.basis:
                out.write(f"    {_vec(b)}\n")
    return {"Simple": 0, "NotSimple": 1, "Unknown": 3}[verdict.tag]


def cmd_derive(args, out) -> int:
    obj = lio.load_file(args.path)
    if not isinstance(obj, GradedAlgebra):
        raise lio.SchemaError("derive needs a graded file")
    try:
        derived = derive_huliu(obj) if args.huliu else derive_leibniz(obj)
    except ValueError as e:
        raise lio.SchemaError(str(e)) from None
    lio.save_file(derived, args.output)
    out.write(f"wrote {'huliu' if args.huliu else 'leibniz'} file {args.output}\n")
    return 0


def cmd_tangent(args, out) -> int:
    group = lio.load_file(args.path)
    if not isinstance(group, LinearXiGroup):
        raise lio.SchemaError("tangent needs an xigroup file")
    try:
        t = tangent_space(group)
    except RankAmbiguityError as e:
        out.write(f"unknown rank: singular values {e.singular_values}\n")
        return 3
    rep = verify_tangent_huliu(t, group.realization, group.tolerance)
    if args.json:
        json.dump({
            "dim": t.subspace.dim,
            "exact": t.exact,
            "basis": [[str(c) for c in b] for b in t.subspace.basis],
            "huliu_structure": {"holds": rep.holds, "identity": rep.identity,
                                "witness": _witness_json(rep.witness)},
        }, out)
        out.write("\n")
    else:
        out.write(f"tangent space dimension {t.subspace.dim} "
                  f"({'exact' if t.exact else 'numeric'})\n")
        for b in t.subspace.basis:
            out.write(f"  {_vec(b)}\n")
        _emit_report(rep, False, out)
    return 0 if rep.holds else 1


def cmd_xi_check(args, out) -> int:
    group = lio.load_file(args.path)
    if not isinstance(group, LinearXiGroup):
        raise lio.SchemaError("xi-check needs an xigroup file")
    chk = check_xi_group(group, samples=args.samples, seed=args.seed)
    if args.json:
        json.dump({"holds": chk.holds, "samples": chk.samples,
                   "worst_residual": chk.worst_residual,
                   "witness": None if chk.witness is None else {
                       "x": list(map(float, chk.witness[0])),
                       "h": list(map(float, chk.witness[1])),
                       "residual": chk.witness[2]}}, out)
        out.write("\n")
    else:
        out.write(f"conjugation stability over {chk.samples} samples: "
                  f"worst residual {chk.worst_residual:.3e} "
                  f"({'holds' if chk.holds else 'violated'})\n")
    return 0 if chk.holds else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="leibkit",
        description="Verify, derive, and probe Leibniz-type bracket algebras "
                    "and linear xi-groups stored as JSON files.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check a defining identity set")
    p.add_argument("path")
    p.add_argument("--kind", required=True,
                   choices=["leibniz", "huliu", "assoc", "grading"])
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("annihilator", help="print the annihilator basis")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("simple", help="classify simplicity")
    p.add_argument("path")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("derive", help="derive brackets from a graded algebra")
    p.add_argument("path")
    p.add_argument("--huliu", action="store_true")
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("tangent", help="tangent space of a linear xi-group")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("xi-check", help="sampled conjugation-stability check")
    p.add_argument("path")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("fuzz", help="random square-zero extensions through all verifiers")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--dim0", type=int, default=3)
    p.add_argument("--dim1", type=int, default=3)
    p.add_argument("--dump-dir", default=".")

    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0

    out = sys.stdout
    dispatch = {
        "verify": cmd_verify,
        "annihilator": cmd_annihilator,
        "simple": cmd_simple,
        "derive": cmd_derive,
        "tangent": cmd_tangent,
        "xi-check": cmd_xi_check,
    }
    try:
        if args.command == "fuzz":
            return run_fuzz(args.trials, args.seed, args.dim0, args.dim1, out,
                            dump_dir=args.dump_dir)
        return dispatch[args.command](args, out)
    except lio.SchemaError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except OSError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
