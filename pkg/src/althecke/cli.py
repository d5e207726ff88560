"""Command-line front end.

Commands: tableaux | specht | verify | classify | report.
Exit codes: 0 all checks pass, 1 usage or precondition error, 2 the
parameters are not semisimple, 3 a verification check failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import alternating as alt
from . import hecke, seminormal, tableaux
from .scalars import AlgebraParams, NonSemisimpleError

GUARD_LIMIT = 100_000


class CLIError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CLIError(message)


def _add_common(p: _Parser, need_kappa: bool = True):
    p.add_argument("--n", type=int, required=True, help="number of strands")
    p.add_argument("--level", type=int, default=1, help="level (default 1)")
    p.add_argument("--e", type=int, default=None,
                   help="quantum characteristic, > 2 (ignored with --xi-one)")
    p.add_argument("--xi-num", type=int, default=1, metavar="J",
                   help="xi = exp(2*pi*i*J/e) (default J=1)")
    p.add_argument("--xi-one", action="store_true",
                   help="use xi = 1 (infinite quantum characteristic)")
    p.add_argument("--kappa", type=str, default=None,
                   help="comma-separated multicharge, e.g. 1,-1")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", type=str, default=None,
                   help="output file (directory for `report`)")
    p.add_argument("--force", action="store_true",
                   help="ignore the desk-scale size guard")


def build_parser() -> _Parser:
    parser = _Parser(prog="althecke", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    p_tab = sub.add_parser("tableaux", help="list shapes, tableaux, classes")
    _add_common(p_tab)
    p_spe = sub.add_parser("specht", help="generator matrices of one block")
    _add_common(p_spe)
    p_spe.add_argument("--shape", type=str, required=True,
                       help="multipartition, e.g. 2,1 or 1|1")
    p_spe.add_argument("--system", choices=("alternating", "james"),
                       default="alternating")
    p_ver = sub.add_parser("verify", help="run every verification suite")
    _add_common(p_ver)
    p_cls = sub.add_parser("classify", help="irreducibles of the fixed subalgebra")
    _add_common(p_cls)
    p_rep = sub.add_parser("report", help="verify + classify, CSV and figures")
    _add_common(p_rep)
    return parser


def _params_from(args, n_min: int = 1) -> AlgebraParams:
    if args.n < n_min:
        raise CLIError(f"this command needs n >= {n_min}")
    kappa = None
    if args.kappa is not None:
        try:
            kappa = tuple(int(k) for k in args.kappa.split(","))
        except ValueError as exc:
            raise CLIError(f"bad multicharge {args.kappa!r}") from exc
    if not args.xi_one and args.e is None:
        raise CLIError("--e is required unless --xi-one is given")
    try:
        return AlgebraParams.make(args.n, level=args.level, e=args.e,
                                  j=args.xi_num, xi_one=args.xi_one,
                                  kappa=kappa, tol=args.tol)
    except ValueError as exc:
        raise CLIError(str(exc)) from exc


def _guard(args):
    size = args.level ** args.n * _factorial(args.n)
    if size > GUARD_LIMIT and not args.force:
        raise CLIError(f"level^n * n! = {size} exceeds the desk-scale guard "
                       f"({GUARD_LIMIT}); pass --force to proceed")


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)


def _json_dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_jsonable)


def _jsonable(x):
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if hasattr(x, "tolist"):
        return x.tolist()
    return str(x)


def cmd_tableaux(args) -> int:
    _guard(args)
    if args.n < 0:
        raise CLIError("n must be >= 0")
    level = args.level
    kappa = tuple(int(k) for k in args.kappa.split(",")) if args.kappa else \
        ((0,) * level if level >= 1 else (0,))
    if len(kappa) != level:
        raise CLIError("multicharge length must equal the level")
    e = None if args.xi_one else args.e
    if not args.xi_one and e is not None and e <= 2:
        raise CLIError("e must exceed 2")
    shapes = tableaux.enum_multipartitions(args.n, level)
    data = {"n": args.n, "level": level, "kappa": list(kappa),
            "e": e, "shapes": [], "shape_classes": [], "total_tableaux": 0}
    total = 0
    for lam in shapes:
        tabs = tableaux.enum_std_tableaux(lam)
        total += len(tabs)
        data["shapes"].append({
            "shape": lam.to_json(),
            "display": str(lam),
            "num_std": len(tabs),
            "tableaux": [{
                "rows": t.to_json(),
                "display": str(t),
                "contents": list(tableaux.content_seq(t, kappa)),
                "residues": list(tableaux.residue_seq(t, kappa, e)),
            } for t in tabs],
        })
    data["total_tableaux"] = total
    data["shape_classes"] = [[str(m) for m in cls]
                             for cls in tableaux.mp_classes(shapes)]
    if e is not None and args.n >= 1 and e ** args.n <= GUARD_LIMIT:
        data["residue_classes"] = [[list(i) for i in cls]
                                   for cls in tableaux.residue_classes(args.n, e)]
    if args.format == "json":
        _emit(args, _json_dump(data))
    else:
        lines = [f"{len(shapes)} shapes, {total} standard tableaux "
                 f"(n={args.n}, level={level})"]
        for entry in data["shapes"]:
            lines.append(f"  {entry['display']}  |Std| = {entry['num_std']}")
            for t in entry["tableaux"]:
                lines.append(f"    {t['display']}  contents={t['contents']}"
                             f"  residues={t['residues']}")
        lines.append("conjugation classes of shapes:")
        for cls in data["shape_classes"]:
            lines.append("  {" + ", ".join(cls) + "}")
        _emit(args, "\n".join(lines))
    return 0


def cmd_specht(args) -> int:
    _guard(args)
    params = _params_from(args)
    try:
        shape = tableaux.parse_multipartition(args.shape, level=params.level)
    except ValueError as exc:
        raise CLIError(str(exc)) from exc
    if shape.n != params.n:
        raise CLIError(f"shape {args.shape} has size {shape.n}, not n={params.n}")
    if args.system == "alternating" and not params.is_symmetric:
        raise CLIError("the alternating system needs a symmetric multicharge")
    cs = seminormal.CoefficientSystem(params, args.system)
    seminormal.require_semisimple(params)
    gammas = seminormal.gamma_table(cs)
    block = seminormal.specht_block(shape, cs, gammas)
    if args.format == "json":
        _emit(args, _json_dump(block.to_json()))
    else:
        lines = [f"block {shape} of dimension {block.dim} "
                 f"({args.system} system, {params.describe()})",
                 "basis: " + ", ".join(str(t) for t in block.basis)]
        for name in [f"L{k}" for k in range(1, params.n + 1)] + \
                    [f"T{r}" for r in range(1, params.n)]:
            lines.append(f"{name} =")
            for row in block.generator(name):
                lines.append("   [" + "  ".join(f"{z:.6g}" for z in row) + "]")
        _emit(args, "\n".join(lines))
    return 0


def _sign_reference_check() -> dict:
    """Convention self-check on the two-dimensional block at xi = 1.

    Our matrices are compared against the commonly printed variant whose
    second generator has all signs flipped; ours satisfy the braid relation
    together (exactly), the printed variant does not.
    """
    params = AlgebraParams.make(3, level=1, xi_one=True, kappa=(0,))
    cs = seminormal.CoefficientSystem(params, "alternating")
    gammas = seminormal.gamma_table(cs)
    shape = tableaux.Multipartition(((2, 1),))
    block = seminormal.specht_block(shape, cs, gammas)
    t1, t2 = block.tmats
    s3 = np.sqrt(3.0)
    printed_t1 = np.array([[1, 0], [0, -1]], dtype=complex)
    printed_t2 = np.array([[0.5, s3 * 1j / 2], [-s3 * 1j / 2, -0.5]],
                          dtype=complex)
    eye = np.eye(2)
    braid = lambda a, b: float(np.max(np.abs(a @ b @ a - b @ a @ b)))
    return {
        "t1_matches_printed_residual": float(np.max(np.abs(t1 - printed_t1))),
        "t2_is_minus_printed_residual": float(np.max(np.abs(t2 + printed_t2))),
        "derived_quadratic_residual": max(
            float(np.max(np.abs(t1 @ t1 - eye))),
            float(np.max(np.abs(t2 @ t2 - eye)))),
        "derived_braid_residual": braid(t1, t2),
        "printed_pair_braid_violation": braid(printed_t1, printed_t2),
    }


def run_verification(params: AlgebraParams) -> dict:
    """Every suite: relations, coefficient axioms for both systems, gamma
    propagation, idempotents, word-basis rank, star-transpose symmetry,
    the hash calculus, the fixed-subalgebra dimension, and the
    sign-convention reference example."""
    data: dict = {}
    p = seminormal.ariki_p(params)
    nonzero = abs(p) > params.tol
    data["p_hecke"] = {"value": complex(p), "nonzero": nonzero}
    data["sign_reference"] = _sign_reference_check()
    if not nonzero:
        data["status"] = ("parameters are not semisimple; seminormal suites "
                          "skipped")
        return data
    cs_alt = seminormal.CoefficientSystem(params, "alternating")
    cs_james = seminormal.CoefficientSystem(params, "james")
    data["axioms_james"] = {
        "families": seminormal.verify_coefficient_axioms(cs_james).residuals}
    data["axioms_alternating"] = {
        "families": seminormal.verify_coefficient_axioms(cs_alt).residuals}
    gam_j = seminormal.gamma_table(cs_james)
    gam_a = seminormal.gamma_table(cs_alt)
    data["gamma_path"] = {"james_residual": gam_j.path_residual,
                          "alternating_residual": gam_a.path_residual}
    rep = hecke.RegularRep(params, cs_alt, gam_a)
    data["relations"] = {"families": hecke.verify_relations(rep)}
    ident = rep.identity()
    total = rep.zero()
    idem_resid = 0.0
    ortho_resid = 0.0
    idems = []
    for t in rep.tableaux:
        ft = seminormal.idempotent_f(t, rep)
        idems.append(ft)
        total = total + ft
        idem_resid = max(idem_resid, (ft @ ft - ft).max_abs())
    for i in range(len(idems)):
        for j in range(i + 1, len(idems)):
            ortho_resid = max(ortho_resid, (idems[i] @ idems[j]).max_abs())
    data["idempotents"] = {
        "sum_identity_residual": (total - ident).max_abs(),
        "idempotency_residual": idem_resid,
        "orthogonality_residual": ortho_resid,
    }
    basis = hecke.ak_basis(rep)
    rank = basis.rank(params.tol)
    data["ak_rank"] = {"rank": rank, "expected": rep.dim_algebra,
                       "pass": rank == rep.dim_algebra}
    data["star_transpose"] = {
        "alternating_residual": seminormal.star_transpose_residual(rep)}
    inv = alt.HashInvolution(rep, basis)
    data["hash"] = {
        "families": alt.check_hash_calculus(rep, inv),
        "relations_on_images": alt.hashed_generator_relations(rep, inv),
        "double_hash_residual": alt.double_hash_residual(rep, inv),
    }
    data["alt_dimension"] = alt.alt_dimension_report(rep, inv)
    return data


def _verification_passes(data: dict, tol: float) -> bool:
    from .reporting import _flatten_residuals

    if not data["p_hecke"]["nonzero"]:
        return False
    if any(r >= tol for _, r in _flatten_residuals(data)
           if not _.endswith("braid_violation")):
        return False
    if not data.get("ak_rank", {}).get("pass", False):
        return False
    dim = data.get("alt_dimension", {})
    if dim.get("asserted") and 2 * dim["computed"] != dim["expected_doubled"]:
        return False
    if data["sign_reference"]["printed_pair_braid_violation"] < 0.1:
        return False
    return True


def _verify_text(data: dict, tol: float) -> str:
    lines = ["verification report"]
    for section in sorted(data):
        val = data[section]
        if not isinstance(val, dict):
            lines.append(f"  {section}: {val}")
            continue
        lines.append(f"  [{section}]")
        for key in sorted(val):
            entry = val[key]
            if isinstance(entry, dict):
                for fam in sorted(entry):
                    mark = ""
                    if isinstance(entry[fam], float):
                        mark = "  PASS" if entry[fam] < tol else "  FAIL"
                    lines.append(f"    {key}.{fam} = {entry[fam]:.3e}{mark}"
                                 if isinstance(entry[fam], float)
                                 else f"    {key}.{fam} = {entry[fam]}")
            elif isinstance(entry, float):
                mark = "  PASS" if entry < tol else "  FAIL"
                if key.endswith("braid_violation"):
                    mark = "  (expected large)"
                lines.append(f"    {key} = {entry:.3e}{mark}")
            else:
                lines.append(f"    {key} = {entry}")
    lines.append(
        "note: the sign-reference section compares the 2x2 block at xi=1 "
        "with the flipped-sign variant of its second generator; the derived "
        "matrices satisfy the quadratic and braid relations exactly, the "
        "flipped variant breaks the braid relation.")
    return "\n".join(lines)


def cmd_verify(args) -> int:
    _guard(args)
    params = _params_from(args)
    if not params.is_symmetric:
        raise CLIError("verify includes the hash suites and needs a "
                       "symmetric multicharge")
    data = run_verification(params)
    ok = _verification_passes(data, params.tol)
    if args.format == "json":
        _emit(args, _json_dump({"verify": data, "pass": ok}))
    else:
        text = _verify_text(data, params.tol)
        _emit(args, text + f"\nOVERALL: {'PASS' if ok else 'FAIL'}")
    if not data["p_hecke"]["nonzero"]:
        return 2
    return 0 if ok else 3


def cmd_classify(args) -> int:
    _guard(args)
    params = _params_from(args, n_min=2)
    if not params.is_symmetric:
        raise CLIError("classification needs a symmetric multicharge")
    seminormal.require_semisimple(params)
    cs = seminormal.CoefficientSystem(params, "alternating")
    rep = hecke.RegularRep(params, cs)
    inv = alt.HashInvolution(rep)
    cl = alt.classify(rep, inv)
    if args.format == "json":
        _emit(args, _json_dump(cl.to_json()))
    else:
        lines = [f"irreducible modules of the fixed subalgebra, "
                 f"{params.describe()}"]
        for ir in cl.irreps:
            extra = ""
            if "t1t2_trace" in ir.details:
                extra = f"  T1T2 acts with trace {ir.details['t1t2_trace']:.6g}"
            lines.append(f"  {ir.label}  dim={ir.dim} "
                         f"commutant={ir.commutant_dim}{extra}")
        lines.append(f"sum of squared dimensions: {cl.sum_dim_sq} "
                     f"(2x = {2 * cl.sum_dim_sq}, algebra dim = "
                     f"{cl.expected_doubled})")
        for name, chk in cl.checks.items():
            lines.append(f"  check {name}: "
                         f"{'PASS' if chk.get('pass', True) else 'FAIL'}")
        _emit(args, "\n".join(lines))
    return 0


def cmd_report(args) -> int:
    from .reporting import render_report

    _guard(args)
    params = _params_from(args, n_min=2)
    if not params.is_symmetric:
        raise CLIError("report needs a symmetric multicharge")
    outdir = Path(args.out) if args.out else Path("althecke-report")
    data = run_verification(params)
    cl = None
    exit_code = 0
    if data["p_hecke"]["nonzero"]:
        cs = seminormal.CoefficientSystem(params, "alternating")
        rep = hecke.RegularRep(params, cs)
        inv = alt.HashInvolution(rep)
        cl = alt.classify(rep, inv)
        if not _verification_passes(data, params.tol):
            exit_code = 3
    else:
        exit_code = 2
    written = render_report(outdir, data, cl, params.tol)
    print("\n".join(str(p) for p in written))
    print("note: sign-reference check included; the flipped-sign variant of "
          "the 2x2 example block violates the braid relation, ours does not.")
    return exit_code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        handler = {
            "tableaux": cmd_tableaux,
            "specht": cmd_specht,
            "verify": cmd_verify,
            "classify": cmd_classify,
            "report": cmd_report,
        }[args.command]
        return handler(args)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NonSemisimpleError as exc:
        print(f"not semisimple: {exc}", file=sys.stderr)
        return 2
    except (alt.DimensionMismatchError, alt.ClassificationError,
            seminormal.PathInconsistencyError,
            hecke.RankDeficiencyError) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 3


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
