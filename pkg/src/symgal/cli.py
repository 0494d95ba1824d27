"""Command-line front end.

Exit codes: 0 success, 2 input error (syntax, dimensions, bad flags),
3 internal invariant violation, 4 integer growth beyond SYMGAL_MAX_COEFF_BITS.
"""

import argparse
import os
import sys

from . import __version__
from .errors import CoefficientOverflow, InvariantViolation, SymgalError
from .expr_io import (dumps, matrix_to_text_rows, parse_matrix_text, parse_system, parse_vfield,
                      serialize_report)
from .galois_report import build_report, stabilizer_check, stabilizer_equations
from .lvhier import build_lv_matrix
from .ratsolve import rational_solution_basis
from .symclass import best_classification, eigenring, symmetry_basis
from .vfields import bracket_with_X, maclaurin_truncate

EXIT_OK, EXIT_INPUT, EXIT_INVARIANT, EXIT_OVERFLOW = 0, 2, 3, 4


class InputError(SymgalError):
    pass


def _nonneg(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def _read_source(arg):
    """File contents, or the argument itself when it is inline JSON."""
    if os.path.exists(arg):
        try:
            with open(arg, encoding="utf-8") as fh:
                return fh.read()
        except (OSError, UnicodeDecodeError) as exc:
            raise InputError(f"cannot read {arg}: {exc}") from None
    if arg.lstrip().startswith(("{", "[")):
        return arg
    raise InputError(f"no such file: {arg}")


def _monomial_text(exp):
    parts = [f"y{i + 1}" if k == 1 else f"y{i + 1}^{k}" for i, k in enumerate(exp) if k]
    return "*".join(parts) or "1"


def _field_text(Y, var="x"):
    return [c.to_text(var=var) for c in Y.components]


def _rows(M, var="x"):
    return matrix_to_text_rows(M, var)


# -- commands ---------------------------------------------------------------

def cmd_analyze(cfg):
    A = parse_system(_read_source(cfg.system))
    report = build_report(A, cfg.max_degree, cfg.pole_bound, cfg.inf_bound, cfg.budget)
    if cfg.format == "text":
        return _report_text(report)
    return serialize_report(report)


def cmd_lvmatrix(cfg):
    A = parse_system(_read_source(cfg.system))
    lv = build_lv_matrix(A, cfg.degree)
    return {"degree": cfg.degree, "n": A.n, "N": lv.index.N, "size": lv.size,
            "monomials": [_monomial_text(e) for e in lv.index.exponents],
            "matrix": _rows(lv.A_m, A.var)}


def cmd_ratsols(cfg):
    A = parse_system(_read_source(cfg.system))
    sol = rational_solution_basis(A, cfg.pole_bound, cfg.inf_bound)
    var = A.var
    sing = []
    for f in sol.singularities:
        sing.append({
            "factor": f.p.to_text(var), "pole_order": f.pole_order,
            "exponent_bound": f.exponent_bound, "rigorous": f.rigorous,
            "residue": None if f.residue_matrix is None else
            [[e.to_text(var) for e in f.residue_matrix.row(i)] for i in range(f.residue_matrix.rows)],
        })
    return {"dimension": sol.dimension, "complete": sol.complete,
            "denominator": sol.denominator.to_text(var), "numerator_degree_bound": sol.degree_bound,
            "singularities": sing,
            "infinity": {"bound": sol.infinity.bound, "rigorous": sol.infinity.rigorous},
            "solutions": [[e.to_text(var) for e in v] for v in sol.vectors]}


def _element_obj(e, var):
    c = e.classification
    return {"matrix": _rows(e.B, var), "charpoly": e.charpoly.to_text("lambda"),
            "classification": c.kind, "distinct_eigenvalues": c.distinct,
            "multiplicities": list(c.multiplicities), "minpoly_degree": c.minpoly_degree}


def cmd_eigenring(cfg):
    A = parse_system(_read_source(cfg.system))
    E = eigenring(A, cfg.pole_bound, cfg.inf_bound)
    best = best_classification(E, cfg.budget, A=A)
    return {"dimension": len(E), "complete": E.complete,
            "basis": [_element_obj(e, A.var) for e in E],
            "best": dict(_element_obj(best, A.var), combination=list(best.combination),
                         heuristic=best.heuristic)}


def cmd_symmetries(cfg):
    A = parse_system(_read_source(cfg.system))
    sb = symmetry_basis(A, cfg.degree, cfg.pole_bound, cfg.inf_bound)
    return {"degree": sb.degree, "dimension": sb.dimension, "complete": sb.complete,
            "fields": [_field_text(Y, A.var) for Y in sb.fields]}


def cmd_check_symmetry(cfg):
    A = parse_system(_read_source(cfg.system))
    vf = parse_vfield(_read_source(cfg.field), allow_denominators=cfg.maclaurin is not None)
    if vf.n != A.n:
        raise InputError(f"field on C^{vf.n} for a system of size {A.n}")
    if vf.denominator is None:
        br = bracket_with_X(A, vf.field)
        return {"is_symmetry": br.is_zero(), "bracket": _field_text(br, A.var)}
    parts = maclaurin_truncate(vf.field, vf.denominator, cfg.maclaurin)
    comps = []
    for Y in parts:
        br = bracket_with_X(A, Y)
        comps.append({"degree": Y.degree, "field": _field_text(Y, A.var),
                      "is_symmetry": br.is_zero()})
    return {"is_symmetry": all(c["is_symmetry"] for c in comps), "maclaurin_order": cfg.maclaurin,
            "components": comps}


def cmd_stabilizer(cfg):
    vf = parse_vfield(_read_source(cfg.field))
    sigma = parse_matrix_text(_read_source(cfg.matrix))
    Y0 = vf.field if cfg.at is None else vf.field.evaluate_x(_parse_point(cfg.at))
    return {"stabilizes": stabilizer_check(sigma, Y0), "equations": stabilizer_equations(Y0)}


def _parse_point(text):
    from fractions import Fraction
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad evaluation point {text!r}") from None


# -- text rendering ------------------------------------------------------------

def _report_text(report):
    lines = [f"system: n = {report.system['n']}"]
    for row in report.system["A"]:
        lines.append("  [" + ", ".join(row) + "]")
    lines.append(f"evaluation point: {report.evaluation_point}")
    for m, d in report.degrees.items():
        flag = "" if d["complete"] else " (bounds not rigorous)"
        lines.append(f"degree {m}: dimension {d['dimension']}{flag}")
        for f in d["fields"]:
            lines.append("  " + " | ".join(f))
    e = report.eigenring
    lines.append(f"eigenring: dimension {e['dimension']}, best witness "
                 f"{e['best']['classification']['kind']}")
    lines.append("constraints:")
    for c in report.constraints:
        lines.append(f"  {c.label()} [{c.rigor}]")
    if not report.constraints:
        lines.append("  none")
    for n in report.notes:
        lines.append(f"note: {n}")
    return "\n".join(lines) + "\n"


def _scalar(v):
    if isinstance(v, bool) or v is None:
        return {True: "true", False: "false", None: "null"}[v]
    return str(v)


def _plain_text(obj, indent=""):
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{indent}{k}:")
                lines.extend(_plain_text(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {_scalar(v) if not isinstance(v, (dict, list)) else v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.append(f"{indent}-")
                lines.extend(_plain_text(v, indent + "  "))
            else:
                lines.append(f"{indent}- {_scalar(v)}")
    else:
        lines.append(f"{indent}{_scalar(obj)}")
    return lines


# -- parser -----------------------------------------------------------------

COMMANDS = {
    "analyze": cmd_analyze, "lvmatrix": cmd_lvmatrix, "ratsols": cmd_ratsols,
    "eigenring": cmd_eigenring, "symmetries": cmd_symmetries,
    "check-symmetry": cmd_check_symmetry, "stabilizer": cmd_stabilizer,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pole-bound", type=_nonneg, default=None,
                        help="exponent bound at poles of order >= 2 (default: order*n + 4)")
    common.add_argument("--inf-bound", type=_nonneg, default=None,
                        help="extra numerator degree at irregular infinity (default: 2n + 8)")
    common.add_argument("--budget", type=_nonneg, default=3,
                        help="coefficient range for the eigenring witness search")
    common.add_argument("-o", "--output", default=None, help="write to this file instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="json")

    p = argparse.ArgumentParser(prog="symgal", description="Polynomial symmetries and Galois "
                                "constraints of linear systems y' = A(x) y.")
    p.add_argument("--version", action="version", version=f"symgal {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="full report")
    a.add_argument("system")
    a.add_argument("--max-degree", type=_nonneg, default=2)

    s = sub.add_parser("lvmatrix", parents=[common], help="Lie-Vessiot matrix of degree m")
    s.add_argument("system")
    s.add_argument("--degree", type=_nonneg, required=True)

    s = sub.add_parser("ratsols", parents=[common], help="rational solutions")
    s.add_argument("system")

    s = sub.add_parser("eigenring", parents=[common], help="eigenring and best witness")
    s.add_argument("system")

    s = sub.add_parser("symmetries", parents=[common], help="symmetries of one degree")
    s.add_argument("system")
    s.add_argument("--degree", type=_nonneg, required=True)

    s = sub.add_parser("check-symmetry", parents=[common], help="test a vector field")
    s.add_argument("system")
    s.add_argument("--field", required=True)
    s.add_argument("--maclaurin", type=_nonneg, default=None, metavar="ORDER",
                   help="allow y-denominators and test the Maclaurin components up to ORDER")

    s = sub.add_parser("stabilizer", parents=[common], help="does sigma fix a constant field")
    s.add_argument("--field", required=True)
    s.add_argument("--matrix", required=True)
    s.add_argument("--at", default=None, help="evaluate x-dependent coefficients at this point")
    return p


def run(cfg):
    out = COMMANDS[cfg.command](cfg)
    if isinstance(out, str):
        return out
    if cfg.format == "text":
        return "\n".join(_plain_text(out)) + "\n"
    return dumps(out)


def main(argv=None):
    parser = build_parser()
    try:
        cfg = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        text = run(cfg)
    except CoefficientOverflow as exc:
        print(f"symgal: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except InvariantViolation as exc:
        print(f"symgal: invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except SymgalError as exc:
        print(f"symgal: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
