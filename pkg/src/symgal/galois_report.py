"""Galois-group constraints from symmetries, and the analysis report.

The Galois group is never computed.  A found symmetry restricts it:

* k independent rational solutions: the group fixes k vectors;
* an eigenring element with at least two eigenvalues: block-diagonal form
  with the algebraic multiplicities as block sizes (an equivalence);
* one with n distinct eigenvalues: the diagonal torus (again an
  equivalence), an abelian n-dimensional symmetry algebra, Liouvillian
  solvability;
* a non-derogatory one: triangular form, Liouvillian solvability.

``stabilizer_check`` tests whether a constant matrix fixes a constant
polynomial field Y0 under the linear action P_i(s y) = sum_j s_ij P_j(y).
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvariantViolation, NonConstantCoefficients, SingularMatrix
from .exactcore import Matrix, RatFunc, det
from .ratsolve import rational_solution_basis
from .symclass import best_classification, eigenring, pick_evaluation_point, symmetry_basis
from .vfields import MvPoly

RIGOR = ("proved_from_witness", "heuristic_witness_search", "bounds_incomplete")
CONSTRAINT_KINDS = ("fixes_vectors", "block_diagonal", "diagonal_torus", "triangularizable",
                    "liouvillian_solvable", "abelian_symmetry_algebra")

DALEMBERT_NOTE = ("order reducible by {s} via gauge transformation "
                  "(d'Alembert reduction with the known rational solutions)")


@dataclass
class GaloisConstraint:
    kind: str
    params: dict = field(default_factory=dict)
    witness: str = ""
    rigor: str = "proved_from_witness"
    biconditional: bool = False
    note: str = None

    def to_dict(self):
        return {"kind": self.kind, "params": dict(self.params), "witness": self.witness,
                "rigor": self.rigor, "biconditional": self.biconditional, "note": self.note}

    @classmethod
    def from_dict(cls, d):
        return cls(d["kind"], dict(d.get("params", {})), d["witness"], d["rigor"],
                   bool(d.get("biconditional", False)), d.get("note"))

    def label(self):
        if not self.params:
            return self.kind
        args = ", ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.kind}({args})"


# -- stabilizer -------------------------------------------------------------

def _as_constant(e):
    if isinstance(e, RatFunc):
        if not e.is_constant():
            raise NonConstantCoefficients(f"matrix entry {e} depends on x")
        return e.constant_value()
    return Fraction(e)


def stabilizer_check(sigma, Y0):
    """True iff P_i(sigma y) = sum_j sigma_ij P_j(y) for every component i."""
    n = Y0.n
    if sigma.rows != n or sigma.cols != n:
        raise SingularMatrix(f"sigma is {sigma.rows}x{sigma.cols}, field lives on C^{n}")
    rows = [[_as_constant(e) for e in sigma.row(i)] for i in range(n)]
    if det(Matrix(n, n, [v for r in rows for v in r])) == 0:
        raise SingularMatrix("sigma is not invertible")
    if not Y0.has_constant_coefficients():
        raise NonConstantCoefficients("the field has x-dependent coefficients")
    P = Y0.components
    for i in range(n):
        lhs = P[i].substitute_linear(rows)
        rhs = MvPoly.zero(n)
        for j in range(n):
            if rows[i][j] and P[j]:
                rhs = rhs + P[j].scale(rows[i][j])
        if lhs != rhs:
            return False
    return True


def _sigma_names(n):
    return [f"s{i + 1}{j + 1}" if n < 10 else f"s{i + 1}_{j + 1}" for i in range(n) for j in range(n)]


def stabilizer_equations(Y0):
    """Polynomial equations (each meaning ``= 0``) in the entries s_ij of sigma.

    They are the y-coefficients of P_i(sigma y) - sum_j s_ij P_j(y); sigma
    stabilizes Y0 exactly when all of them vanish.
    """
    if not Y0.has_constant_coefficients():
        raise NonConstantCoefficients("the field has x-dependent coefficients")
    n = Y0.n
    N = n + n * n

    def lift(p):
        return MvPoly(N, {e + (0,) * (n * n): c for e, c in p.terms.items()})

    def s(i, j):
        return MvPoly.var(N, n + i * n + j)

    forms = []
    for k in range(n):
        f = MvPoly.zero(N)
        for l in range(n):
            f = f + s(k, l) * MvPoly.var(N, l)
        forms.append(f)
    names = _sigma_names(n)
    out = []
    for i, Pi in enumerate(Y0.components):
        lhs = MvPoly.zero(N)
        for e, c in Pi.terms.items():
            t = MvPoly.constant(N, c)
            for k, a in enumerate(e):
                if a:
                    t = t * forms[k] ** a
            lhs = lhs + t
        rhs = MvPoly.zero(N)
        for j, Pj in enumerate(Y0.components):
            if Pj:
                rhs = rhs + s(i, j) * lift(Pj)
        diff = lhs - rhs
        groups = {}
        for e, c in diff.terms.items():
            groups.setdefault(e[:n], {})[e[n:]] = c
        for ye in sorted(groups, reverse=True):
            eq = MvPoly(n * n, groups[ye])
            if _leading(eq) < 0:
                eq = -eq
            text = eq.to_text(names)
            if text not in out:
                out.append(text)
    return out


def _leading(p):
    # first term in to_text order
    e = max(p.terms, key=lambda e: (sum(e), e))
    return p.terms[e].constant_value()


def sample_sigmas(n):
    """Fixed test matrices recorded in the report: I, 2I, unipotents, a diagonal."""
    def mat(f):
        return [[f(i, j) for j in range(n)] for i in range(n)]

    samples = [mat(lambda i, j: int(i == j)), mat(lambda i, j: 2 * int(i == j))]
    if n >= 2:
        samples.append(mat(lambda i, j: int(i == j or (i == 0 and j == n - 1))))
        samples.append(mat(lambda i, j: int(i == j or (i == n - 1 and j == 0))))
        samples.append(mat(lambda i, j: 2 ** (2 ** (n - 1 - i)) if i == j else 0))
    return samples


# -- constraints ------------------------------------------------------------

def constraints_from_degree0(basis, rigor="proved_from_witness"):
    s = basis.dimension
    if s <= 0:
        return []
    return [GaloisConstraint("fixes_vectors", {"count": s}, "degrees.0", rigor, False,
                             _dalembert_note(s, basis.index.n if basis.index else None))]


def _dalembert_note(s, n):
    note = DALEMBERT_NOTE.format(s=s)
    if n is not None and s >= n:
        note += "; full reduction, every solution is rational"
    return note


def constraints_from_eigenring(best, rigor="heuristic_witness_search"):
    cls = best.classification
    out = []
    if cls.kind in ("trivial", "unclassified"):
        return out
    n = cls.n
    w = "eigenring.best"
    if cls.is_decomposer and not cls.is_complete_decomposer:
        note = None
        if any(f.degree > 1 for f, _ in cls.squarefree):
            note = "irrational eigenvalues: block conjugation is over the algebraic closure"
        out.append(GaloisConstraint("block_diagonal", {"sizes": list(cls.multiplicities)}, w,
                                    rigor, True, note))
    if cls.is_complete_decomposer:
        out.append(GaloisConstraint("diagonal_torus", {}, w, rigor, True))
        out.append(GaloisConstraint("abelian_symmetry_algebra", {"dim": n}, w, rigor))
    if cls.is_solver and not cls.is_complete_decomposer:
        out.append(GaloisConstraint("triangularizable", {}, w, rigor))
    if cls.is_solver or cls.is_complete_decomposer:
        out.append(GaloisConstraint("liouvillian_solvable", {}, w, rigor))
    return out


# -- report -----------------------------------------------------------------

@dataclass
class GaloisReport:
    system: dict
    evaluation_point: str
    max_degree: int
    degrees: dict
    eigenring: dict
    constraints: list
    notes: list
    options: dict = field(default_factory=dict)

    def summary(self):
        out = {f"degree_{m}": {"dimension": d["dimension"], "complete": d["complete"]}
               for m, d in self.degrees.items()}
        out["eigenring_dimension"] = self.eigenring["dimension"]
        out["constraint_kinds"] = [c.kind for c in self.constraints]
        return out

    def to_dict(self):
        return {
            "system": self.system,
            "evaluation_point": self.evaluation_point,
            "max_degree": self.max_degree,
            "degrees": self.degrees,
            "eigenring": self.eigenring,
            "constraints": [c.to_dict() for c in self.constraints],
            "notes": list(self.notes),
            "options": self.options,
            "summary": self.summary(),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(d["system"], d["evaluation_point"], d["max_degree"], d["degrees"],
                   d["eigenring"], [GaloisConstraint.from_dict(c) for c in d["constraints"]],
                   list(d["notes"]), d.get("options", {}))


def _matrix_rows_text(M, var="x"):
    return [[e.to_text(var) if isinstance(e, RatFunc) else str(e) for e in M.row(i)]
            for i in range(M.rows)]


def _field_text(Y, var):
    return [c.to_text(var=var) for c in Y.components]


def _classification_dict(cls):
    return {
        "kind": cls.kind,
        "distinct_eigenvalues": cls.distinct,
        "multiplicities": list(cls.multiplicities),
        "minpoly_degree": cls.minpoly_degree,
        "squarefree": [[f.to_text("lambda"), m] for f, m in cls.squarefree],
        "decomposer": cls.is_decomposer,
        "complete_decomposer": cls.is_complete_decomposer,
        "solver": cls.is_solver,
    }


def _element_dict(e, var):
    return {"matrix": _matrix_rows_text(e.B, var), "charpoly": e.charpoly.to_text("lambda"),
            "classification": _classification_dict(e.classification)}


def _degree_dict(sb, x0, var):
    sol = sb.solutions
    fields_x0 = [Y.evaluate_x(x0) for Y in sb.fields]
    stab = []
    if sb.degree >= 1:
        n = sb.index.n
        samples = sample_sigmas(n)
        for k, Y0 in enumerate(fields_x0):
            checks = []
            for s in samples:
                sigma = Matrix(n, n, [Fraction(v) for r in s for v in r])
                checks.append({"sigma": [[str(v) for v in r] for r in s],
                               "fixed": stabilizer_check(sigma, Y0)})
            stab.append({"field": k, "equations": stabilizer_equations(Y0), "samples": checks})
    return {
        "dimension": sb.dimension,
        "complete": sb.complete,
        "lv_size": sb.index.n * sb.index.N,
        "fields": [_field_text(Y, var) for Y in sb.fields],
        "fields_at_x0": [_field_text(Y, var) for Y in fields_x0],
        "stabilizer": stab,
        "bounds": {
            "denominator": sol.denominator.to_text(var),
            "numerator_degree": sol.degree_bound,
            "poles_rigorous": sol.singularities.rigorous,
            "infinity_rigorous": sol.infinity.rigorous,
        },
    }


def build_report(A, max_degree=2, pole_bound=None, inf_bound=None, budget=3):
    """Symmetries of degree 0..max_degree, eigenring witness and Galois constraints."""
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    var = getattr(A, "var", "x")
    x0 = pick_evaluation_point(A)
    bases = [symmetry_basis(A, m, pole_bound, inf_bound) for m in range(max_degree + 1)]
    sols = rational_solution_basis(A, pole_bound, inf_bound)
    if sols.dimension != bases[0].dimension:
        raise InvariantViolation("degree-0 symmetries and rational solutions disagree")
    E = eigenring(A, pole_bound, inf_bound)
    best = best_classification(E, budget, x0=x0, A=A)

    constraints = constraints_from_degree0(
        bases[0], "proved_from_witness" if bases[0].complete else "bounds_incomplete")
    constraints += constraints_from_eigenring(
        best, "heuristic_witness_search" if E.complete else "bounds_incomplete")

    notes = []
    if bases[0].dimension:
        notes.append(_dalembert_note(bases[0].dimension, bases[0].index.n))
    incomplete = [str(b.degree) for b in bases if not b.complete]
    if incomplete:
        notes.append("non-rigorous solution bounds at degrees " + ", ".join(incomplete)
                     + "; dimensions are lower bounds")
    if not E.complete:
        notes.append("eigenring computed under non-rigorous bounds; it may be larger")
    if best.classification.kind != "trivial":
        notes.append("eigenring witness found by bounded search over small integer combinations")

    degrees = {str(b.degree): _degree_dict(b, x0, var) for b in bases}
    ering = {
        "dimension": len(E),
        "complete": E.complete,
        "basis": [_element_dict(e, var) for e in E],
        "best": dict(_element_dict(best, var), combination=list(best.combination),
                     heuristic=best.heuristic),
    }
    system = A.to_json_obj() if hasattr(A, "to_json_obj") else {
        "n": A.rows, "var": var, "A": _matrix_rows_text(A, var)}
    options = {"pole_bound": pole_bound, "inf_bound": inf_bound, "budget": budget}
    return GaloisReport(system, str(x0), max_degree, degrees, ering, constraints, notes, options)


__all__ = [
    "GaloisConstraint", "GaloisReport", "stabilizer_check", "stabilizer_equations",
    "constraints_from_degree0", "constraints_from_eigenring", "build_report", "sample_sigmas",
]
