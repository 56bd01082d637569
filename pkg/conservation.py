"""
Conservation Module

Conserved vectors of the Noether symmetries, their verification, and the
monomial-level comparison with transcribed reference vectors.

For a first-order Lagrangian the conserved vector of an accepted symmetry is
    C^i = xi^i L + Q dL/du_i - phi^i,   Q = eta - xi^j u_j
and satisfies the identity
    D_x C^1 + D_y C^2 + D_t C^3 = Q (Delta u + f(u))
exactly (modulo the beta constraint for W_beta). Derived vectors are
authoritative; transcribed vectors are fixtures that are compared against them.
"""

import logging
from enum import Enum
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import sympy

import config
import expr_core
from expr_core import Expr
from jet_calculus import PdeIdeal, check_beta_constraint, divergence, pde_expression, reduce_mod_pde
from noether_engine import Lagrangian, NoetherCertificate, Triple, is_noether
from nonlinearity import CaseError, NonlinearityCase
from symmetry_engine import PointVectorField, find_generator, w_field
from utils import run_concurrently

logger = logging.getLogger(__name__)


class ConservationError(RuntimeError):
    """A derived conserved vector violates the conservation identity."""


class Provenance(str, Enum):
    DERIVED = "derived"
    PAPER = "paper"


class ConservedVector(NamedTuple):
    symmetry: str
    case: NonlinearityCase
    components: Triple
    provenance: Provenance
    characteristic: Expr
    notes: Tuple[str, ...] = ()

    def to_model(self):
        from reference.schemas import ConservedVectorModel

        return ConservedVectorModel(
            symmetry=self.symmetry,
            case=self.case.selector,
            provenance=self.provenance.value,
            components=[expr_core.to_json_model(c) for c in self.components],
            characteristic=expr_core.to_json_model(self.characteristic),
            notes=list(self.notes),
        )


class ConservationCheck(NamedTuple):
    ok: bool
    residual: Expr


def _beta_ideal(case: NonlinearityCase) -> Optional[PdeIdeal]:
    return PdeIdeal.beta_only(case) if case.beta_k is not None else None


def conservation_residual(components: Sequence[Expr], characteristic: Expr, case: NonlinearityCase) -> Expr:
    """divergence(C) - Q (Delta u + f(u)), reduced by the beta constraint only."""
    residual = sympy.expand(divergence(components) - characteristic * pde_expression(case))
    residual = case.specialize(residual)
    ideal = _beta_ideal(case)
    return reduce_mod_pde(residual, ideal) if ideal is not None else residual


def conserved_vector(certificate: NoetherCertificate, field: Optional[PointVectorField] = None) -> ConservedVector:
    """
    Build the conserved vector of an accepted symmetry.

    Args:
        certificate (NoetherCertificate): Accepted certificate with a concrete phi
        field (Optional[PointVectorField]): The generator; looked up in the
            case's catalog by name when omitted

    Returns:
        ConservedVector: Derived vector, identity checked

    Raises:
        CaseError: The certificate is rejected or its potential is pending
        ConservationError: The conservation identity fails (an engine bug)
    """
    if not certificate.accepted or certificate.phi is None:
        raise CaseError(f"{certificate.symmetry} is not a Noether symmetry with a known potential "
                        f"in case {certificate.case.selector} ({certificate.verdict.value})")
    case = certificate.case
    field = field or find_generator(case, certificate.symmetry)
    lagrangian = Lagrangian.for_case(case)
    q = field.characteristic()
    components = tuple(
        case.specialize(sympy.expand(xi * lagrangian.L + q * p - phi))
        for xi, p, phi in zip(field.xi, lagrangian.momenta(), certificate.phi)
    )
    residual = conservation_residual(components, q, case)
    if residual != 0:
        raise ConservationError(
            f"conservation identity fails for {field.name} in case {case.selector}: "
            f"residual {expr_core.to_text(residual)}"
        )
    return ConservedVector(field.name, case, components, Provenance.DERIVED, q)


def derive(case: NonlinearityCase, symmetry: str) -> ConservedVector:
    """Certify a catalog generator and build its conserved vector."""
    field = find_generator(case, symmetry)
    return conserved_vector(is_noether(field, case), field)


def derive_with_beta(case: NonlinearityCase, beta0: Expr) -> ConservedVector:
    """
    Conserved vector of W_beta for a concrete beta0(x, y, t).

    Raises:
        CaseError: The case has no W_beta, or beta0 violates its constraint
    """
    residual = check_beta_constraint(beta0, case)
    if residual != 0:
        raise CaseError(f"beta = {expr_core.to_text(beta0)} violates the constraint of case "
                        f"{case.selector}: residual {expr_core.to_text(residual)}")
    field = w_field(beta0)
    return conserved_vector(is_noether(field, case), field)


def derive_all(case: NonlinearityCase) -> List[ConservedVector]:
    """Conserved vectors of every accepted generator of a case (catalog order)."""
    from noether_engine import classify_case

    certificates = [c for c in classify_case(case).values() if c.accepted and c.phi is not None]
    return run_concurrently(conserved_vector, certificates, config.MAX_WORKERS)


def verify_conservation(vector: ConservedVector, case: Optional[NonlinearityCase] = None) -> ConservationCheck:
    """
    Check that a vector is conserved on solutions.

    Computes divergence(C) - Q (Delta u + f(u)) and reduces it modulo the
    equation (and the beta constraint); ok iff the result is 0.

    Example:
        >>> verify_conservation(ConservedVector('-', ZERO, (u, 0, 0), Provenance.PAPER, 0)).residual
        u_x
    """
    case = case or vector.case
    residual = sympy.expand(divergence(vector.components) - vector.characteristic * pde_expression(case))
    residual = reduce_mod_pde(case.specialize(residual), PdeIdeal.for_case(case))
    return ConservationCheck(residual == 0, residual)


def paper_vectors(case: NonlinearityCase) -> List[ConservedVector]:
    """
    Transcribed reference vectors of a case (arbitrary, zero or linear).

    Raises:
        CaseError: No transcriptions exist for the case
    """
    from reference import FixtureManager

    fixtures = FixtureManager()
    vectors = []
    for name, components in fixtures.paper_vectors(case).items():
        field = find_generator(case, name)
        vectors.append(ConservedVector(name, case, components, Provenance.PAPER, field.characteristic(),
                                       tuple(fixtures.transcription_notes(name))))
    return vectors


def paper_vector(case: NonlinearityCase, symmetry: str) -> ConservedVector:
    name = find_generator(case, symmetry).name
    for vector in paper_vectors(case):
        if vector.symmetry == name:
            return vector
    raise CaseError(f"no transcribed vector for {name} in case {case.selector}")


# =============================================================================
# COMPARISON
# =============================================================================

class ComponentDiff(NamedTuple):
    component: int
    only_paper: Dict[Expr, sympy.Rational]
    only_derived: Dict[Expr, sympy.Rational]
    mismatches: Dict[Expr, Tuple[sympy.Rational, sympy.Rational]]

    def is_empty(self) -> bool:
        return not (self.only_paper or self.only_derived or self.mismatches)


class DiscrepancyReport(NamedTuple):
    symmetry: str
    case: NonlinearityCase
    components: Tuple[ComponentDiff, ...]

    def is_empty(self) -> bool:
        return all(c.is_empty() for c in self.components)

    def items(self) -> List[Tuple[int, Expr, Optional[sympy.Rational], Optional[sympy.Rational]]]:
        """Flat (component, monomial, paper coefficient, derived coefficient) rows; None = absent."""
        rows = []
        for diff in self.components:
            for monomial, value in diff.only_paper.items():
                rows.append((diff.component, monomial, value, None))
            for monomial, value in diff.only_derived.items():
                rows.append((diff.component, monomial, None, value))
            for monomial, (paper, derived) in diff.mismatches.items():
                rows.append((diff.component, monomial, paper, derived))
        rows.sort(key=lambda row: (row[0], expr_core.monomial_key(row[1])))
        return rows


def compare(paper: ConservedVector, derived: ConservedVector) -> DiscrepancyReport:
    """
    Monomial-level difference of two vectors of the same symmetry and case.

    Returns:
        DiscrepancyReport: Empty iff every component is identical
    """
    diffs = []
    for index, (left, right) in enumerate(zip(paper.components, derived.components), 1):
        left_terms, right_terms = expr_core.terms(left), expr_core.terms(right)
        diffs.append(ComponentDiff(
            component=index,
            only_paper={m: c for m, c in left_terms.items() if m not in right_terms},
            only_derived={m: c for m, c in right_terms.items() if m not in left_terms},
            mismatches={m: (c, right_terms[m]) for m, c in left_terms.items()
                        if m in right_terms and right_terms[m] != c},
        ))
    return DiscrepancyReport(derived.symmetry, derived.case, tuple(diffs))


def _coefficient_text(value: Optional[sympy.Rational]) -> str:
    return '-' if value is None else (str(value.p) if value.q == 1 else f"{value.p}/{value.q}")


def format_vector(vector: ConservedVector, fmt: str = 'text') -> str:
    if fmt == 'json':
        return vector.to_model().model_dump_json(indent=2)
    printer = expr_core.to_latex if fmt == 'latex' else expr_core.to_text
    lines = [f"{vector.symmetry} [{vector.case.selector}] ({vector.provenance.value})",
             f"  Q = {printer(vector.characteristic)}"]
    lines.extend(f"  C{i} = {printer(c)}" for i, c in enumerate(vector.components, 1))
    lines.extend(f"  note: {n}" for n in vector.notes)
    return '\n'.join(lines)


def report_model(report: DiscrepancyReport, covered: Optional[bool] = None):
    from reference.schemas import DiscrepancyModel, DiscrepancyReportModel

    return DiscrepancyReportModel(
        symmetry=report.symmetry,
        case=report.case.selector,
        empty=report.is_empty(),
        ledger_covered=covered,
        items=[DiscrepancyModel(component=c, monomial=expr_core.monomial_text(m),
                                paper=_coefficient_text(p), derived=_coefficient_text(d))
               for c, m, p, d in report.items()],
    )


def format_report(report: DiscrepancyReport, fmt: str = 'text', covered: Optional[bool] = None) -> str:
    if fmt == 'json':
        return report_model(report, covered).model_dump_json(indent=2)
    head = f"{report.symmetry} [{report.case.selector}]: "
    if report.is_empty():
        return head + "paper and derived vectors agree"
    lines = [head + f"{len(report.items())} differing monomials"]
    if fmt == 'latex':
        lines = ["\\begin{tabular}{|c|c|c|c|}\\hline",
                 "component & monomial & paper & derived\\\\\\hline"]
        for c, m, p, d in report.items():
            lines.append(f"{c} & ${expr_core.to_latex(m)}$ & {_coefficient_text(p)} & {_coefficient_text(d)}\\\\\\hline")
        lines.append("\\end{tabular}")
    else:
        for c, m, p, d in report.items():
            lines.append(f"  C{c}  {expr_core.monomial_text(m)}: paper {_coefficient_text(p)}, "
                         f"derived {_coefficient_text(d)}")
    if covered is not None:
        lines.append("covered by the discrepancy ledger" if covered else "NOT covered by the discrepancy ledger")
    return '\n'.join(lines)


def ledger_covered(report: DiscrepancyReport) -> bool:
    """True iff every differing monomial of the report is documented in the discrepancy ledger."""
    from reference import FixtureManager

    rows = [(i.component, i.monomial, i.paper, i.derived) for i in report_model(report).items]
    covered = FixtureManager().covers(report.case, report.symmetry, rows)
    if not covered:
        logger.warning(f"{report.symmetry} [{report.case.selector}]: discrepancies not covered by the ledger")
    return covered
