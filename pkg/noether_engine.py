"""
Noether Engine Module

Decides which Lie point symmetries of the Kohn-Laplace equation are Noether
symmetries and certifies each decision.

For a generator S with base coefficients xi, the defect is
    S^(1) L + L (D_x xi^1 + D_y xi^2 + D_t xi^3)
and S is a Noether symmetry iff the defect is a total divergence D_i phi^i.
The decision uses the kernel of the Euler operator; accepted symmetries get an
explicit potential phi from an exact linear solve over a polynomial basis.

Features:
- Lagrangian of every nonlinearity case
- Certificates: accepted (with phi), rejected (with the Euler witness), or
  accepted with the potential still pending when the basis is too small
- Progressive reconstruction degrees, first consistent degree wins
- Per-case classification fanned out over a thread pool
"""

import logging
from enum import Enum
from functools import lru_cache
from itertools import product
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import sympy

import config
import expr_core
from expr_core import AtomKind, Expr
from jet_calculus import DIRECTIONS, PdeIdeal, divergence, is_total_divergence, reduce_mod_pde, total_derivative
from nonlinearity import NonlinearityCase
from symmetry_engine import PointVectorField, catalog, prolong
from utils import run_concurrently

logger = logging.getLogger(__name__)

x, y, t, u = expr_core.x, expr_core.y, expr_core.t, expr_core.u
_RHO = x ** 2 + y ** 2

Triple = Tuple[Expr, Expr, Expr]
ZERO_TRIPLE: Triple = (sympy.Integer(0), sympy.Integer(0), sympy.Integer(0))


def _j(name: str) -> Expr:
    return expr_core.coord(name)


QUADRATIC_PART = sympy.expand(
    _j('u_x') ** 2 / 2 + _j('u_y') ** 2 / 2 + 2 * _RHO * _j('u_t') ** 2
    + 2 * y * _j('u_x') * _j('u_t') - 2 * x * _j('u_y') * _j('u_t')
)
"""The F-free part of the Lagrangian."""


class Lagrangian(NamedTuple):
    """L = 1/2 u_x^2 + 1/2 u_y^2 + 2(x^2+y^2) u_t^2 + 2y u_x u_t - 2x u_y u_t - F(u)."""
    case: NonlinearityCase
    L: Expr

    @classmethod
    def for_case(cls, case: NonlinearityCase) -> 'Lagrangian':
        return cls(case, sympy.expand(QUADRATIC_PART - case.F))

    def momenta(self) -> Triple:
        """dL/du_x, dL/du_y, dL/du_t."""
        return tuple(expr_core.partial(self.L, f"u_{d}") for d in DIRECTIONS)


class Verdict(str, Enum):
    ACCEPTED = "accepted"
    REJECTED = "rejected"
    PENDING = "accepted_potential_pending"


class NoetherCertificate(NamedTuple):
    """
    Verdict for one generator.

    accepted: ``phi`` satisfies divergence(phi) = defect (modulo the beta constraint)
    rejected: ``witness`` is the nonzero Euler-operator image of the defect
    pending: the Euler test passed but no phi exists in the reconstruction basis
    """
    symmetry: str
    case: NonlinearityCase
    verdict: Verdict
    defect: Expr
    phi: Optional[Triple] = None
    witness: Optional[Expr] = None
    gauge_note: Optional[str] = None
    diagnostics: Optional[str] = None

    @property
    def accepted(self) -> bool:
        return self.verdict != Verdict.REJECTED

    def to_model(self):
        from reference.schemas import CertificateModel

        return CertificateModel(
            symmetry=self.symmetry,
            case=self.case.selector,
            verdict=self.verdict.value,
            defect=expr_core.to_json_model(self.defect),
            phi=[expr_core.to_json_model(c) for c in self.phi] if self.phi is not None else None,
            witness=expr_core.to_json_model(self.witness) if self.witness is not None else None,
            gauge_note=self.gauge_note,
            diagnostics=self.diagnostics,
        )


def noether_defect(field: PointVectorField, case: NonlinearityCase) -> Expr:
    """
    Left-hand side S^(1) L + L Div(xi) of the Noether condition.

    Args:
        field (PointVectorField): Generator
        case (NonlinearityCase): Case fixing L

    Returns:
        Expr: The defect, canonical

    Example:
        >>> noether_defect(SCALING, ZERO) == 2 * Lagrangian.for_case(ZERO).L
        True
    """
    L = Lagrangian.for_case(case).L
    div_xi = sum((total_derivative(c, d) for c, d in zip(field.xi, DIRECTIONS)), sympy.Integer(0))
    defect = prolong(field, 1).apply(L) + L * div_xi
    return case.specialize(sympy.expand(defect))


class PotentialResult(NamedTuple):
    """Outcome of reconstruct_potential; ``phi`` is None when nothing was found."""
    phi: Optional[Triple]
    degree: int
    unknowns: int
    equations: int
    free_parameters: int
    diagnostics: str

    @property
    def found(self) -> bool:
        return self.phi is not None


def _u_degree(monomial: Expr) -> int:
    return sum(int(e) for a, e in expr_core.factors(monomial) if a.kind == AtomKind.JET and a.name == 'u')


def basis_families(defect: Expr) -> List[Expr]:
    """
    Jet factors m of the reconstruction basis {x^a y^b t^c m}, filtered by the defect.

    Quadratic u-terms need m = u^2, linear ones m = u and u b_J (|J| <= 1),
    u-free terms carrying beta need products b_J b_K.
    """
    degrees = set()
    has_beta = expr_core.has_dependent(defect, 'b')
    for monomial in expr_core.terms(defect):
        degrees.add(_u_degree(monomial))
    beta_jets = [_j('b')] + [_j(f"b_{d}") for d in DIRECTIONS]
    families: List[Expr] = []
    if 1 in degrees:
        families.append(u)
        if has_beta:
            families.extend(u * j for j in beta_jets)
    if 2 in degrees:
        families.append(u ** 2)
    if 0 in degrees and has_beta:
        for i, first in enumerate(beta_jets):
            families.extend(first * second for second in beta_jets[i:])
    return families


def _base_monomials(degree: int) -> List[Expr]:
    monomials = []
    for total in range(degree + 1):
        for a in range(total + 1):
            for c in range(total - a + 1):
                monomials.append(x ** a * y ** c * t ** (total - a - c))
    return monomials


def _solve_at_degree(defect: Expr, families: Sequence[Expr], degree: int, ideal: Optional[PdeIdeal]):
    columns: List[Tuple[int, Expr]] = []
    images: List[Dict[Expr, sympy.Rational]] = []
    for component, direction in enumerate(DIRECTIONS):
        for family, monomial in product(families, _base_monomials(degree)):
            element = monomial * family
            image = total_derivative(element, direction)
            if ideal is not None:
                image = reduce_mod_pde(image, ideal)
            columns.append((component, element))
            images.append(expr_core.terms(image))

    target = expr_core.terms(defect)
    rows = sorted(set(target).union(*images), key=sympy.default_sort_key)
    matrix = sympy.Matrix([[image.get(r, 0) for image in images] for r in rows])
    rhs = sympy.Matrix([target.get(r, 0) for r in rows])
    unknowns = sympy.symbols(f"k0:{len(columns)}")
    solutions = sympy.linsolve((matrix, rhs), unknowns)
    return columns, unknowns, matrix, rhs, solutions


def reconstruct_potential(defect: Expr, case: Optional[NonlinearityCase] = None,
                          max_degree: Optional[int] = None) -> PotentialResult:
    """
    Solve divergence(phi) = defect exactly over a polynomial basis.

    Degrees 0, 1, ..., max_degree are tried in turn; each component of phi is an
    unknown rational combination of x^a y^b t^c m with a+b+c <= degree and m
    from basis_families. Free parameters of an underdetermined system are set
    to zero and reported as gauge freedom.

    Args:
        defect (Expr): A total divergence (Euler test already passed)
        case (Optional[NonlinearityCase]): Supplies the beta constraint used to
            reduce D_i of each basis element
        max_degree (Optional[int]): Defaults to config.BASIS_DEGREE

    Returns:
        PotentialResult: phi, or None with the size and rank diagnostics
    """
    defect = sympy.expand(defect)
    if defect == 0:
        return PotentialResult(ZERO_TRIPLE, 0, 0, 0, 0, "defect is identically zero")

    max_degree = config.BASIS_DEGREE if max_degree is None else max_degree
    ideal = PdeIdeal.beta_only(case) if case is not None and case.beta_k is not None else None
    if ideal is not None:
        defect = reduce_mod_pde(defect, ideal)
    families = basis_families(defect)
    family_text = ', '.join(expr_core.to_text(m) for m in families) or 'none'
    if not families:
        return PotentialResult(None, 0, 0, 0, 0, "no basis family matches the jet content of the defect")

    columns = unknowns = matrix = rhs = None
    for degree in range(max_degree + 1):
        columns, unknowns, matrix, rhs, solutions = _solve_at_degree(defect, families, degree, ideal)
        logger.debug(f"reconstruct_potential: degree {degree}, {len(unknowns)} unknowns, {matrix.rows} equations")
        if solutions == sympy.S.EmptySet or not solutions:
            continue

        solution = list(next(iter(solutions)))
        free = set().union(*(sympy.sympify(v).free_symbols for v in solution))
        if free:
            solution = [sympy.sympify(v).subs({s: 0 for s in free}) for v in solution]
        phi = [sympy.Integer(0)] * 3
        for (component, element), value in zip(columns, solution):
            if value != 0:
                phi[component] += value * element
        phi = tuple(sympy.expand(c) for c in phi)
        note = (f"{len(free)} free parameters set to zero (phi is fixed only up to a divergence-free term)"
                if free else "unique within the basis")
        return PotentialResult(phi, degree, len(unknowns), matrix.rows, len(free), note)

    rank = matrix.rank()
    augmented_rank = matrix.row_join(rhs).rank()
    diagnostics = (f"no potential with (x,y,t)-degree <= {max_degree} over families [{family_text}]: "
                   f"{len(unknowns)} unknowns, {matrix.rows} equations, rank {rank}, augmented rank {augmented_rank}")
    logger.warning(diagnostics)
    return PotentialResult(None, max_degree, len(unknowns), matrix.rows, 0, diagnostics)


def is_noether(field: PointVectorField, case: NonlinearityCase,
               max_degree: Optional[int] = None) -> NoetherCertificate:
    """
    Certify whether a generator is a Noether symmetry for a case.

    Args:
        field (PointVectorField): Generator
        case (NonlinearityCase): Nonlinearity case
        max_degree (Optional[int]): Reconstruction degree bound override

    Returns:
        NoetherCertificate: accepted with phi, rejected with a witness, or pending
    """
    defect = noether_defect(field, case)
    if defect == 0:
        return NoetherCertificate(field.name, case, Verdict.ACCEPTED, defect, phi=ZERO_TRIPLE,
                                  gauge_note="defect is identically zero")

    verdict = is_total_divergence(defect, PdeIdeal.beta_only(case))
    witness = case.specialize(verdict.witness)
    if witness != 0:
        return NoetherCertificate(field.name, case, Verdict.REJECTED, defect, witness=witness)

    result = reconstruct_potential(defect, case, max_degree)
    if not result.found:
        return NoetherCertificate(field.name, case, Verdict.PENDING, defect, diagnostics=result.diagnostics)
    return NoetherCertificate(field.name, case, Verdict.ACCEPTED, defect, phi=result.phi,
                              gauge_note=result.diagnostics)


@lru_cache(maxsize=None)
def classify_case(case: NonlinearityCase) -> Dict[str, NoetherCertificate]:
    """
    Run is_noether over the case's catalog.

    Returns:
        Dict[str, NoetherCertificate]: Certificates keyed by generator name, catalog order
    """
    generators = catalog(case)
    certificates = run_concurrently(lambda g: is_noether(g, case), generators, config.MAX_WORKERS)
    result = {c.symmetry: c for c in certificates}
    accepted = [name for name, c in result.items() if c.accepted]
    logger.info(f"Noether classification for {case.selector}: accepted {', '.join(accepted)}")
    for name, certificate in result.items():
        if certificate.verdict == Verdict.PENDING:
            logger.warning(f"{name} ({case.selector}): potential pending: {certificate.diagnostics}")
    return result


def accepted_names(case: NonlinearityCase) -> Tuple[str, ...]:
    return tuple(name for name, c in classify_case(case).items() if c.accepted)


def matches_theorem(case: NonlinearityCase) -> bool:
    """True iff the accepted set equals the known Noether set of the case."""
    from reference.paper_tables import noether_set

    return set(accepted_names(case)) == set(noether_set(case))


def same_up_to_gauge(first: Sequence[Expr], second: Sequence[Expr], case: Optional[NonlinearityCase] = None) -> bool:
    """True iff the two potentials differ by a divergence-free triple (modulo the beta constraint)."""
    difference = divergence([sympy.expand(a - c) for a, c in zip(first, second)])
    if case is not None and case.beta_k is not None:
        difference = reduce_mod_pde(difference, PdeIdeal.beta_only(case))
    return difference == 0


def format_certificate(certificate: NoetherCertificate, fmt: str = 'text') -> str:
    """Render a certificate as text, LaTeX or JSON."""
    if fmt == 'json':
        return certificate.to_model().model_dump_json(indent=2)
    printer = expr_core.to_latex if fmt == 'latex' else expr_core.to_text
    lines = [f"{certificate.symmetry} [{certificate.case.selector}]: {certificate.verdict.value}",
             f"  defect = {printer(certificate.defect)}"]
    if certificate.phi is not None:
        for i, component in enumerate(certificate.phi, 1):
            lines.append(f"  phi{i} = {printer(component)}")
    if certificate.witness is not None:
        lines.append(f"  witness = {printer(certificate.witness)}")
    if certificate.gauge_note:
        lines.append(f"  note: {certificate.gauge_note}")
    if certificate.diagnostics:
        lines.append(f"  diagnostics: {certificate.diagnostics}")
    return '\n'.join(lines)
