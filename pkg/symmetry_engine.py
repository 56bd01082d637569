"""
Symmetry Engine Module

Point vector fields on (x, y, t, u), their prolongations, Lie brackets, the
symmetry catalog of every nonlinearity case, bracket tables, and the group
operations of the Heisenberg group H^1.

Bracket convention: [A, B] = A(coefficients of B) - B(coefficients of A).

Features:
- Immutable, hashable field records (pydantic, frozen)
- First and second prolongations by the recursion
  eta_i = D_i eta - (D_i xi^j) u_j,  eta_ij = D_j eta_i - (D_j xi^l) u_il
- Exact decomposition of brackets over the catalog span (rank-checked)
- Structural classification of brackets that land on W_beta
- Bracket tables fanned out over a thread pool, emitted as text, LaTeX or JSON

Performance:
- Catalogs and bracket tables cached per case
"""

import logging
from functools import lru_cache
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple

import sympy
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

import config
import expr_core
from expr_core import AtomKind, Expr, symbol
from jet_calculus import (DIRECTIONS, PdeIdeal, base_partial, pde_expression, reduce_mod_pde,
                          total_derivative, u_derivative)
from nonlinearity import ARBITRARY, CaseError, CaseTag, NonlinearityCase
from utils import run_concurrently

logger = logging.getLogger(__name__)

x, y, t, u, b = expr_core.x, expr_core.y, expr_core.t, expr_core.u, expr_core.b
_RHO = x ** 2 + y ** 2


class PointVectorField(BaseModel):
    """
    A generator xi1 d/dx + xi2 d/dy + xi3 d/dt + eta d/du.

    Coefficients are functions of (x, y, t, u); eta may also hold beta atoms (W_beta).
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str = Field(..., description="Generator name, e.g. 'V2'")
    latex: str = Field('', description="LaTeX symbol, e.g. 'V_{2}'")
    xi: Tuple[Expr, Expr, Expr] = Field(..., description="Coefficients of d/dx, d/dy, d/dt")
    eta: Expr = Field(..., description="Coefficient of d/du")

    @model_validator(mode='before')
    @classmethod
    def _default_latex(cls, data: Any) -> Any:
        if isinstance(data, dict) and not data.get('latex'):
            data = {**data, 'latex': data.get('name', '')}
        return data

    @field_validator('xi', mode='before')
    @classmethod
    def _normalize_xi(cls, value: Any) -> Tuple[Expr, Expr, Expr]:
        value = tuple(value)
        if len(value) != 3:
            raise ValueError(f"xi needs three coefficients, got {len(value)}")
        return tuple(expr_core.normalize(c) for c in value)

    @field_validator('eta', mode='before')
    @classmethod
    def _normalize_eta(cls, value: Any) -> Expr:
        return expr_core.normalize(value)

    @model_validator(mode='after')
    def _check_point_field(self) -> 'PointVectorField':
        for coefficient in self.coefficients:
            for atom in expr_core.atoms_in(coefficient):
                if atom.kind == AtomKind.JET and atom.name == 'u' and atom.index:
                    raise ValueError(f"{self.name}: coefficient depends on the derivative {atom.symbol_name}")
        return self

    @property
    def coefficients(self) -> Tuple[Expr, Expr, Expr, Expr]:
        return self.xi + (self.eta,)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coefficients)

    def apply(self, e: Expr) -> Expr:
        """First-order action on a function of (x, y, t, u) and beta-jets."""
        result = self.eta * u_derivative(e) if self.eta != 0 else sympy.Integer(0)
        for coefficient, direction in zip(self.xi, DIRECTIONS):
            if coefficient != 0:
                result += coefficient * base_partial(e, direction)
        return sympy.expand(result)

    def characteristic(self) -> Expr:
        """Q = eta - xi^j u_j."""
        q = self.eta
        for coefficient, direction in zip(self.xi, DIRECTIONS):
            q -= coefficient * symbol(expr_core.jet_atom('u', direction))
        return sympy.expand(q)

    def combine(self, other: 'PointVectorField', scale: Any = 1, name: Optional[str] = None) -> 'PointVectorField':
        """self + scale * other"""
        scale = sympy.Rational(scale)
        return PointVectorField(
            name=name or f"{self.name}+{scale}*{other.name}",
            xi=tuple(a + scale * c for a, c in zip(self.xi, other.xi)),
            eta=self.eta + scale * other.eta,
        )

    def scaled(self, factor: Any, name: Optional[str] = None) -> 'PointVectorField':
        factor = sympy.Rational(factor)
        return PointVectorField(
            name=name or f"{factor}*{self.name}",
            xi=tuple(factor * c for c in self.xi),
            eta=factor * self.eta,
        )

    def to_text(self) -> str:
        parts = []
        for coefficient, variable in zip(self.coefficients, DIRECTIONS + ('u',)):
            if coefficient == 0:
                continue
            parts.append(f"({expr_core.to_text(coefficient)})*d/d{variable}")
        return ' + '.join(parts) if parts else '0'

    def to_latex(self) -> str:
        parts = []
        for coefficient, variable in zip(self.coefficients, DIRECTIONS + ('u',)):
            if coefficient == 0:
                continue
            body = expr_core.to_latex(coefficient)
            if body == '1':
                parts.append(f"\\partial_{{{variable}}}")
            else:
                parts.append(f"({body})\\partial_{{{variable}}}")
        return '+'.join(parts) if parts else '0'


class ProlongedField(NamedTuple):
    """A point field lifted to jet space; ``coeffs`` maps u-jet atoms to their coefficients."""
    base: PointVectorField
    order: int
    coeffs: Dict[expr_core.Atom, Expr]

    def coefficient(self, name: str) -> Expr:
        atom = expr_core.atom_of(expr_core.coord(name))
        return self.coeffs.get(atom, sympy.Integer(0))

    def apply(self, e: Expr) -> Expr:
        """Action of the prolonged operator on a jet expression."""
        result = self.base.apply(e)
        for atom, coefficient in self.coeffs.items():
            if coefficient != 0:
                result += coefficient * expr_core.partial(e, atom)
        return sympy.expand(result)


def prolong(field: PointVectorField, order: int = 1) -> ProlongedField:
    """
    Prolong a point field to first or second order.

    Args:
        field (PointVectorField): Generator
        order (int): 1 or 2

    Returns:
        ProlongedField: Coefficients of d/du_i (and d/du_ij for order 2)

    Example:
        >>> prolong(catalog(ARBITRARY)[1], 1).coefficient('u_x')
        u_y
    """
    if order not in (1, 2):
        raise ValueError(f"prolongation order must be 1 or 2, got {order}")

    d_xi = {(i, j): total_derivative(field.xi[DIRECTIONS.index(j)], i) for i in DIRECTIONS for j in DIRECTIONS}
    first: Dict[str, Expr] = {}
    for i in DIRECTIONS:
        value = total_derivative(field.eta, i)
        for j in DIRECTIONS:
            value -= d_xi[(i, j)] * symbol(expr_core.jet_atom('u', j))
        first[i] = sympy.expand(value)

    coeffs = {expr_core.jet_atom('u', i): first[i] for i in DIRECTIONS}
    if order == 2:
        for a, i in enumerate(DIRECTIONS):
            for j in DIRECTIONS[a:]:
                value = total_derivative(first[i], j)
                for l in DIRECTIONS:
                    value -= d_xi[(j, l)] * symbol(expr_core.jet_atom('u', (i, l)))
                coeffs[expr_core.jet_atom('u', (i, j))] = sympy.expand(value)
    return ProlongedField(field, order, coeffs)


@lru_cache(maxsize=4096)
def lie_bracket(a: PointVectorField, b: PointVectorField) -> PointVectorField:
    """[a, b] = a(coefficients of b) - b(coefficients of a)."""
    coefficients = [sympy.expand(a.apply(cb) - b.apply(ca)) for ca, cb in zip(a.coefficients, b.coefficients)]
    return PointVectorField(name=f"[{a.name},{b.name}]", xi=coefficients[:3], eta=coefficients[3])


# =============================================================================
# CATALOG
# =============================================================================

def _field(name: str, latex: str, xi1: Any, xi2: Any, xi3: Any, eta: Any) -> PointVectorField:
    return PointVectorField(name=name, latex=latex, xi=(xi1, xi2, xi3), eta=eta)


def _rational_label(value: sympy.Rational) -> str:
    return str(value.p) if value.q == 1 else f"{value.p}/{value.q}"


def _base_generators() -> List[PointVectorField]:
    return [
        _field('T', 'T', 0, 0, 1, 0),
        _field('R', 'R', y, -x, 0, 0),
        _field('Xtilde', '\\tilde{X}', 1, 0, -2 * y, 0),
        _field('Ytilde', '\\tilde{Y}', 0, 1, 2 * x, 0),
    ]


def _conformal_generators() -> List[PointVectorField]:
    return [
        _field('V1', 'V_{1}', x * t - x ** 2 * y - y ** 3, y * t + x ** 3 + x * y ** 2, t ** 2 - _RHO ** 2, -t * u),
        _field('V2', 'V_{2}', t - 4 * x * y, 3 * x ** 2 - y ** 2, -(2 * y * t + 2 * x ** 3 + 2 * x * y ** 2), 2 * y * u),
        _field('V3', 'V_{3}', x ** 2 - 3 * y ** 2, t + 4 * x * y, 2 * x * t - 2 * x ** 2 * y - 2 * y ** 3, -2 * x * u),
    ]


def dilation(p: sympy.Rational) -> PointVectorField:
    """D_p = x d/dx + y d/dy + 2t d/dt + 2/(1-p) u d/du."""
    p = sympy.Rational(p)
    label = _rational_label(p)
    return _field(f"D{label}", f"D_{{{label}}}", x, y, 2 * t, sympy.Rational(2) / (1 - p) * u)


def w_field(beta: Optional[Expr] = None) -> PointVectorField:
    """W_beta with symbolic beta, or with a concrete function beta0(x, y, t)."""
    if beta is None:
        return _field('W', 'W_{\\beta}', 0, 0, 0, b)
    beta = expr_core.normalize(beta)
    return _field(f"W[{expr_core.to_text(beta)}]", f"W_{{{expr_core.to_latex(beta)}}}", 0, 0, 0, beta)


SCALING = _field('Z', 'Z', x, y, 2 * t, 0)
UNIT = _field('U', 'U', 0, 0, 0, u)
EXPONENTIAL_SCALING = _field('E', 'E', x, y, 2 * t, -2)


@lru_cache(maxsize=None)
def catalog(case: NonlinearityCase) -> Tuple[PointVectorField, ...]:
    """
    Lie point symmetry generators of the equation for a case.

    Arbitrary, power, exponential cases extend G_f = {T, R, Xtilde, Ytilde} by
    D_p, respectively E; the zero case adds V1, V2, V3, Z, U, W; the linear
    case U, W; the critical cubic case V1, V2, V3, D3.

    Args:
        case (NonlinearityCase): Nonlinearity case

    Returns:
        Tuple[PointVectorField, ...]: Generators in display order
    """
    generators = _base_generators()
    if case.tag == CaseTag.ZERO:
        generators += _conformal_generators() + [SCALING, UNIT, w_field()]
    elif case.tag == CaseTag.LINEAR:
        generators += [UNIT, w_field()]
    elif case.tag == CaseTag.POWER:
        generators.append(dilation(case.p))
    elif case.tag == CaseTag.EXPONENTIAL:
        generators.append(EXPONENTIAL_SCALING)
    elif case.tag == CaseTag.CUBIC:
        generators += _conformal_generators() + [dilation(3)]
    return tuple(generators)


def _lookup_key(name: str) -> str:
    key = name.strip().lower().replace('~', 'tilde').replace('_', '').replace('\\', '')
    return {'xt': 'xtilde', 'yt': 'ytilde', 'wbeta': 'w', 'wb': 'w'}.get(key, key)


def find_generator(case: NonlinearityCase, name: str) -> PointVectorField:
    """
    Look up a catalog generator by name (case-insensitive; 'X~', 'D' and 'W_beta' accepted).

    Raises:
        CaseError: No generator of that name in the case's catalog
    """
    key = _lookup_key(name)
    for generator in catalog(case):
        candidates = {_lookup_key(generator.name)}
        if generator.name.startswith('D'):
            candidates |= {'d', 'dp'}
        if key in candidates:
            return generator
    names = ', '.join(g.name for g in catalog(case))
    raise CaseError(f"unknown symmetry '{name}' for case {case.selector} (available: {names})")


# =============================================================================
# SPAN DECOMPOSITION
# =============================================================================

def _coefficient_equations(target: PointVectorField, basis: Sequence[PointVectorField], unknowns):
    equations = []
    for k in range(4):
        combined = sympy.expand(sum((c * g.coefficients[k] for c, g in zip(unknowns, basis)), sympy.Integer(0))
                                - target.coefficients[k])
        collected: Dict[Expr, Expr] = {}
        for term in sympy.Add.make_args(combined):
            if term == 0:
                continue
            numeric, rest = term.as_independent(*unknowns, as_Add=False)
            coefficient, monomial = numeric.as_coeff_Mul()
            collected[monomial] = collected.get(monomial, 0) + coefficient * rest
        equations.extend(v for v in collected.values() if v != 0)
    return equations


def decompose(target: PointVectorField, basis: Sequence[PointVectorField]) -> Optional[Dict[str, sympy.Rational]]:
    """
    Exact rational coefficients c with target = sum c_g g, or None if target is outside the span.

    Zero coefficients are omitted from the result.
    """
    if target.is_zero():
        return {}
    unknowns = sympy.symbols(f"c0:{len(basis)}")
    equations = _coefficient_equations(target, basis, unknowns)
    solutions = sympy.linsolve(equations, unknowns)
    if solutions == sympy.S.EmptySet or not solutions:
        return None
    solution = next(iter(solutions))
    free = set().union(*(sympy.sympify(v).free_symbols for v in solution))
    if free:
        solution = [sympy.sympify(v).subs({s: 0 for s in free}) for v in solution]
    return {g.name: sympy.Rational(v) for g, v in zip(basis, solution) if v != 0}


def span_rank(fields: Sequence[PointVectorField]) -> int:
    """Rank of the coefficient vectors of ``fields`` over the rationals."""
    monomials: List[Tuple[int, Expr]] = []
    rows = []
    for field in fields:
        row: Dict[Tuple[int, Expr], sympy.Rational] = {}
        for k, coefficient in enumerate(field.coefficients):
            for monomial, value in expr_core.terms(coefficient).items():
                row[(k, monomial)] = value
                if (k, monomial) not in monomials:
                    monomials.append((k, monomial))
        rows.append(row)
    if not monomials:
        return 0
    matrix = sympy.Matrix([[row.get(m, 0) for m in monomials] for row in rows])
    return matrix.rank()


# =============================================================================
# BRACKET TABLES
# =============================================================================

class BracketEntry(NamedTuple):
    """
    One classified bracket [row, col].

    kind is 'combination' (``combination`` maps generator names to rationals,
    empty for 0), 'w' (``beta`` holds the new W argument) or 'unclassified'.
    """
    row: str
    col: str
    kind: str
    combination: Dict[str, sympy.Rational]
    beta: Optional[Expr]
    field: PointVectorField

    def label(self, latex_names: Optional[Dict[str, str]] = None, fmt: str = 'text') -> str:
        if self.kind == 'unclassified':
            return 'UNCLASSIFIED'
        if self.kind == 'w':
            if fmt == 'latex':
                return f"W_{{{expr_core.to_latex(self.beta)}}}"
            return f"W[{expr_core.to_text(self.beta)}]"
        if not self.combination:
            return '0'
        pieces = []
        for name, value in self.combination.items():
            symbol_text = (latex_names or {}).get(name, name) if fmt == 'latex' else name
            magnitude = abs(value)
            prefix = '' if magnitude == 1 else _rational_label(magnitude)
            if fmt == 'latex' and magnitude.q != 1:
                prefix = f"\\frac{{{magnitude.p}}}{{{magnitude.q}}}"
            body = prefix + symbol_text
            if not pieces:
                pieces.append(('-' if value < 0 else '') + body)
            else:
                pieces.append((' - ' if value < 0 else ' + ') + body if fmt == 'text'
                              else ('-' if value < 0 else '+') + body)
        return ''.join(pieces)


class BracketTable(NamedTuple):
    case: NonlinearityCase
    names: Tuple[str, ...]
    latex_names: Dict[str, str]
    entries: Dict[Tuple[str, str], BracketEntry]

    def entry(self, row: str, col: str) -> BracketEntry:
        return self.entries[(row, col)]

    def unclassified(self) -> List[BracketEntry]:
        return [e for e in self.entries.values() if e.kind == 'unclassified']


def _is_w_like(field: PointVectorField) -> bool:
    if any(c != 0 for c in field.xi):
        return False
    return not any(a.kind == AtomKind.JET and a.name == 'u' for a in expr_core.atoms_in(field.eta))


def classify_bracket(a: PointVectorField, b_field: PointVectorField,
                     basis: Sequence[PointVectorField]) -> BracketEntry:
    """
    Bracket two generators and express the result over ``basis``.

    Brackets without xi-part whose eta is free of u and carries beta (or come
    from a pair involving W) are classified structurally as W[eta].
    """
    bracket = lie_bracket(a, b_field)
    involves_w = any(g.name == 'W' for g in (a, b_field))
    if not bracket.is_zero() and _is_w_like(bracket) and (involves_w or expr_core.has_dependent(bracket.eta, 'b')):
        logger.debug(f"[{a.name},{b_field.name}] = W[{expr_core.to_text(bracket.eta)}]")
        return BracketEntry(a.name, b_field.name, 'w', {}, bracket.eta, bracket)

    combination = decompose(bracket, basis)
    if combination is None:
        logger.warning(f"[{a.name},{b_field.name}] is not in the catalog span: {bracket.to_text()}")
        return BracketEntry(a.name, b_field.name, 'unclassified', {}, None, bracket)
    order = {g.name: i for i, g in enumerate(basis)}
    combination = dict(sorted(combination.items(), key=lambda item: order[item[0]]))
    return BracketEntry(a.name, b_field.name, 'combination', combination, None, bracket)


def check_independence(fields: Sequence[PointVectorField]) -> None:
    """Raise RuntimeError if the generators are linearly dependent over the rationals."""
    rank = span_rank(fields)
    if rank != len(fields):
        raise RuntimeError(f"catalog generators are linearly dependent (rank {rank} < {len(fields)})")


@lru_cache(maxsize=None)
def bracket_table(case: NonlinearityCase) -> BracketTable:
    """
    Classified bracket table of a case's catalog.

    Every ordered pair is bracketed and decomposed over the non-W generators;
    entries are computed concurrently and reassembled in row-major order.

    Args:
        case (NonlinearityCase): Nonlinearity case

    Returns:
        BracketTable: Entries keyed by (row, col)
    """
    generators = catalog(case)
    basis = [g for g in generators if g.name != 'W']
    check_independence(basis)

    pairs = [(a, c) for a in generators for c in generators]
    entries = run_concurrently(lambda pair: classify_bracket(pair[0], pair[1], basis), pairs, config.MAX_WORKERS)

    table = BracketTable(
        case=case,
        names=tuple(g.name for g in generators),
        latex_names={g.name: g.latex for g in generators},
        entries={(e.row, e.col): e for e in entries},
    )
    logger.info(f"Bracket table for {case.selector}: {len(entries)} entries, {len(table.unclassified())} unclassified")
    return table


def render_table(table: BracketTable, fmt: str = 'text') -> str:
    """Text grid, LaTeX tabular or JSON document {case, rows, cols, entries}."""
    if fmt == 'json':
        from reference.schemas import BracketEntryModel, BracketTableModel

        model = BracketTableModel(
            case=table.case.selector,
            rows=list(table.names),
            cols=list(table.names),
            entries=[
                BracketEntryModel(
                    row=e.row, col=e.col, kind=e.kind, label=e.label(),
                    combination={k: _rational_label(v) for k, v in e.combination.items()},
                    beta=expr_core.to_json_model(e.beta) if e.beta is not None else None,
                    residual=e.field.to_text() if e.kind == 'unclassified' else None,
                )
                for e in (table.entry(r, c) for r in table.names for c in table.names)
            ],
        )
        return model.model_dump_json(indent=2)

    if fmt == 'latex':
        header = ' & '.join([''] + [f"${table.latex_names[n]}$" for n in table.names])
        lines = ["\\begin{tabular}{|" + 'c|' * (len(table.names) + 1) + "}\\hline", header + "\\\\\\hline"]
        for r in table.names:
            cells = [f"${table.latex_names[r]}$"]
            cells += [f"${table.entry(r, c).label(table.latex_names, 'latex')}$" for c in table.names]
            lines.append(' & '.join(cells) + "\\\\\\hline")
        lines.append("\\end{tabular}")
        return '\n'.join(lines)

    grid = [[''] + list(table.names)]
    for r in table.names:
        grid.append([r] + [table.entry(r, c).label() for c in table.names])
    widths = [max(len(row[i]) for row in grid) for i in range(len(grid[0]))]
    lines = [' | '.join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in grid]
    lines.insert(1, '-+-'.join('-' * w for w in widths))
    unclassified = table.unclassified()
    if unclassified:
        lines.append('')
        lines.extend(f"UNCLASSIFIED [{e.row},{e.col}] = {e.field.to_text()}" for e in unclassified)
    return '\n'.join(lines)


# =============================================================================
# LIE SYMMETRY CHECK
# =============================================================================

class SymmetryVerdict(NamedTuple):
    ok: bool
    residual: Expr


def check_lie_symmetry(field: PointVectorField, case: NonlinearityCase) -> SymmetryVerdict:
    """
    Apply the second prolongation to Delta u + f(u) and reduce modulo the equation.

    Returns:
        SymmetryVerdict: ok iff the reduced expression is 0; otherwise the residual
    """
    ideal = PdeIdeal.for_case(case)
    image = prolong(field, 2).apply(pde_expression(case))
    residual = reduce_mod_pde(case.specialize(image), ideal)
    return SymmetryVerdict(residual == 0, residual)


# =============================================================================
# HEISENBERG GROUP
# =============================================================================

Point = Tuple[Expr, Expr, Expr]


def heisenberg_compose(a: Sequence[Any], c: Sequence[Any], sign: int = 1) -> Point:
    """
    Group law (x, y, t) * (x0, y0, t0) = (x + x0, y + y0, t + t0 + 2(x y0 - y x0)).

    ``sign=-1`` gives the mirrored law with -2(x y0 - y x0).
    """
    (x1, y1, t1), (x0, y0, t0) = [tuple(sympy.sympify(v) for v in p) for p in (a, c)]
    return (
        sympy.expand(x1 + x0),
        sympy.expand(y1 + y0),
        sympy.expand(t1 + t0 + 2 * sign * (x1 * y0 - y1 * x0)),
    )


def left_invariant_fields(sign: int = 1) -> Tuple[PointVectorField, PointVectorField, PointVectorField]:
    """X, Y, Z as s-derivatives at s = 0 of p * (s,0,0), p * (0,s,0), p * (0,0,s)."""
    s = sympy.Symbol('s')
    point = (x, y, t)
    fields = []
    for name, direction in zip(('X', 'Y', 'Z'), ((s, 0, 0), (0, s, 0), (0, 0, s))):
        curve = heisenberg_compose(point, direction, sign)
        xi = [sympy.diff(c, s).subs(s, 0) for c in curve]
        fields.append(_field(name, name, xi[0], xi[1], xi[2], 0))
    return tuple(fields)


def printed_fields() -> Tuple[PointVectorField, PointVectorField, PointVectorField]:
    """The fields as commonly displayed alongside the group law: d/dx + 2y d/dt, d/dy + 2x d/dt, d/dt."""
    return (_field('X', 'X', 1, 0, 2 * y, 0), _field('Y', 'Y', 0, 1, 2 * x, 0), _field('Z', 'Z', 0, 0, 1, 0))


def _act_on_jets(field: PointVectorField, e: Expr) -> Expr:
    result = sympy.Integer(0)
    for coefficient, direction in zip(field.xi, DIRECTIONS):
        if coefficient != 0:
            result += coefficient * total_derivative(e, direction)
    return sympy.expand(result)


def sublaplacian_from_fields(first: PointVectorField, second: PointVectorField) -> Expr:
    """X^2 u + Y^2 u as a jet expression."""
    return sympy.expand(sum((_act_on_jets(f, _act_on_jets(f, u)) for f in (first, second)), sympy.Integer(0)))


def heisenberg_report():
    """
    Consistency report of the group law, its left-invariant fields and the operator.

    Checks identity and associativity on symbolic points, derives the fields
    from the stated and the mirrored group law, lists the printed fields, and
    compares X^2 + Y^2 of each set with the Kohn-Laplace operator. No sign
    convention is chosen; every comparison is reported.

    Returns:
        HeisenbergReportModel: The report
    """
    from jet_calculus import kohn_laplacian
    from reference.schemas import FieldSetModel, HeisenbergReportModel

    p1 = sympy.symbols('x1 y1 t1')
    p2 = sympy.symbols('x2 y2 t2')
    p3 = sympy.symbols('x3 y3 t3')
    identity_ok = (heisenberg_compose(p1, (0, 0, 0)) == tuple(p1)
                   and heisenberg_compose((0, 0, 0), p1) == tuple(p1))
    left = heisenberg_compose(heisenberg_compose(p1, p2), p3)
    right = heisenberg_compose(p1, heisenberg_compose(p2, p3))
    associative = all(sympy.expand(a - c) == 0 for a, c in zip(left, right))

    displayed = kohn_laplacian('u')
    sets = []
    for label, fields in (("derived from the group law", left_invariant_fields(1)),
                          ("derived from the mirrored group law", left_invariant_fields(-1)),
                          ("as printed", printed_fields())):
        X, Y, Z = fields
        operator = sublaplacian_from_fields(X, Y)
        difference = sympy.expand(operator - displayed)
        bracket = lie_bracket(X, Y)
        combination = decompose(bracket, fields)
        bracket_text = ('outside span {X, Y, Z}' if combination is None else
                        BracketEntry('X', 'Y', 'combination', combination, None, bracket).label())
        sets.append(FieldSetModel(
            label=label,
            fields={f.name: f.to_text() for f in fields},
            bracket_xy=bracket_text,
            sublaplacian=expr_core.to_text(operator),
            matches_displayed_operator=difference == 0,
            difference=expr_core.to_text(difference),
        ))
        logger.info(f"Heisenberg fields {label}: [X,Y] = {bracket_text}, X^2+Y^2 matches operator: {difference == 0}")

    return HeisenbergReportModel(
        identity_ok=identity_ok,
        associative=associative,
        displayed_operator=expr_core.to_text(displayed),
        field_sets=sets,
    )
