"""
Jet Calculus Module

Differential-algebra operators on expressions: total derivatives with the
chain rules of the opaque functions, divergence, the Euler operator, and
reduction modulo the Kohn-Laplace equation (and, in the zero and linear
cases, the constraint on beta).

The equation is
    u_xx + u_yy + 4(x^2+y^2) u_tt + 4y u_xt - 4x u_yt + f(u) = 0
and "on solutions" means rewriting every jet coordinate whose index holds two
x's with u_xx as the leading derivative. Solving for u_xx keeps all
coefficients polynomial.

Features:
- D_x, D_y, D_t on u-jets, beta-jets and F, f, f^(k), e^u
- Euler operator for dependent symbols u and b (jet order <= 2)
- Terminating leading-derivative rewriting (the x-count of an index drops each step)
- Divergence test through the kernel of the Euler operator
- Concrete beta instantiation and constraint check
"""

import logging
from functools import lru_cache
from typing import NamedTuple, Optional, Sequence

import sympy

import expr_core
from expr_core import Atom, AtomKind, Expr, ExprError, symbol
from nonlinearity import CaseError, NonlinearityCase

logger = logging.getLogger(__name__)

DIRECTIONS = expr_core.DIRECTIONS

_BASE = {d: expr_core.coord(d) for d in DIRECTIONS}
_RHO = expr_core.x ** 2 + expr_core.y ** 2

MAX_EULER_ORDER = 2
"""Highest jet order the Euler operator accepts."""


def _opaque_u_derivative(atom: Atom) -> Expr:
    if atom.name == 'E':
        return expr_core.E
    if atom.name == 'F':
        return expr_core.f
    return symbol(expr_core.opaque_atom('f', atom.order + 1))


def total_derivative(e: Expr, direction: str) -> Expr:
    """
    Total derivative D_direction on jet space.

    D_x = d/dx + u_x d/du + u_xx d/du_x + ... + b_x d/db + ..., with
    D_x F(u) = f(u) u_x, D_x f^(k)(u) = f^(k+1)(u) u_x and D_x e^u = e^u u_x.

    Args:
        e (Expr): Expression
        direction (str): 'x', 'y' or 't'

    Returns:
        Expr: Canonical form of the derivative

    Raises:
        JetOrderError: A present jet coordinate would exceed maxOrder
        ValueError: Unknown direction

    Example:
        >>> total_derivative(expr_core.F, 'y')
        f*u_y
    """
    if direction not in _BASE:
        raise ValueError(f"unknown direction '{direction}'")
    e = sympy.expand(e)
    result = sympy.diff(e, _BASE[direction])
    u_dir = None
    for atom in expr_core.atoms_in(e):
        if atom.kind == AtomKind.BASE:
            continue
        coefficient = sympy.diff(e, symbol(atom))
        if atom.kind == AtomKind.JET:
            raised = expr_core.jet_atom(atom.name, atom.index + (direction,))
            result += coefficient * symbol(raised)
        else:
            if u_dir is None:
                u_dir = symbol(expr_core.jet_atom('u', (direction,)))
            result += coefficient * _opaque_u_derivative(atom) * u_dir
    return sympy.expand(result)


def total_derivative_along(e: Expr, index: Sequence[str]) -> Expr:
    """Apply D_i for every direction of a multi-index."""
    for direction in index:
        e = total_derivative(e, direction)
    return e


def divergence(v: Sequence[Expr]) -> Expr:
    """D_x v1 + D_y v2 + D_t v3."""
    if len(v) != 3:
        raise ValueError(f"divergence needs a triple, got {len(v)} components")
    return sympy.expand(sum((total_derivative(c, d) for c, d in zip(v, DIRECTIONS)), sympy.Integer(0)))


def u_derivative(e: Expr) -> Expr:
    """d/du with the chain rules of the opaque functions (F' = f, f^(k)' = f^(k+1), (e^u)' = e^u)."""
    e = sympy.expand(e)
    result = sympy.diff(e, expr_core.u)
    for atom in expr_core.atoms_in(e):
        if atom.kind == AtomKind.OPAQUE:
            result += sympy.diff(e, symbol(atom)) * _opaque_u_derivative(atom)
    return sympy.expand(result)


def base_partial(e: Expr, direction: str) -> Expr:
    """
    Partial derivative in a base variable with beta treated as a function of (x, y, t).

    u-jets are held fixed; b_J contributes b_{J+direction}.
    """
    e = sympy.expand(e)
    result = sympy.diff(e, _BASE[direction])
    for atom in expr_core.atoms_in(e):
        if atom.kind == AtomKind.JET and atom.name == 'b':
            raised = expr_core.jet_atom('b', atom.index + (direction,))
            result += sympy.diff(e, symbol(atom)) * symbol(raised)
    return sympy.expand(result)


def euler_operator(e: Expr, wrt: str = 'u') -> Expr:
    """
    Variational derivative of ``e`` with respect to a dependent symbol.

    Sums (-D)_J d e / d v_J over the sorted multi-indices J present in ``e``;
    each mixed coordinate such as u_xt is counted once.

    Args:
        e (Expr): Expression of jet order <= 2 in ``wrt``
        wrt (str): 'u' or 'b'

    Returns:
        Expr: The variational derivative

    Raises:
        ExprError: Jet order of ``e`` in ``wrt`` exceeds 2

    Example:
        >>> euler_operator(parse("u_x^2 + u_y^2"))
        -2*u_xx - 2*u_yy
    """
    if wrt not in expr_core.DEPENDENTS:
        raise ValueError(f"unknown dependent symbol '{wrt}'")
    e = sympy.expand(e)
    order = expr_core.jet_order(e, wrt)
    if order > MAX_EULER_ORDER:
        raise ExprError(f"euler_operator needs jet order <= {MAX_EULER_ORDER} in {wrt}, got {order}")

    result = u_derivative(e) if wrt == 'u' else sympy.diff(e, expr_core.b)
    for atom in expr_core.atoms_in(e):
        if atom.kind != AtomKind.JET or atom.name != wrt or not atom.index:
            continue
        term = total_derivative_along(sympy.diff(e, symbol(atom)), atom.index)
        result += (-1) ** atom.jet_order * term
    return sympy.expand(result)


def kohn_laplacian(dependent: str = 'u') -> Expr:
    """The Kohn-Laplace operator applied to a dependent symbol, as a jet expression."""
    def j(index: str) -> Expr:
        return symbol(expr_core.jet_atom(dependent, index))

    return sympy.expand(
        j('xx') + j('yy') + 4 * _RHO * j('tt') + 4 * expr_core.y * j('xt') - 4 * expr_core.x * j('yt')
    )


def kohn_laplacian_of_function(g: Expr) -> Expr:
    """The Kohn-Laplace operator applied to a concrete function of (x, y, t)."""
    x, y, t = _BASE['x'], _BASE['y'], _BASE['t']
    return sympy.expand(
        sympy.diff(g, x, 2) + sympy.diff(g, y, 2) + 4 * _RHO * sympy.diff(g, t, 2)
        + 4 * y * sympy.diff(g, x, t) - 4 * x * sympy.diff(g, y, t)
    )


def pde_expression(case: NonlinearityCase) -> Expr:
    """Left-hand side Delta u + f(u) of the equation for a case."""
    return sympy.expand(kohn_laplacian('u') + case.f)


# =============================================================================
# REDUCTION MODULO THE EQUATION
# =============================================================================

class PdeIdeal(NamedTuple):
    """
    Differential ideal generated by the equation and, optionally, the beta constraint.

    Attributes:
        case: Nonlinearity case supplying f and the beta constant k
        u_rule: Rewrite u_xx and its prolongations
        beta_rule: Rewrite b_xx when the case constrains beta (zero and linear cases)
    """
    case: NonlinearityCase
    u_rule: bool = True
    beta_rule: bool = True

    @classmethod
    def for_case(cls, case: NonlinearityCase) -> 'PdeIdeal':
        return cls(case, True, True)

    @classmethod
    def beta_only(cls, case: NonlinearityCase) -> 'PdeIdeal':
        return cls(case, False, True)

    @property
    def beta_k(self) -> Optional[int]:
        return self.case.beta_k if self.beta_rule else None

    def applies_to(self, dependent: str) -> bool:
        if dependent == 'u':
            return self.u_rule
        return self.beta_k is not None

    def leading_rhs(self, dependent: str) -> Expr:
        """Right-hand side of the leading rule v_xx -> ..."""
        def j(index: str) -> Expr:
            return symbol(expr_core.jet_atom(dependent, index))

        rest = (-j('yy') - 4 * _RHO * j('tt') - 4 * expr_core.y * j('xt') + 4 * expr_core.x * j('yt'))
        source = self.case.f if dependent == 'u' else self.beta_k * expr_core.b
        return sympy.expand(rest - source)

    def rewrite(self, atom: Atom) -> Expr:
        return _rewrite(self, atom)


@lru_cache(maxsize=4096)
def _rewrite(ideal: PdeIdeal, atom: Atom) -> Expr:
    rest = list(atom.index)
    rest.remove('x')
    rest.remove('x')
    return total_derivative_along(ideal.leading_rhs(atom.name), rest)


def _reducible(e: Expr, ideal: PdeIdeal):
    return [a for a in expr_core.atoms_in(e)
            if a.kind == AtomKind.JET and a.index.count('x') >= 2 and ideal.applies_to(a.name)]


def reduce_mod_pde(e: Expr, ideal: PdeIdeal) -> Expr:
    """
    Rewrite ``e`` until no jet coordinate with two x's in its index remains.

    Each pass replaces the highest-order reducible coordinate v_{xx+K} by D_K of
    the leading rule. The result differs from ``e`` by an element of the
    differential ideal; it is idempotent.

    Args:
        e (Expr): Expression
        ideal (PdeIdeal): Which rules apply

    Returns:
        Expr: Reduced canonical form

    Example:
        >>> reduce_mod_pde(pde_expression(ARBITRARY), PdeIdeal.for_case(ARBITRARY))
        0
    """
    e = sympy.expand(e)
    passes = 0
    while True:
        targets = _reducible(e, ideal)
        if not targets:
            break
        atom = max(targets, key=lambda a: (a.jet_order, a.sort_key()))
        e = sympy.expand(e.xreplace({symbol(atom): ideal.rewrite(atom)}))
        passes += 1
    if passes:
        logger.debug(f"reduce_mod_pde: {passes} rewrite passes")
    return e


# =============================================================================
# DIVERGENCE TEST
# =============================================================================

class DivergenceVerdict(NamedTuple):
    """Outcome of is_total_divergence; ``witness`` is 0 exactly when ``ok``."""
    ok: bool
    witness: Expr


def is_total_divergence(e: Expr, ideal: Optional[PdeIdeal] = None, beta_test: bool = False) -> DivergenceVerdict:
    """
    Decide whether ``e`` is a total divergence D_i phi^i.

    The Euler operator's kernel is exactly the total divergences. Beta is a given
    function of (x, y, t), so the u-variational derivative decides; when an ideal
    with a beta constraint is given, the witness is reduced by that constraint
    only (never by the equation for u, which would make every Lagrangian pass).

    Args:
        e (Expr): Expression of jet order <= 2
        ideal (Optional[PdeIdeal]): Supplies the beta constraint, if any
        beta_test (bool): Also require the b-variational derivative to vanish

    Returns:
        DivergenceVerdict: ok, or the nonzero witness

    Example:
        >>> is_total_divergence(parse("u_x")).ok
        True
    """
    witness = euler_operator(e, 'u')
    if beta_test and expr_core.has_dependent(e, 'b'):
        witness = sympy.expand(witness + euler_operator(e, 'b'))
    if ideal is not None:
        witness = reduce_mod_pde(witness, ideal._replace(u_rule=False))
    return DivergenceVerdict(witness == 0, witness)


# =============================================================================
# CONCRETE BETA
# =============================================================================

def _check_base_function(beta0: Expr) -> Expr:
    beta0 = expr_core.normalize(beta0)
    for atom in expr_core.atoms_in(beta0):
        if atom.kind != AtomKind.BASE:
            raise ExprError(f"beta must be a function of x, y, t only; found {atom.symbol_name}")
    return beta0


def instantiate_beta(e: Expr, beta0: Expr) -> Expr:
    """
    Replace every beta-jet atom b_J of ``e`` by the partial derivative d^J beta0.

    Raises:
        ExprError: ``beta0`` depends on anything but x, y, t
    """
    beta0 = _check_base_function(beta0)
    replacements = {}
    for atom in expr_core.atoms_in(e):
        if atom.kind == AtomKind.JET and atom.name == 'b':
            value = beta0
            for direction in atom.index:
                value = sympy.diff(value, _BASE[direction])
            replacements[symbol(atom)] = value
    if not replacements:
        return sympy.expand(e)
    return sympy.expand(sympy.sympify(e).xreplace(replacements))


def check_beta_constraint(beta0: Expr, case: NonlinearityCase) -> Expr:
    """
    Residual Delta beta0 + k beta0 of the case's beta constraint (0 when satisfied).

    Raises:
        CaseError: The case has no W_beta generator
        ExprError: ``beta0`` depends on anything but x, y, t
    """
    if case.beta_k is None:
        raise CaseError(f"case '{case.selector}' has no W_beta generator")
    beta0 = _check_base_function(beta0)
    return sympy.expand(kohn_laplacian_of_function(beta0) + case.beta_k * beta0)
